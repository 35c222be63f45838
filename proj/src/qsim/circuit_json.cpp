// Copyright 2026 The qnnrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnnrobust/qsim/circuit_json.hpp"

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/hash.hpp"

namespace qnnrobust::qsim {

nlohmann::json circuit_to_json(const CircuitSpec &spec) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : spec.gates) {
        nlohmann::json jg;
        jg["kind"] = std::string(to_string(g.kind()));
        jg["wires"] = std::vector<std::size_t>(g.wires().begin(), g.wires().end());
        if (g.angle()) {
            jg["angle"] = *g.angle();
        }
        gates.push_back(std::move(jg));
    }
    return {{"template", std::string(to_string(spec.circuit_template))},
            {"n_qubits", spec.n_qubits},
            {"depth", spec.depth},
            {"seed", spec.seed},
            {"gates", std::move(gates)}};
}

CircuitSpec circuit_from_json(const nlohmann::json &doc) {
    CircuitSpec spec;
    try {
        spec.circuit_template = template_from_string(doc.at("template").get<std::string>());
        spec.n_qubits = doc.at("n_qubits").get<std::size_t>();
        spec.depth = doc.at("depth").get<std::size_t>();
        spec.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto &jg : doc.at("gates")) {
            const auto kind = gate_kind_from_string(jg.at("kind").get<std::string>());
            const auto wires = jg.at("wires").get<std::vector<std::size_t>>();
            const std::size_t arity = kind == GateKind::CNOT ? 2 : 1;
            if (wires.size() != arity) {
                throw FormatError("gate " + std::string(to_string(kind)) + " expects " +
                                  std::to_string(arity) + " wires");
            }
            if (is_rotation(kind)) {
                if (!jg.contains("angle")) {
                    throw FormatError("rotation gate without angle");
                }
                spec.gates.push_back(Gate::rotation(kind, wires[0], jg.at("angle").get<double>()));
            } else {
                if (jg.contains("angle")) {
                    throw FormatError(std::string(to_string(kind)) + " must not carry an angle");
                }
                spec.gates.push_back(kind == GateKind::H ? Gate::h(wires[0])
                                                         : Gate::cnot(wires[0], wires[1]));
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed circuit JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string circuit_digest(const CircuitSpec &spec) {
    return sha256_hex(circuit_to_json(spec).dump());
}

} // namespace qnnrobust::qsim
