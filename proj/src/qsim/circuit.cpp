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

#include "qnnrobust/qsim/circuit.hpp"

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::qsim {

std::string_view to_string(Template t) noexcept {
    switch (t) {
    case Template::kBEQC: return "BEQC";
    case Template::kSEQC: return "SEQC";
    case Template::kRQC: return "RQC";
    case Template::kIdentity: return "identity";
    }
    return "?";
}

Template template_from_string(std::string_view name) {
    if (name == "BEQC") return Template::kBEQC;
    if (name == "SEQC") return Template::kSEQC;
    if (name == "RQC") return Template::kRQC;
    if (name == "identity") return Template::kIdentity;
    throw FormatError("unknown circuit template '" + std::string(name) + "'");
}

GateCounts CircuitSpec::counts() const {
    GateCounts c;
    for (const auto &g : gates) {
        if (is_rotation(g.kind())) {
            ++c.rotations;
        } else if (g.kind() == GateKind::CNOT) {
            ++c.cnots;
        } else {
            ++c.other;
        }
    }
    return c;
}

void CircuitSpec::validate() const {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw StructuralError("circuit qubit count out of range");
    }
    for (const auto &g : gates) {
        g.validate(n_qubits);
    }
}

void run_circuit_inplace(const CircuitSpec &spec, StateVec &state) {
    if (state.num_qubits() != spec.n_qubits) {
        throw StructuralError("circuit has " + std::to_string(spec.n_qubits) +
                              " qubits but the state has " +
                              std::to_string(state.num_qubits()));
    }
    for (const auto &g : spec.gates) {
        state.apply(g);
    }
}

StateVec run_circuit(const CircuitSpec &spec, StateVec input) {
    run_circuit_inplace(spec, input);
    return input;
}

CircuitSpec concat(const CircuitSpec &a, const CircuitSpec &b) {
    if (a.n_qubits != b.n_qubits) {
        throw StructuralError("cannot concatenate circuits of different widths");
    }
    CircuitSpec out = a;
    out.depth = a.depth + b.depth;
    out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
    out.diagnostics.insert(out.diagnostics.end(), b.diagnostics.begin(),
                           b.diagnostics.end());
    return out;
}

} // namespace qnnrobust::qsim
