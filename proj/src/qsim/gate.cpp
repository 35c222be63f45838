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

#include "qnnrobust/qsim/gate.hpp"

#include <cmath>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::qsim {

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    if (name == "RX") return GateKind::RX;
    if (name == "RY") return GateKind::RY;
    if (name == "RZ") return GateKind::RZ;
    if (name == "H") return GateKind::H;
    if (name == "CNOT") return GateKind::CNOT;
    throw FormatError("unknown gate kind '" + std::string(name) + "'");
}

bool is_rotation(GateKind kind) noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

Gate Gate::rx(std::size_t wire, double angle) { return rotation(GateKind::RX, wire, angle); }
Gate Gate::ry(std::size_t wire, double angle) { return rotation(GateKind::RY, wire, angle); }
Gate Gate::rz(std::size_t wire, double angle) { return rotation(GateKind::RZ, wire, angle); }

Gate Gate::rotation(GateKind kind, std::size_t wire, double angle) {
    if (!is_rotation(kind)) {
        throw ValidationError("Gate::rotation called with a non-rotation kind");
    }
    return Gate(kind, {wire, 0}, 1, angle);
}

Gate Gate::h(std::size_t wire) { return Gate(GateKind::H, {wire, 0}, 1, std::nullopt); }

Gate Gate::cnot(std::size_t control, std::size_t target) {
    return Gate(GateKind::CNOT, {control, target}, 2, std::nullopt);
}

void Gate::validate(std::size_t n_qubits) const {
    for (auto w : wires()) {
        if (w >= n_qubits) {
            throw StructuralError(std::string(to_string(kind_)) + " wire " +
                                  std::to_string(w) + " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
        }
    }
    if (arity_ == 2 && wires_[0] == wires_[1]) {
        throw StructuralError("CNOT control and target must differ");
    }
    if (is_rotation(kind_)) {
        if (!angle_ || !std::isfinite(*angle_)) {
            throw ValidationError(std::string(to_string(kind_)) +
                                  " requires a finite angle");
        }
    } else if (angle_) {
        throw ValidationError(std::string(to_string(kind_)) + " takes no angle");
    }
}

} // namespace qnnrobust::qsim
