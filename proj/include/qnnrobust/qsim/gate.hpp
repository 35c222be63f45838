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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace qnnrobust::qsim {

enum class GateKind : std::uint8_t { RX, RY, RZ, H, CNOT };

std::string_view to_string(GateKind kind) noexcept;
/// Throws FormatError for unknown names.
GateKind gate_kind_from_string(std::string_view name);
bool is_rotation(GateKind kind) noexcept;

/**
 * One gate of a circuit. Wires are 0-based; for CNOT the control comes
 * first. Rotations carry an angle in radians, H and CNOT carry none.
 */
class Gate {
  public:
    static Gate rx(std::size_t wire, double angle);
    static Gate ry(std::size_t wire, double angle);
    static Gate rz(std::size_t wire, double angle);
    static Gate rotation(GateKind kind, std::size_t wire, double angle);
    static Gate h(std::size_t wire);
    static Gate cnot(std::size_t control, std::size_t target);

    GateKind kind() const noexcept { return kind_; }
    std::span<const std::size_t> wires() const noexcept {
        return {wires_.data(), arity_};
    }
    std::optional<double> angle() const noexcept { return angle_; }

    /// Throws StructuralError for bad wires, ValidationError for bad angles.
    void validate(std::size_t n_qubits) const;

    bool operator==(const Gate &) const = default;

  private:
    Gate(GateKind kind, std::array<std::size_t, 2> wires, std::size_t arity,
         std::optional<double> angle)
        : kind_(kind), wires_(wires), arity_(arity), angle_(angle) {}

    GateKind kind_;
    std::array<std::size_t, 2> wires_;
    std::size_t arity_;
    std::optional<double> angle_;
};

} // namespace qnnrobust::qsim
