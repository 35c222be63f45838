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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qnnrobust/qsim/gate.hpp"
#include "qnnrobust/qsim/state_vec.hpp"

namespace qnnrobust::qsim {

/// Circuit family. kIdentity is the empty circuit used as an anchor.
enum class Template : std::uint8_t { kBEQC, kSEQC, kRQC, kIdentity };

std::string_view to_string(Template t) noexcept;
Template template_from_string(std::string_view name);

struct GateCounts {
    std::size_t rotations = 0;
    std::size_t cnots = 0;
    std::size_t other = 0;
};

/// Ordered gate list realizing a template at a given depth.
struct CircuitSpec {
    Template circuit_template = Template::kIdentity;
    std::size_t n_qubits = 0;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    std::vector<Gate> gates;
    /// Builder notes (for example skipped degenerate gates). Not serialized
    /// into the gate list and not part of equality.
    std::vector<std::string> diagnostics;

    GateCounts counts() const;
    /// Checks every gate against n_qubits.
    void validate() const;

    bool operator==(const CircuitSpec &o) const {
        return circuit_template == o.circuit_template && n_qubits == o.n_qubits &&
               depth == o.depth && seed == o.seed && gates == o.gates;
    }
};

/// Applies the gates in list order. Throws StructuralError if the register
/// size does not match spec.n_qubits.
StateVec run_circuit(const CircuitSpec &spec, StateVec input);
/// In-place variant used by hot loops.
void run_circuit_inplace(const CircuitSpec &spec, StateVec &state);

/// Concatenation a ++ b (both must have the same register size).
CircuitSpec concat(const CircuitSpec &a, const CircuitSpec &b);

} // namespace qnnrobust::qsim
