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

#include <string>

#include <json.hpp>

#include "qnnrobust/qsim/circuit.hpp"

namespace qnnrobust::qsim {

/// {template, n_qubits, depth, seed, gates: [{kind, wires, angle?}]}.
nlohmann::json circuit_to_json(const CircuitSpec &spec);
/// Validates every gate; throws FormatError / StructuralError.
CircuitSpec circuit_from_json(const nlohmann::json &doc);

/// Stable hex digest of the serialized circuit, used in cache keys.
std::string circuit_digest(const CircuitSpec &spec);

} // namespace qnnrobust::qsim
