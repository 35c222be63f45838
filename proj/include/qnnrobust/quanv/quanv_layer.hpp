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

#include "qnnrobust/audio/log_mel.hpp"
#include "qnnrobust/common/matrix.hpp"
#include "qnnrobust/qsim/circuit.hpp"
#include "qnnrobust/qsim/state_vec.hpp"
#include "qnnrobust/quanv/feature_map.hpp"

namespace qnnrobust::quanv {

inline constexpr std::size_t kPatchQubits = 4;
inline constexpr double kEncodeTolerance = 1e-9;

/// Product state with qubit i rotated by Ry(pi * x_i). Values within 1e-9
/// outside [0, 1] are clamped; anything further out throws ValidationError.
qsim::StateVec encode_patch(const std::array<double, kPatchQubits> &patch);

/// 4 x ceil(H/2) x ceil(W/2) map of Pauli-Z expectations. Block pixels
/// (r,c), (r,c+1), (r+1,c), (r+1,c+1) go to qubits and channels 0..3; pixels
/// past an odd edge read as zero. Throws StructuralError unless the circuit
/// acts on 4 qubits.
FeatureMap quanv_forward(const Matrix &image, const qsim::CircuitSpec &spec);
FeatureMap quanv_forward(const audio::LogMelGram &gram, const qsim::CircuitSpec &spec);

} // namespace qnnrobust::quanv
