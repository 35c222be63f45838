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

#include "qnnrobust/qsim/circuit.hpp"

namespace qnnrobust::qsim {

/// Probability of a CNOT after each RQC rotation; 0.3/0.7 CNOT:rotation.
inline constexpr double kRqcCnotProbability = 0.3 / 0.7;
/// Rotations emitted per RQC layer.
inline constexpr std::size_t kRqcRotationsPerLayer = 4;

/**
 * Target offset rule for the strongly entangling block.
 *
 * kCyclic: layer i (1-based) uses offset r = ((i - 1) mod (n - 1)) + 1, so
 * control q targets (q + r) mod n. Identical to the literal rule for
 * i < n and never self-targeting, which keeps the CNOT count at n per layer.
 *
 * kLiteral: offset r = i mod n as written; layers with r == 0 would target
 * the control itself and those CNOTs are skipped with a diagnostic.
 */
enum class SeqcOffsetRule : std::uint8_t { kCyclic, kLiteral };

/// Basic entangler: per layer RX on every wire, then CNOT ring
/// 0->1, ..., (n-2)->(n-1), (n-1)->0. Angles uniform on [0, 2*pi).
CircuitSpec build_beqc(std::size_t n, std::size_t depth, std::uint64_t seed);

/// Strong entangler: per layer RZ, RY, RZ on every wire, then n CNOTs.
CircuitSpec build_seqc(std::size_t n, std::size_t depth, std::uint64_t seed,
                       SeqcOffsetRule rule = SeqcOffsetRule::kCyclic);

/// Random circuit: each layer has kRqcRotationsPerLayer rotations of random
/// kind and wire, each followed with probability kRqcCnotProbability by a
/// CNOT on a random ordered pair of distinct wires. Layers are keyed by
/// (seed, layer index), so depth d+1 extends depth d by one new layer.
CircuitSpec build_rqc(std::size_t n, std::size_t depth, std::uint64_t seed);

/// Empty circuit on n qubits.
CircuitSpec build_identity(std::size_t n);

/// Dispatch on the template (depth and seed are ignored for kIdentity).
CircuitSpec build_circuit(Template t, std::size_t n, std::size_t depth,
                          std::uint64_t seed);

} // namespace qnnrobust::qsim
