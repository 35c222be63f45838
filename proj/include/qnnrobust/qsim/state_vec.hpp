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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qnnrobust/qsim/gate.hpp"

namespace qnnrobust::qsim {

using Amplitude = std::complex<double>;

/// Largest register the simulator accepts.
inline constexpr std::size_t kMaxQubits = 8;

/**
 * Dense statevector of n qubits. Little-endian: qubit q is bit q of the
 * amplitude index, so qubit 0 is the least significant bit.
 */
class StateVec {
  public:
    /// |0...0>.
    static StateVec zero(std::size_t n_qubits);
    /// Computational basis state |index>.
    static StateVec basis(std::size_t n_qubits, std::size_t index);
    /// Takes ownership; size must be 2^n and the norm 1 within 1e-10.
    static StateVec from_amplitudes(std::vector<Amplitude> amplitudes);

    std::size_t num_qubits() const noexcept { return n_qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    std::span<Amplitude> mutable_amplitudes() noexcept { return amps_; }
    double norm_squared() const noexcept;

    /// In-place gate application; see apply_gate for the value form.
    void apply(const Gate &gate);

    bool operator==(const StateVec &) const = default;

  private:
    StateVec(std::size_t n_qubits, std::vector<Amplitude> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    std::size_t n_qubits_;
    std::vector<Amplitude> amps_;
};

/// Returns gate * state. Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
StateVec apply_gate(StateVec state, const Gate &gate);

/// <Z_q> for every qubit, analytic.
std::vector<double> expectation_z(const StateVec &state);

} // namespace qnnrobust::qsim
