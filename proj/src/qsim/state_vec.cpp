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

#include "qnnrobust/qsim/state_vec.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::qsim {

namespace {

void check_qubits(std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
        throw StructuralError("qubit count must be in [1, " +
                              std::to_string(kMaxQubits) + "], got " +
                              std::to_string(n));
    }
}

// Applies [[m00, m01], [m10, m11]] to qubit q.
void apply_1q(std::span<Amplitude> a, std::size_t q, Amplitude m00, Amplitude m01,
              Amplitude m10, Amplitude m11) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = a[i];
            const Amplitude a1 = a[i + stride];
            a[i] = m00 * a0 + m01 * a1;
            a[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

void apply_cnot(std::span<Amplitude> a, std::size_t control, std::size_t target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(a[i], a[i | tmask]);
        }
    }
}

} // namespace

StateVec StateVec::zero(std::size_t n_qubits) { return basis(n_qubits, 0); }

StateVec StateVec::basis(std::size_t n_qubits, std::size_t index) {
    check_qubits(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        throw StructuralError("basis index out of range");
    }
    std::vector<Amplitude> amps(dim);
    amps[index] = 1.0;
    return StateVec(n_qubits, std::move(amps));
}

StateVec StateVec::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw StructuralError("amplitude count must be a power of two >= 2");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    check_qubits(n);
    double norm = 0.0;
    for (const auto &x : amplitudes) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw ValidationError("non-finite amplitude");
        }
        norm += std::norm(x);
    }
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ValidationError("state is not normalized (norm^2 = " +
                              std::to_string(norm) + ")");
    }
    return StateVec(n, std::move(amplitudes));
}

double StateVec::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto &x : amps_) {
        s += std::norm(x);
    }
    return s;
}

void StateVec::apply(const Gate &gate) {
    gate.validate(n_qubits_);
    const auto w = gate.wires();
    using namespace std::complex_literals;
    switch (gate.kind()) {
    case GateKind::RX: {
        const double c = std::cos(*gate.angle() / 2), s = std::sin(*gate.angle() / 2);
        apply_1q(amps_, w[0], c, -1i * s, -1i * s, c);
        break;
    }
    case GateKind::RY: {
        const double c = std::cos(*gate.angle() / 2), s = std::sin(*gate.angle() / 2);
        apply_1q(amps_, w[0], c, -s, s, c);
        break;
    }
    case GateKind::RZ: {
        const double half = *gate.angle() / 2;
        apply_1q(amps_, w[0], std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half));
        break;
    }
    case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2;
        apply_1q(amps_, w[0], r, r, r, -r);
        break;
    }
    case GateKind::CNOT:
        apply_cnot(amps_, w[0], w[1]);
        break;
    }
}

StateVec apply_gate(StateVec state, const Gate &gate) {
    state.apply(gate);
    return state;
}

std::vector<double> expectation_z(const StateVec &state) {
    const auto amps = state.amplitudes();
    std::vector<double> out(state.num_qubits(), 0.0);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const double p = std::norm(amps[k]);
        for (std::size_t q = 0; q < out.size(); ++q) {
            out[q] += ((k >> q) & 1U) != 0 ? -p : p;
        }
    }
    return out;
}

} // namespace qnnrobust::qsim
