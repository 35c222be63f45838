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

#include "qnnrobust/quanv/quanv_layer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/quanv/patches.hpp"

namespace qnnrobust::quanv {

qsim::StateVec encode_patch(const std::array<double, kPatchQubits> &patch) {
    // Ry(pi x)|0> = cos(pi x / 2)|0> + sin(pi x / 2)|1>, tensored little-endian.
    std::array<double, kPatchQubits> c{}, s{};
    for (std::size_t i = 0; i < kPatchQubits; ++i) {
        double x = patch[i];
        if (!(x >= -kEncodeTolerance && x <= 1.0 + kEncodeTolerance)) {
            throw ValidationError("patch value " + std::to_string(x) + " outside [0, 1]; input is not normalized");
        }
        x = std::clamp(x, 0.0, 1.0);
        c[i] = std::cos(std::numbers::pi * x / 2);
        s[i] = std::sin(std::numbers::pi * x / 2);
    }
    std::vector<qsim::Amplitude> amps(std::size_t{1} << kPatchQubits);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        double a = 1.0;
        for (std::size_t q = 0; q < kPatchQubits; ++q) a *= (idx >> q) & 1 ? s[q] : c[q];
        amps[idx] = a;
    }
    return qsim::StateVec::from_amplitudes(std::move(amps));
}

FeatureMap quanv_forward(const Matrix &image, const qsim::CircuitSpec &spec) {
    if (spec.n_qubits != kPatchQubits) {
        throw StructuralError("quanvolution needs a 4-qubit circuit, got " + std::to_string(spec.n_qubits));
    }
    spec.validate();
    const std::size_t h = image.rows(), w = image.cols();
    FeatureMap out(kPatchQubits, (h + 1) / 2, (w + 1) / 2);
    auto pixel = [&](std::size_t r, std::size_t c) { return r < h && c < w ? image(r, c) : 0.0; };
    for (const auto &p : patch_iterate(h, w)) {
        const std::array<double, kPatchQubits> x{pixel(p.row, p.col), pixel(p.row, p.col + 1),
                                                 pixel(p.row + 1, p.col), pixel(p.row + 1, p.col + 1)};
        auto state = encode_patch(x);
        qsim::run_circuit_inplace(spec, state);
        const auto z = qsim::expectation_z(state);
        for (std::size_t q = 0; q < kPatchQubits; ++q) {
            out.at(q, p.out_row, p.out_col) = std::clamp(z[q], -1.0, 1.0);
        }
    }
    return out;
}

FeatureMap quanv_forward(const audio::LogMelGram &gram, const qsim::CircuitSpec &spec) {
    return quanv_forward(gram.values, spec);
}

} // namespace qnnrobust::quanv
