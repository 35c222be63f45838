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

#include "qnnrobust/audio/mel.hpp"

#include <algorithm>
#include <cmath>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::audio {

namespace {
constexpr double kLinearStep = 200.0 / 3.0;
constexpr double kLogStartHz = 1000.0;
constexpr double kLogStartMel = kLogStartHz / kLinearStep;
const double kLogStep = std::log(6.4) / 27.0;
} // namespace

double hz_to_mel(double hz) noexcept {
    if (hz < kLogStartHz) return hz / kLinearStep;
    return kLogStartMel + std::log(hz / kLogStartHz) / kLogStep;
}

double mel_to_hz(double mel) noexcept {
    if (mel < kLogStartMel) return mel * kLinearStep;
    return kLogStartHz * std::exp(kLogStep * (mel - kLogStartMel));
}

MelBank mel_bank(std::uint32_t sample_rate, std::size_t n_mels, std::size_t n_fft) {
    if (sample_rate == 0) {
        throw ValidationError("mel_bank: sample rate must be positive");
    }
    if (n_mels == 0 || n_mels > n_fft / 2) {
        throw ValidationError("mel_bank: n_mels must be in [1, n_fft/2]");
    }
    const std::size_t bins = n_fft / 2 + 1;
    MelBank bank;
    bank.sample_rate = sample_rate;
    bank.f_min = 0.0;
    bank.f_max = sample_rate / 2.0;
    bank.weights = Matrix(n_mels, bins);

    // n_mels + 2 edge frequencies equally spaced in mel.
    const double mel_lo = hz_to_mel(bank.f_min), mel_hi = hz_to_mel(bank.f_max);
    std::vector<double> edges(n_mels + 2);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * double(i) / double(n_mels + 1));
    }
    for (std::size_t m = 0; m < n_mels; ++m) {
        const double lower_width = edges[m + 1] - edges[m];
        const double upper_width = edges[m + 2] - edges[m + 1];
        const double area_norm = 2.0 / (edges[m + 2] - edges[m]);
        for (std::size_t k = 0; k < bins; ++k) {
            const double f = bank.f_max * double(k) / double(bins - 1);
            const double rising = (f - edges[m]) / lower_width;
            const double falling = (edges[m + 2] - f) / upper_width;
            bank.weights(m, k) = std::max(0.0, std::min(rising, falling)) * area_norm;
        }
        bank.center_hz.push_back(edges[m + 1]);
    }
    return bank;
}

} // namespace qnnrobust::audio
