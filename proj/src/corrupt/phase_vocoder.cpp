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

#include "qnnrobust/corrupt/phase_vocoder.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qnnrobust/audio/stft.hpp"
#include "qnnrobust/common/error.hpp"

namespace qnnrobust::corrupt {

std::vector<double> time_stretch(std::span<const double> signal, double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ValidationError("time-stretch rate must be positive, got " + std::to_string(rate));
    }
    if (rate == 1.0) return {signal.begin(), signal.end()};
    const auto out_len = static_cast<std::size_t>(std::llround(double(signal.size()) / rate));
    if (signal.empty() || out_len == 0) return std::vector<double>(out_len, 0.0);

    const auto window = audio::hann_window(kVocoderFft, kVocoderFft);
    const auto spec = audio::stft(signal, kVocoderFft, kVocoderHop, window, audio::PadMode::kZero);
    const std::size_t bins = spec.bins;
    auto column = [&](std::size_t t, std::size_t k) {
        return t < spec.frames ? spec.at(t, k) : std::complex<double>{};
    };

    std::size_t steps = 0;
    while (double(steps) * rate < double(spec.frames)) ++steps;
    audio::ComplexStft out;
    out.frames = steps;
    out.bins = bins;
    out.data.resize(steps * bins);

    std::vector<double> advance(bins), phase(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        advance[k] = std::numbers::pi * double(kVocoderHop) * double(k) / double(bins - 1);
        phase[k] = std::arg(spec.at(0, k));
    }
    constexpr double kTwoPi = 2 * std::numbers::pi;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = double(i) * rate;
        const auto t0 = static_cast<std::size_t>(t);
        const double alpha = t - double(t0);
        for (std::size_t k = 0; k < bins; ++k) {
            const auto c0 = column(t0, k), c1 = column(t0 + 1, k);
            const double mag = (1 - alpha) * std::abs(c0) + alpha * std::abs(c1);
            out.at(i, k) = std::polar(mag, phase[k]);
            double d = std::arg(c1) - std::arg(c0) - advance[k];
            d -= kTwoPi * std::nearbyint(d / kTwoPi);
            phase[k] += advance[k] + d;
        }
    }
    return audio::istft(out, kVocoderFft, kVocoderHop, window, out_len);
}

} // namespace qnnrobust::corrupt
