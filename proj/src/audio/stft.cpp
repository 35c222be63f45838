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

#include "qnnrobust/audio/stft.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fft.hpp"

namespace qnnrobust::audio {

namespace {

// Sample at padded index `i` (padding `pad` on the left).
double padded(std::span<const double> x, std::ptrdiff_t i, std::ptrdiff_t pad, PadMode mode) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    std::ptrdiff_t j = i - pad;
    if (j >= 0 && j < n) return x[static_cast<std::size_t>(j)];
    if (mode == PadMode::kZero) return 0.0;
    if (n == 1) return x[0];
    // Reflection without repeating the edge sample; period 2(n-1).
    const std::ptrdiff_t period = 2 * (n - 1);
    j = ((j % period) + period) % period;
    if (j >= n) j = period - j;
    return x[static_cast<std::size_t>(j)];
}

} // namespace

std::vector<double> hann_window(std::size_t win_length, std::size_t n_fft) {
    if (win_length == 0 || win_length > n_fft) {
        throw ValidationError("window length must be in [1, n_fft]");
    }
    std::vector<double> w(n_fft, 0.0);
    const std::size_t offset = (n_fft - win_length) / 2;
    for (std::size_t i = 0; i < win_length; ++i) {
        w[offset + i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(i) / double(win_length));
    }
    return w;
}

ComplexStft stft(std::span<const double> signal, std::size_t n_fft, std::size_t hop,
                 std::span<const double> window, PadMode pad) {
    if (signal.empty() || hop == 0 || window.size() != n_fft) {
        throw StructuralError("stft: empty signal, zero hop or window size != n_fft");
    }
    RealFft fft(n_fft);
    ComplexStft out;
    out.frames = 1 + signal.size() / hop;
    out.bins = fft.bins();
    out.data.resize(out.frames * out.bins);
    std::vector<double> frame(n_fft);
    const auto half = static_cast<std::ptrdiff_t>(n_fft / 2);
    for (std::size_t t = 0; t < out.frames; ++t) {
        const auto start = static_cast<std::ptrdiff_t>(t * hop);
        for (std::size_t i = 0; i < n_fft; ++i) {
            frame[i] = window[i] * padded(signal, start + static_cast<std::ptrdiff_t>(i), half, pad);
        }
        fft.forward(frame, std::span(out.data).subspan(t * out.bins, out.bins));
    }
    return out;
}

std::vector<double> istft(const ComplexStft &spec, std::size_t n_fft, std::size_t hop,
                          std::span<const double> window, std::size_t length) {
    if (spec.bins != n_fft / 2 + 1 || window.size() != n_fft) {
        throw StructuralError("istft: spectrum does not match n_fft");
    }
    RealFft fft(n_fft);
    const std::size_t total = n_fft + hop * (spec.frames == 0 ? 0 : spec.frames - 1);
    std::vector<double> y(total, 0.0), wss(total, 0.0), frame(n_fft);
    for (std::size_t t = 0; t < spec.frames; ++t) {
        fft.inverse(std::span(spec.data).subspan(t * spec.bins, spec.bins), frame);
        for (std::size_t i = 0; i < n_fft; ++i) {
            y[t * hop + i] += frame[i] * window[i];
            wss[t * hop + i] += window[i] * window[i];
        }
    }
    for (std::size_t i = 0; i < total; ++i) {
        if (wss[i] > std::numeric_limits<double>::min()) y[i] /= wss[i];
    }
    std::vector<double> out(length, 0.0);
    const std::size_t offset = n_fft / 2;
    for (std::size_t i = 0; i < length && offset + i < total; ++i) {
        out[i] = y[offset + i];
    }
    return out;
}

std::size_t window_samples(std::uint32_t sample_rate, const StftConfig &cfg) {
    const auto win = static_cast<std::size_t>(std::llround(cfg.win_seconds * sample_rate));
    if (win > cfg.n_fft) {
        throw ValidationError("window of " + std::to_string(win) + " samples at " +
                              std::to_string(sample_rate) + " Hz exceeds n_fft=" +
                              std::to_string(cfg.n_fft) +
                              "; resample the audio (e.g. to 16000 Hz) first");
    }
    if (win == 0) {
        throw ValidationError("window length rounds to zero samples");
    }
    return win;
}

Matrix stft_power(const Waveform &w, const StftConfig &cfg) {
    validate(w);
    const auto window = hann_window(window_samples(w.sample_rate, cfg), cfg.n_fft);
    const auto spec = stft(w.samples, cfg.n_fft, cfg.hop, window, PadMode::kReflect);
    Matrix power(spec.bins, spec.frames);
    for (std::size_t t = 0; t < spec.frames; ++t) {
        for (std::size_t k = 0; k < spec.bins; ++k) {
            power(k, t) = std::norm(spec.at(t, k));
        }
    }
    return power;
}

} // namespace qnnrobust::audio
