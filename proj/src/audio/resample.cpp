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

#include "qnnrobust/audio/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::audio {

namespace {

constexpr int kZeroCrossings = 16;
constexpr int kTableDensity = 1024;
constexpr double kBeta = 8.6;
constexpr double kRolloff = 0.95;

// sinc(u) * kaiser(u / Z) for u in [0, Z], sampled kTableDensity per unit.
const std::vector<double> &kernel_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kZeroCrossings * kTableDensity + 2, 0.0);
        const double norm = std::cyl_bessel_i(0.0, kBeta);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double u = double(i) / kTableDensity;
            if (u > kZeroCrossings) break;
            const double r = u / kZeroCrossings;
            const double win = std::cyl_bessel_i(0.0, kBeta * std::sqrt(1.0 - r * r)) / norm;
            const double x = std::numbers::pi * u;
            t[i] = (i == 0 ? 1.0 : std::sin(x) / x) * win;
        }
        return t;
    }();
    return table;
}

double kernel(double u) {
    u = std::abs(u);
    if (u >= kZeroCrossings) return 0.0;
    const auto &t = kernel_table();
    const double pos = u * kTableDensity;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - double(i);
    return t[i] + frac * (t[i + 1] - t[i]);
}

} // namespace

std::vector<double> resample(std::span<const double> input, double ratio,
                             std::size_t out_len) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw ValidationError("resample ratio must be positive and finite");
    }
    if (ratio == 1.0 && out_len == input.size()) {
        return {input.begin(), input.end()};
    }
    const double cutoff = kRolloff * std::min(1.0, ratio);
    const double half_width = kZeroCrossings / cutoff;
    const auto n = static_cast<std::ptrdiff_t>(input.size());
    std::vector<double> out(out_len, 0.0);
    for (std::size_t j = 0; j < out_len; ++j) {
        const double t = double(j) / ratio;
        const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil(t - half_width)));
        const auto hi = std::min<std::ptrdiff_t>(n - 1, static_cast<std::ptrdiff_t>(std::floor(t + half_width)));
        double acc = 0.0;
        for (std::ptrdiff_t k = lo; k <= hi; ++k) {
            acc += input[static_cast<std::size_t>(k)] * kernel((t - double(k)) * cutoff);
        }
        out[j] = acc * cutoff;
    }
    return out;
}

Waveform resample(const Waveform &w, std::uint32_t target_rate) {
    if (target_rate == 0 || w.sample_rate == 0) {
        throw ValidationError("resample needs positive sample rates");
    }
    Waveform out;
    out.source_id = w.source_id;
    out.sample_rate = target_rate;
    if (target_rate == w.sample_rate) {
        out.samples = w.samples;
        return out;
    }
    const double ratio = double(target_rate) / double(w.sample_rate);
    const auto len = static_cast<std::size_t>(std::ceil(double(w.size()) * ratio));
    out.samples = resample(w.samples, ratio, len);
    for (auto &x : out.samples) x = std::clamp(x, -1.0, 1.0);
    return out;
}

} // namespace qnnrobust::audio
