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

#include "qnnrobust/corrupt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnnrobust/audio/resample.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/corrupt/phase_vocoder.hpp"

namespace qnnrobust::corrupt {
namespace {

void require_sigma(double sigma, double lo, const char *name) {
    if (!(sigma >= lo) || !std::isfinite(sigma)) {
        throw ValidationError(std::string(name) + " must be >= " + std::to_string(lo) + ", got " +
                              std::to_string(sigma));
    }
}

// Normal draw that is retried if non-finite; counts the retries.
double finite_normal(CounterRng &rng, double sd, std::size_t *retries = nullptr) {
    for (;;) {
        const double v = rng.normal(0.0, sd);
        if (std::isfinite(v)) return v;
        if (retries) ++*retries;
    }
}

void clip_into_range(CorruptionResult &r) {
    std::size_t clipped = 0;
    for (auto &x : r.waveform.samples) {
        if (x > 1.0 || x < -1.0) {
            x = std::clamp(x, -1.0, 1.0);
            ++clipped;
        }
    }
    if (clipped) r.diagnostics.push_back("clipped " + std::to_string(clipped) + " samples to [-1, 1]");
}

} // namespace

double draw_semitones(CounterRng &rng, double sigma_p) { return finite_normal(rng, sigma_p); }
double draw_shift_proportion(CounterRng &rng, double sigma_t) { return finite_normal(rng, sigma_t); }
double draw_log_speed(CounterRng &rng, double sigma_s) { return finite_normal(rng, std::log(sigma_s)); }

CorruptionResult gaussian_noise(const audio::Waveform &w, double sigma_n, std::uint64_t seed) {
    require_sigma(sigma_n, 0.0, "sigma_n");
    CorruptionResult r{w, 0.0, {}};
    if (sigma_n == 0.0 || w.samples.empty()) return r;
    double mean = 0;
    for (double x : w.samples) mean += x;
    mean /= double(w.size());
    double var = 0;
    for (double x : w.samples) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / double(w.size()));
    r.parameter = sd * sigma_n;
    CounterRng rng(seed);
    for (auto &x : r.waveform.samples) x = std::clamp(x + sd * rng.normal(0.0, sigma_n), -1.0, 1.0);
    return r;
}

CorruptionResult pitch_shift_by(const audio::Waveform &w, double semitones) {
    CorruptionResult r{w, semitones, {}};
    if (semitones == 0.0 || w.samples.empty()) return r;
    const double rate = std::pow(2.0, -semitones / 12.0);
    const auto stretched = time_stretch(w.samples, rate);
    r.waveform.samples = audio::resample(stretched, rate, w.size());
    clip_into_range(r);
    return r;
}

CorruptionResult pitch_shift(const audio::Waveform &w, double sigma_p, std::uint64_t seed) {
    require_sigma(sigma_p, 0.0, "sigma_p");
    CounterRng rng(seed);
    return pitch_shift_by(w, draw_semitones(rng, sigma_p));
}

CorruptionResult shift_by(const audio::Waveform &w, long long samples) {
    const auto len = static_cast<long long>(w.size());
    CorruptionResult r{w, 0.0, {}};
    if (len == 0) return r;
    if (std::llabs(samples) >= len) {
        const long long clamped = samples > 0 ? len - 1 : -(len - 1);
        r.diagnostics.push_back("shift of " + std::to_string(samples) + " samples clamped to " +
                                std::to_string(clamped));
        samples = clamped;
    }
    r.parameter = double(samples);
    if (samples == 0) return r;
    auto &out = r.waveform.samples;
    std::fill(out.begin(), out.end(), 0.0);
    if (samples > 0) {
        std::copy(w.samples.begin(), w.samples.end() - samples, out.begin() + samples);
    } else {
        std::copy(w.samples.begin() - samples, w.samples.end(), out.begin());
    }
    return r;
}

CorruptionResult temporal_shift(const audio::Waveform &w, double sigma_t, std::uint64_t seed) {
    require_sigma(sigma_t, 0.0, "sigma_t");
    CounterRng rng(seed);
    const double p = draw_shift_proportion(rng, sigma_t);
    return shift_by(w, std::llround(p * double(w.size())));
}

CorruptionResult speed_by(const audio::Waveform &w, double rate) {
    CorruptionResult r{w, rate, {}};
    if (!(rate > 0.0)) throw ValidationError("speed rate must be positive");
    if (rate < kMinSpeedRate || rate > kMaxSpeedRate) {
        const double c = std::clamp(rate, kMinSpeedRate, kMaxSpeedRate);
        r.diagnostics.push_back("speed rate " + std::to_string(rate) + " clamped to " + std::to_string(c));
        rate = c;
        r.parameter = c;
    }
    if (rate == 1.0 || w.samples.empty()) return r;
    auto stretched = time_stretch(w.samples, rate);
    stretched.resize(w.size(), 0.0);
    r.waveform.samples = std::move(stretched);
    clip_into_range(r);
    return r;
}

CorruptionResult speed_variation(const audio::Waveform &w, double sigma_s, std::uint64_t seed) {
    require_sigma(sigma_s, 1.0, "sigma_s");
    CounterRng rng(seed);
    return speed_by(w, std::exp(draw_log_speed(rng, sigma_s)));
}

CorruptionResult apply(const CorruptionSpec &spec, const audio::Waveform &w) {
    if (spec.severity == 0) {
        (void)spec.value();
        return {w, spec.kind == Kind::kSpeedVariation ? 1.0 : 0.0, {}};
    }
    const double v = spec.value();
    switch (spec.kind) {
    case Kind::kGaussianNoise: return gaussian_noise(w, v, spec.seed);
    case Kind::kPitchShift: return pitch_shift(w, v, spec.seed);
    case Kind::kTemporalShift: return temporal_shift(w, v, spec.seed);
    case Kind::kSpeedVariation: return speed_variation(w, v, spec.seed);
    }
    throw ValidationError("bad corruption kind");
}

} // namespace qnnrobust::corrupt
