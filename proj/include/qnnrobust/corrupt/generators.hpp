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

#include <string>
#include <vector>

#include "qnnrobust/audio/waveform.hpp"
#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/corrupt/severity.hpp"

namespace qnnrobust::corrupt {

inline constexpr double kMinSpeedRate = 0.25;
inline constexpr double kMaxSpeedRate = 4.0;

struct CorruptionResult {
    audio::Waveform waveform;
    /// Realized draw: noise std (std(a) * sigma_n), semitones, samples
    /// shifted, or speed rate.
    double parameter = 0.0;
    std::vector<std::string> diagnostics;
};

// Raw draws, exposed for distribution tests. Each consumes the rng in the
// same way the corresponding generator does.
double draw_semitones(CounterRng &rng, double sigma_p);
double draw_shift_proportion(CounterRng &rng, double sigma_t);
double draw_log_speed(CounterRng &rng, double sigma_s);

/// clip(a + std(a) * z, -1, 1), z ~ N(0, sigma_n), population std.
CorruptionResult gaussian_noise(const audio::Waveform &w, double sigma_n, std::uint64_t seed);
CorruptionResult pitch_shift(const audio::Waveform &w, double sigma_p, std::uint64_t seed);
CorruptionResult temporal_shift(const audio::Waveform &w, double sigma_t, std::uint64_t seed);
CorruptionResult speed_variation(const audio::Waveform &w, double sigma_s, std::uint64_t seed);

// Deterministic cores with the drawn parameter fixed.

/// Shift by `semitones`: stretch by 2^(-semitones/12), then resample back
/// to the original length. Zero is the exact identity.
CorruptionResult pitch_shift_by(const audio::Waveform &w, double semitones);
/// s > 0 prepends zeros and drops the tail; s < 0 drops the head.
CorruptionResult shift_by(const audio::Waveform &w, long long samples);
/// Time-stretch by `rate`, then truncate or zero-pad to the input length.
CorruptionResult speed_by(const audio::Waveform &w, double rate);

/// Dispatch; severity 0 is the identity for every kind.
CorruptionResult apply(const CorruptionSpec &spec, const audio::Waveform &w);

} // namespace qnnrobust::corrupt
