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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qnnrobust::corrupt {

enum class Kind : std::uint8_t { kGaussianNoise, kPitchShift, kTemporalShift, kSpeedVariation };

inline constexpr std::array<Kind, 4> kAllKinds{Kind::kGaussianNoise, Kind::kPitchShift,
                                               Kind::kTemporalShift, Kind::kSpeedVariation};
inline constexpr std::size_t kMaxSeverity = 6;

/// "gaussian_noise", "pitch_shift", "temporal_shift", "speed_variation".
std::string_view to_string(Kind k) noexcept;
Kind kind_from_string(std::string_view name);

/// Scale factor for a kind at severity 0 (clean) .. 6.
double severity_value(Kind kind, std::size_t severity);

struct CorruptionSpec {
    Kind kind = Kind::kGaussianNoise;
    std::size_t severity = 0;
    std::uint64_t seed = 0;

    double value() const { return severity_value(kind, severity); }
};

/// Per-file seed: derive_seed(run_seed, "<file_id>/<kind>/<severity>").
std::uint64_t file_seed(std::uint64_t run_seed, std::string_view file_id, Kind kind,
                        std::size_t severity);

} // namespace qnnrobust::corrupt
