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

#include "qnnrobust/corrupt/severity.hpp"

#include <string>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/rng.hpp"

namespace qnnrobust::corrupt {
namespace {

using Row = std::array<double, kMaxSeverity + 1>;
constexpr Row kNoise{0.0, 0.01, 0.05, 0.1, 0.15, 0.2, 0.25};
constexpr Row kPitch{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
constexpr Row kShift{0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15};
constexpr Row kSpeed{1.0, 1.05, 1.1, 1.15, 1.2, 1.25, 1.3};

} // namespace

std::string_view to_string(Kind k) noexcept {
    switch (k) {
    case Kind::kGaussianNoise: return "gaussian_noise";
    case Kind::kPitchShift: return "pitch_shift";
    case Kind::kTemporalShift: return "temporal_shift";
    case Kind::kSpeedVariation: return "speed_variation";
    }
    return "?";
}

Kind kind_from_string(std::string_view name) {
    for (Kind k : kAllKinds) {
        if (to_string(k) == name) return k;
    }
    throw ValidationError("unknown corruption kind '" + std::string(name) + "'");
}

double severity_value(Kind kind, std::size_t severity) {
    if (severity > kMaxSeverity) {
        throw ValidationError("severity " + std::to_string(severity) + " outside 0..6");
    }
    switch (kind) {
    case Kind::kGaussianNoise: return kNoise[severity];
    case Kind::kPitchShift: return kPitch[severity];
    case Kind::kTemporalShift: return kShift[severity];
    case Kind::kSpeedVariation: return kSpeed[severity];
    }
    throw ValidationError("bad corruption kind");
}

std::uint64_t file_seed(std::uint64_t run_seed, std::string_view file_id, Kind kind,
                        std::size_t severity) {
    return derive_seed(run_seed, std::string(file_id) + "/" + std::string(to_string(kind)) + "/" +
                                     std::to_string(severity));
}

} // namespace qnnrobust::corrupt
