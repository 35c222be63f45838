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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qnnrobust/audio/waveform.hpp"

namespace qnnrobust::audio {

/**
 * Band-limited resampling with a Kaiser-windowed sinc kernel (16 zero
 * crossings, beta 8.6, cutoff 0.95 of the lower Nyquist rate).
 *
 * `ratio` is output rate / input rate; output sample j is evaluated at
 * input position j / ratio and samples outside the input are zero. A ratio
 * of exactly 1 with out_len == input.size() returns the input unchanged.
 */
std::vector<double> resample(std::span<const double> input, double ratio,
                             std::size_t out_len);

/// Converts to `target_rate`; output length is ceil(L * target / source).
Waveform resample(const Waveform &w, std::uint32_t target_rate);

} // namespace qnnrobust::audio
