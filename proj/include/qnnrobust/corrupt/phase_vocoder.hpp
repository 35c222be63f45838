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
#include <span>
#include <vector>

namespace qnnrobust::corrupt {

inline constexpr std::size_t kVocoderFft = 2048;
inline constexpr std::size_t kVocoderHop = 512;

/**
 * Phase-vocoder time stretch. rate > 1 speeds up (shorter output), rate < 1
 * slows down; the result has round(L / rate) samples. Hann analysis and
 * synthesis at 75% overlap, zero-padded centered frames, phase accumulation
 * with principal-value unwrapping. rate == 1 returns the input unchanged.
 */
std::vector<double> time_stretch(std::span<const double> signal, double rate);

} // namespace qnnrobust::corrupt
