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
#include <vector>

#include "qnnrobust/common/matrix.hpp"

namespace qnnrobust::audio {

/// Slaney mel scale: linear below 1 kHz, logarithmic above.
double hz_to_mel(double hz) noexcept;
double mel_to_hz(double mel) noexcept;

/// Triangular filters over the n_fft/2 + 1 STFT bins.
struct MelBank {
    Matrix weights; ///< n_mels x bins
    std::uint32_t sample_rate = 0;
    double f_min = 0.0;
    double f_max = 0.0;
    std::vector<double> center_hz;
};

/**
 * Slaney-style bank with area-normalized triangles (each filter scaled by
 * 2 / bandwidth), f_min = 0 and f_max = sample_rate / 2.
 * Throws ValidationError when n_mels > n_fft / 2 or sample_rate == 0.
 */
MelBank mel_bank(std::uint32_t sample_rate, std::size_t n_mels = 40, std::size_t n_fft = 512);

} // namespace qnnrobust::audio
