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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qnnrobust/audio/waveform.hpp"
#include "qnnrobust/common/matrix.hpp"

namespace qnnrobust::audio {

struct StftConfig {
    std::size_t n_fft = 512;
    std::size_t hop = 128;
    /// Analysis window length; converted with round(win_seconds * rate).
    double win_seconds = 0.025;
};

enum class PadMode { kReflect, kZero };

/// Periodic Hann of `win_length` samples, zero-padded (centered) to n_fft.
std::vector<double> hann_window(std::size_t win_length, std::size_t n_fft);

/// Frames x bins complex STFT of centered frames (n_fft/2 padding on both
/// sides). Frame count is 1 + L / hop.
struct ComplexStft {
    std::size_t frames = 0;
    std::size_t bins = 0;
    std::vector<std::complex<double>> data;

    std::complex<double> &at(std::size_t frame, std::size_t bin) {
        return data[frame * bins + bin];
    }
    const std::complex<double> &at(std::size_t frame, std::size_t bin) const {
        return data[frame * bins + bin];
    }
};

ComplexStft stft(std::span<const double> signal, std::size_t n_fft, std::size_t hop,
                 std::span<const double> window, PadMode pad);

/// Weighted overlap-add inverse of `stft` (centered), trimmed or
/// zero-padded to `length` samples.
std::vector<double> istft(const ComplexStft &spec, std::size_t n_fft, std::size_t hop,
                          std::span<const double> window, std::size_t length);

/// Window length in samples for a waveform; throws ValidationError when it
/// exceeds n_fft (resample the input to a lower rate first).
std::size_t window_samples(std::uint32_t sample_rate, const StftConfig &cfg);

/// |STFT|^2 as bins (n_fft/2 + 1) x frames, Hann window, reflect padding.
Matrix stft_power(const Waveform &w, const StftConfig &cfg = {});

} // namespace qnnrobust::audio
