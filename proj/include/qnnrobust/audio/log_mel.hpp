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
#include <filesystem>

#include "qnnrobust/audio/stft.hpp"
#include "qnnrobust/audio/waveform.hpp"
#include "qnnrobust/common/matrix.hpp"

namespace qnnrobust::audio {

struct LogMelConfig {
    StftConfig stft;
    std::size_t n_mels = 40;
    std::size_t frames = 128;
    double epsilon = 1e-10;
    /// Resample to this rate before analysis; 0 keeps the native rate.
    std::uint32_t resample_hz = 0;
};

/// Normalized n_mels x frames log-Mel image in [0, 1].
struct LogMelGram {
    Matrix values;
    /// Range of the resized log-Mel matrix before min-max normalization.
    double min = 0.0;
    double max = 0.0;
    /// True when max == min and the output was zero-filled.
    bool degenerate = false;
};

/// log(mel @ |STFT|^2 + eps), n_mels x T, natural log, before any resize.
Matrix log_mel_raw(const Waveform &w, const LogMelConfig &cfg = {});

/// Linear interpolation along columns to `frames` columns; the first and
/// last output columns coincide with the first and last input columns.
Matrix resize_columns(const Matrix &m, std::size_t frames);

/// Raw log-Mel, time axis resized to cfg.frames, then min-max normalized.
/// A constant matrix normalizes to zeros and logs a warning.
LogMelGram log_mel(const Waveform &w, const LogMelConfig &cfg = {});

/// Stored as a "HW" tensor file with {min, max, degenerate} in the header.
void save_log_mel(const std::filesystem::path &path, const LogMelGram &gram);
LogMelGram load_log_mel(const std::filesystem::path &path);

} // namespace qnnrobust::audio
