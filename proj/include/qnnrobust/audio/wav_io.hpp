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

#include <filesystem>
#include <string>

#include "qnnrobust/audio/waveform.hpp"

namespace qnnrobust::audio {

/**
 * Reads a RIFF/WAVE file holding 16-bit integer PCM or 32-bit IEEE float
 * samples (plain or WAVE_FORMAT_EXTENSIBLE), any channel count. Channels are
 * averaged into mono; integer samples are scaled by 1/32768 and float
 * samples are clamped to [-1, 1].
 *
 * Throws FormatError for other codecs and IoError for unreadable or
 * truncated files.
 */
Waveform load_wav(const std::filesystem::path &path);
Waveform decode_wav(const std::string &bytes, std::string source_id = {});

/// Mono 16-bit PCM: round(x * 32768) clamped to [-32768, 32767].
std::string encode_wav_pcm16(const Waveform &w);
void save_wav_pcm16(const std::filesystem::path &path, const Waveform &w);

/// Mono 32-bit float WAV (lossless for float32-representable samples).
std::string encode_wav_float32(const Waveform &w);

} // namespace qnnrobust::audio
