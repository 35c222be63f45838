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

#include "qnnrobust/audio/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"

namespace qnnrobust::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t u16(const std::string &b, std::size_t at) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                      (static_cast<unsigned char>(b[at + 1]) << 8));
}

std::uint32_t u32(const std::string &b, std::size_t at) {
    return static_cast<std::uint32_t>(u16(b, at)) |
           (static_cast<std::uint32_t>(u16(b, at + 2)) << 16);
}

void put_u16(std::string &b, std::uint16_t v) {
    b.push_back(static_cast<char>(v & 0xff));
    b.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string &b, std::uint32_t v) {
    put_u16(b, static_cast<std::uint16_t>(v & 0xffff));
    put_u16(b, static_cast<std::uint16_t>(v >> 16));
}

std::string header(std::uint16_t format, std::uint16_t bits, std::uint32_t rate,
                   std::uint32_t data_bytes) {
    std::string b;
    b.append("RIFF");
    put_u32(b, 36 + data_bytes);
    b.append("WAVEfmt ");
    put_u32(b, 16);
    put_u16(b, format);
    put_u16(b, 1);
    put_u32(b, rate);
    put_u32(b, rate * (bits / 8));
    put_u16(b, bits / 8);
    put_u16(b, bits);
    b.append("data");
    put_u32(b, data_bytes);
    return b;
}

} // namespace

Waveform decode_wav(const std::string &bytes, std::string source_id) {
    if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
        bytes.compare(8, 4, "WAVE") != 0) {
        throw FormatError(source_id + ": not a RIFF/WAVE file");
    }
    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    std::size_t pos = 12;
    while (true) {
        if (pos + 8 > bytes.size()) {
            throw IoError(source_id + ": truncated WAV (no data chunk)");
        }
        const std::string id = bytes.substr(pos, 4);
        const std::uint32_t size = u32(bytes, pos + 4);
        const std::size_t body = pos + 8;
        if (id == "fmt ") {
            if (size < 16 || body + size > bytes.size()) {
                throw IoError(source_id + ": truncated fmt chunk");
            }
            format = u16(bytes, body);
            channels = u16(bytes, body + 2);
            rate = u32(bytes, body + 4);
            bits = u16(bytes, body + 14);
            if (format == kFormatExtensible) {
                if (size < 40) {
                    throw FormatError(source_id + ": short WAVE_FORMAT_EXTENSIBLE header");
                }
                // First two bytes of the sub-format GUID carry the codec tag.
                format = u16(bytes, body + 24);
            }
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) {
                throw FormatError(source_id + ": data chunk before fmt chunk");
            }
            const bool pcm16 = format == kFormatPcm && bits == 16;
            const bool f32 = format == kFormatFloat && bits == 32;
            if (!pcm16 && !f32) {
                throw FormatError(source_id + ": unsupported WAV codec (format " +
                                  std::to_string(format) + ", " + std::to_string(bits) +
                                  " bits); expected 16-bit PCM or 32-bit float");
            }
            if (channels == 0 || rate == 0) {
                throw FormatError(source_id + ": invalid channel count or sample rate");
            }
            if (body + size > bytes.size()) {
                throw IoError(source_id + ": truncated WAV data chunk");
            }
            const std::size_t frame_bytes = std::size_t(channels) * (bits / 8);
            const std::size_t frames = size / frame_bytes;
            Waveform w;
            w.sample_rate = rate;
            w.source_id = std::move(source_id);
            w.samples.resize(frames);
            for (std::size_t f = 0; f < frames; ++f) {
                double acc = 0.0;
                for (std::size_t c = 0; c < channels; ++c) {
                    const std::size_t at = body + f * frame_bytes + c * (bits / 8);
                    if (pcm16) {
                        acc += static_cast<std::int16_t>(u16(bytes, at)) / 32768.0;
                    } else {
                        float v;
                        const std::uint32_t raw = u32(bytes, at);
                        std::memcpy(&v, &raw, sizeof(v));
                        acc += std::isfinite(v) ? std::clamp(double(v), -1.0, 1.0) : 0.0;
                    }
                }
                w.samples[f] = acc / channels;
            }
            return w;
        }
        pos = body + size + (size & 1U);
    }
}

Waveform load_wav(const std::filesystem::path &path) {
    return decode_wav(read_file(path), path.string());
}

std::string encode_wav_pcm16(const Waveform &w) {
    const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
    std::string b = header(kFormatPcm, 16, w.sample_rate, data_bytes);
    b.reserve(b.size() + data_bytes);
    for (double x : w.samples) {
        const double q = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
        put_u16(b, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    return b;
}

void save_wav_pcm16(const std::filesystem::path &path, const Waveform &w) {
    write_file_atomic(path, encode_wav_pcm16(w));
}

std::string encode_wav_float32(const Waveform &w) {
    const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * 4);
    std::string b = header(kFormatFloat, 32, w.sample_rate, data_bytes);
    for (double x : w.samples) {
        const auto f = static_cast<float>(x);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof(raw));
        put_u32(b, raw);
    }
    return b;
}

} // namespace qnnrobust::audio
