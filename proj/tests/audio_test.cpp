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

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "golden/logmel_librosa.inc"
#include "golden/mel_librosa.inc"
#include "qnnrobust/audio/log_mel.hpp"
#include "qnnrobust/audio/mel.hpp"
#include "qnnrobust/audio/resample.hpp"
#include "qnnrobust/audio/stft.hpp"
#include "qnnrobust/audio/wav_io.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"
#include "qnnrobust/common/rng.hpp"

namespace qnnrobust::audio {
namespace {

constexpr double kPi = std::numbers::pi;

Waveform sine(double freq, std::uint32_t rate, std::size_t n, double amp = 0.5) {
    Waveform w;
    w.sample_rate = rate;
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.samples[i] = amp * std::sin(2 * kPi * freq * double(i) / rate);
    return w;
}

Waveform noise(std::uint32_t rate, std::size_t n, std::uint64_t seed, double amp = 0.5) {
    CounterRng rng(seed);
    Waveform w;
    w.sample_rate = rate;
    for (std::size_t i = 0; i < n; ++i) w.samples.push_back(rng.uniform(-amp, amp));
    return w;
}

// Minimal WAV writer for arbitrary formats, independent of the library's.
std::string make_wav(std::uint16_t format, std::uint16_t channels, std::uint16_t bits,
                     std::uint32_t rate, const std::string &data) {
    auto u16 = [](std::string &b, std::uint16_t v) { b += char(v & 0xff); b += char(v >> 8); };
    auto u32 = [&](std::string &b, std::uint32_t v) { u16(b, v & 0xffff); u16(b, v >> 16); };
    std::string b = "RIFF";
    u32(b, 36 + std::uint32_t(data.size()));
    b += "WAVEfmt ";
    u32(b, 16);
    u16(b, format);
    u16(b, channels);
    u32(b, rate);
    u32(b, rate * channels * bits / 8);
    u16(b, std::uint16_t(channels * bits / 8));
    u16(b, bits);
    b += "data";
    u32(b, std::uint32_t(data.size()));
    return b + data;
}

std::string pcm16(std::initializer_list<std::int16_t> values) {
    std::string s;
    for (auto v : values) {
        const auto u = static_cast<std::uint16_t>(v);
        s += char(u & 0xff);
        s += char(u >> 8);
    }
    return s;
}

TEST(LoadWav, Pcm16Scaling) {
    const auto w = decode_wav(make_wav(1, 1, 16, 16000, pcm16({32767, -32768, 0})));
    ASSERT_EQ(w.size(), 3u);
    EXPECT_DOUBLE_EQ(w.samples[0], 32767.0 / 32768.0);
    EXPECT_NEAR(w.samples[0], 0.99997, 1e-5);
    EXPECT_DOUBLE_EQ(w.samples[1], -1.0);
    EXPECT_EQ(w.sample_rate, 16000u);
}

TEST(LoadWav, StereoDownmixByMean) {
    const auto w = decode_wav(make_wav(1, 2, 16, 8000, pcm16({16384, -16384, 8192, 0})));
    ASSERT_EQ(w.size(), 2u);
    EXPECT_DOUBLE_EQ(w.samples[0], 0.0);
    EXPECT_DOUBLE_EQ(w.samples[1], 0.125);
}

TEST(LoadWav, Float32AndRoundTrip) {
    Waveform w = sine(300, 16000, 64);
    const auto back = decode_wav(encode_wav_float32(w));
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(back.samples[i], w.samples[i], 1e-7);
    const auto back16 = decode_wav(encode_wav_pcm16(w));
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(back16.samples[i], w.samples[i], 1.0 / 32768);
}

TEST(LoadWav, Errors) {
    EXPECT_THROW(decode_wav(make_wav(1, 1, 8, 8000, "abcd")), FormatError);
    EXPECT_THROW(decode_wav(make_wav(1, 1, 24, 8000, "abcdef")), FormatError);
    EXPECT_THROW(decode_wav(make_wav(6, 1, 8, 8000, "ab")), FormatError);
    EXPECT_THROW(decode_wav("not a wav file at all"), FormatError);
    const auto full = make_wav(1, 1, 16, 8000, pcm16({1, 2, 3, 4}));
    EXPECT_THROW(decode_wav(full.substr(0, full.size() - 3)), IoError);
    EXPECT_THROW(decode_wav(full.substr(0, 30)), IoError);
    EXPECT_THROW(load_wav("/nonexistent/file.wav"), IoError);
}

TEST(Stft, ZeroSignalZeroPower) {
    Waveform w;
    w.sample_rate = 16000;
    w.samples.assign(1000, 0.0);
    const auto p = stft_power(w);
    EXPECT_EQ(p.rows(), 257u);
    EXPECT_EQ(p.cols(), 1 + 1000 / 128u);
    for (double v : p.data()) EXPECT_EQ(v, 0.0);
}

TEST(Stft, BinCenteredSineLeakage) {
    // 20480 Hz makes the 25 ms window exactly 512 samples; bin 50 = 2000 Hz.
    const auto w = sine(2000.0, 20480, 8192);
    const auto p = stft_power(w);
    for (std::size_t t = 8; t + 8 < p.cols(); ++t) {
        double total = 0;
        for (std::size_t k = 0; k < p.rows(); ++k) total += p(k, t);
        const double lobe = p(49, t) + p(50, t) + p(51, t);
        EXPECT_GT(lobe / total, 0.9);
        // Periodic Hann: neighbours carry half the centre amplitude.
        EXPECT_NEAR(p(50, t) / total, 2.0 / 3.0, 1e-6);
    }
}

TEST(Stft, ParsevalOnRandomSignals) {
    const StftConfig cfg;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto w = noise(16000, 300 + 37 * s, s, 0.9);
        const auto p = stft_power(w, cfg);
        const std::size_t win = window_samples(w.sample_rate, cfg);
        const auto window = hann_window(win, cfg.n_fft);
        // Oracle: explicit np.pad(mode="reflect") and time-domain energy.
        const auto n = static_cast<long>(w.size());
        const long pad = long(cfg.n_fft / 2);
        std::vector<double> padded;
        for (long i = -pad; i < n + pad; ++i) {
            long j = i;
            while (j < 0 || j >= n) j = j < 0 ? -j : 2 * (n - 1) - j;
            padded.push_back(w.samples[std::size_t(j)]);
        }
        double time_energy = 0, freq_energy = 0;
        for (std::size_t t = 0; t < p.cols(); ++t) {
            for (std::size_t i = 0; i < cfg.n_fft; ++i) {
                const double v = window[i] * padded[t * cfg.hop + i];
                time_energy += v * v;
            }
            for (std::size_t k = 0; k < p.rows(); ++k) {
                const double weight = (k == 0 || k == p.rows() - 1) ? 1.0 : 2.0;
                freq_energy += weight * p(k, t);
            }
        }
        freq_energy /= double(cfg.n_fft);
        EXPECT_NEAR(freq_energy / time_energy, 1.0, 1e-6) << "seed " << s;
    }
}

TEST(Stft, WindowLongerThanFftIsRejected) {
    const auto w = sine(440, 24000, 4000);
    EXPECT_THROW(stft_power(w), ValidationError);
    LogMelConfig cfg;
    cfg.resample_hz = 16000;
    EXPECT_NO_THROW(log_mel(w, cfg));
}

TEST(Stft, IstftInvertsStft) {
    const auto w = noise(16000, 5000, 9);
    const auto window = hann_window(2048, 2048);
    const auto spec = stft(w.samples, 2048, 512, window, PadMode::kZero);
    const auto back = istft(spec, 2048, 512, window, w.size());
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(back[i], w.samples[i], 1e-12);
}

// Independent mel construction: explicit triangle per filter from the
// Slaney formula written in closed form.
double oracle_mel(double f) { return f < 1000 ? 3 * f / 200 : 15 + 27 * std::log(f / 1000) / std::log(6.4); }
double oracle_hz(double m) { return m < 15 ? 200 * m / 3 : 1000 * std::pow(6.4, (m - 15) / 27); }

TEST(MelBank, MatchesIndependentOracle) {
    for (std::uint32_t sr : {8000u, 16000u, 22050u, 44100u}) {
        const auto bank = mel_bank(sr, 40, 512);
        const double top = oracle_mel(sr / 2.0);
        for (std::size_t m = 0; m < 40; ++m) {
            const double left = oracle_hz(top * double(m) / 41);
            const double centre = oracle_hz(top * double(m + 1) / 41);
            const double right = oracle_hz(top * double(m + 2) / 41);
            for (std::size_t k = 0; k <= 256; ++k) {
                const double f = double(k) * sr / 512.0;
                double tri = 0;
                if (f > left && f <= centre) tri = (f - left) / (centre - left);
                else if (f > centre && f < right) tri = (right - f) / (right - centre);
                EXPECT_NEAR(bank.weights(m, k), tri * 2 / (right - left), 1e-6);
            }
        }
    }
}

template <std::size_t N>
void expect_matches_golden(std::uint32_t sr, const golden::MelEntry (&entries)[N]) {
    const auto bank = mel_bank(sr, 40, 512);
    Matrix expected(40, 257);
    for (const auto &e : entries) expected(std::size_t(e.row), std::size_t(e.col)) = e.value;
    for (std::size_t m = 0; m < 40; ++m)
        for (std::size_t k = 0; k < 257; ++k)
            EXPECT_NEAR(bank.weights(m, k), expected(m, k), 1e-9) << sr << " " << m << "," << k;
}

TEST(MelBank, MatchesFrozenReferenceLibrary) {
    expect_matches_golden(16000, golden::kMel16000);
    expect_matches_golden(24000, golden::kMel24000);
}

TEST(MelBank, ShapeInvariants) {
    const auto bank = mel_bank(16000);
    EXPECT_EQ(bank.weights.rows(), 40u);
    EXPECT_EQ(bank.weights.cols(), 257u);
    for (double v : bank.weights.data()) EXPECT_GE(v, 0.0);
    for (std::size_t m = 1; m < 40; ++m) EXPECT_GT(bank.center_hz[m], bank.center_hz[m - 1]);
    for (std::size_t m = 0; m < 40; ++m) {
        // Single peak: non-decreasing then non-increasing.
        const auto row = bank.weights.row(m);
        std::size_t k = 1;
        while (k < row.size() && row[k] >= row[k - 1]) ++k;
        while (k < row.size() && row[k] <= row[k - 1]) ++k;
        EXPECT_EQ(k, row.size()) << "filter " << m;
    }
    EXPECT_THROW(mel_bank(16000, 257, 512), ValidationError);
    EXPECT_THROW(mel_bank(0), ValidationError);
}

TEST(LogMel, MatchesFrozenReferenceOnTwoTone) {
    Waveform w;
    w.sample_rate = 16000;
    for (int i = 0; i < 4000; ++i) {
        w.samples.push_back(0.5 * std::sin(2 * kPi * 440 * i / 16000.0) +
                            0.25 * std::sin(2 * kPi * 3000 * i / 16000.0 + 0.3));
    }
    const auto raw = log_mel_raw(w);
    ASSERT_EQ(raw.rows(), std::size_t(golden::kLogMelRows));
    ASSERT_EQ(raw.cols(), std::size_t(golden::kLogMelCols));
    for (std::size_t i = 0; i < raw.data().size(); ++i) {
        EXPECT_NEAR(raw.data()[i], golden::kLogMelTwoTone[i], 1e-6) << i;
    }
}

TEST(LogMel, SilenceHitsEpsilonFloorAndDegenerates) {
    Waveform w;
    w.sample_rate = 16000;
    w.samples.assign(3000, 0.0);
    const auto raw = log_mel_raw(w);
    for (double v : raw.data()) EXPECT_NEAR(v, -23.0259, 1e-4);
    for (double v : raw.data()) EXPECT_DOUBLE_EQ(v, std::log(1e-10));
    const auto g = log_mel(w);
    EXPECT_TRUE(g.degenerate);
    for (double v : g.values.data()) EXPECT_EQ(v, 0.0);
}

TEST(LogMel, AlwaysFortyByOneTwentyEightInUnitRange) {
    for (std::size_t n : {1ul, 50ul, 4000ul, 16000ul, 80000ul}) {
        const auto g = log_mel(noise(16000, n, n));
        ASSERT_EQ(g.values.rows(), 40u);
        ASSERT_EQ(g.values.cols(), 128u);
        if (g.degenerate) continue;
        double lo = 1, hi = 0;
        for (double v : g.values.data()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        EXPECT_EQ(lo, 0.0);
        EXPECT_EQ(hi, 1.0);
    }
}

TEST(LogMel, ScalingUpNeverDecreasesRawValues) {
    const auto w = noise(16000, 6000, 4, 0.3);
    auto louder = w;
    for (auto &x : louder.samples) x *= 2.5;
    const auto a = log_mel_raw(w), b = log_mel_raw(louder);
    for (std::size_t i = 0; i < a.data().size(); ++i) EXPECT_GE(b.data()[i], a.data()[i] - 1e-12);
}

TEST(LogMel, HopShiftMovesColumnsByOne) {
    const auto w = noise(16000, 8000, 13);
    Waveform shifted = w;
    shifted.samples.assign(128, 0.0);
    shifted.samples.insert(shifted.samples.end(), w.samples.begin(), w.samples.end());
    const auto a = log_mel_raw(w), b = log_mel_raw(shifted);
    for (std::size_t t = 4; t + 4 < a.cols(); ++t) {
        for (std::size_t m = 0; m < a.rows(); ++m) EXPECT_NEAR(b(m, t + 1), a(m, t), 1e-9);
    }
}

TEST(LogMel, ResizeColumnsKeepsEndpoints) {
    Matrix m(1, 3);
    m(0, 0) = 0; m(0, 1) = 1; m(0, 2) = 4;
    const auto r = resize_columns(m, 5);
    EXPECT_EQ(r(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(r(0, 1), 0.5);
    EXPECT_EQ(r(0, 2), 1.0);
    EXPECT_DOUBLE_EQ(r(0, 3), 2.5);
    EXPECT_EQ(r(0, 4), 4.0);
}

TEST(LogMel, FileRoundTrip) {
    const auto g = log_mel(sine(700, 16000, 5000));
    const auto path = std::filesystem::temp_directory_path() / "qnnrobust_logmel_rt.bin";
    save_log_mel(path, g);
    const auto back = load_log_mel(path);
    EXPECT_EQ(back.values, g.values);
    EXPECT_EQ(back.min, g.min);
    EXPECT_EQ(back.max, g.max);
    std::filesystem::remove(path);
}

TEST(Resample, PreservesToneAndLength) {
    const auto w = sine(440, 16000, 16000);
    const auto down = resample(w, 8000);
    EXPECT_EQ(down.size(), 8000u);
    EXPECT_EQ(down.sample_rate, 8000u);
    const auto ref = sine(440, 8000, 8000);
    for (std::size_t i = 200; i + 200 < down.size(); ++i) EXPECT_NEAR(down.samples[i], ref.samples[i], 2e-3);
    EXPECT_EQ(resample(w, 16000).samples, w.samples);
    EXPECT_EQ(resample(std::vector<double>{1, 2, 3}, 1.0, 3), (std::vector<double>{1, 2, 3}));
}

TEST(Resample, RemovesContentAboveNewNyquist) {
    const auto w = sine(7000, 16000, 16000);
    const auto down = resample(w, 8000);
    double energy = 0;
    for (std::size_t i = 200; i + 200 < down.size(); ++i) energy += down.samples[i] * down.samples[i];
    EXPECT_LT(energy / double(down.size()), 1e-6);
}

} // namespace
} // namespace qnnrobust::audio
