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

#include "qnnrobust/audio/log_mel.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "qnnrobust/audio/mel.hpp"
#include "qnnrobust/audio/resample.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/tensor_file.hpp"

namespace qnnrobust::audio {

Matrix log_mel_raw(const Waveform &input, const LogMelConfig &cfg) {
    const Waveform &w = input;
    Waveform resampled;
    const Waveform *src = &w;
    if (cfg.resample_hz != 0 && cfg.resample_hz != w.sample_rate) {
        resampled = resample(w, cfg.resample_hz);
        src = &resampled;
    }
    const Matrix power = stft_power(*src, cfg.stft);
    const MelBank bank = mel_bank(src->sample_rate, cfg.n_mels, cfg.stft.n_fft);
    Matrix out(cfg.n_mels, power.cols());
    for (std::size_t m = 0; m < cfg.n_mels; ++m) {
        const auto weights = bank.weights.row(m);
        for (std::size_t t = 0; t < power.cols(); ++t) {
            double acc = 0.0;
            for (std::size_t k = 0; k < power.rows(); ++k) {
                acc += weights[k] * power(k, t);
            }
            out(m, t) = std::log(acc + cfg.epsilon);
        }
    }
    return out;
}

Matrix resize_columns(const Matrix &m, std::size_t frames) {
    if (frames == 0 || m.cols() == 0) {
        throw StructuralError("resize_columns: empty input or target");
    }
    Matrix out(m.rows(), frames);
    const std::size_t src = m.cols();
    for (std::size_t j = 0; j < frames; ++j) {
        const double pos = frames == 1 ? 0.0 : double(j) * double(src - 1) / double(frames - 1);
        const auto i0 = std::min(static_cast<std::size_t>(pos), src - 1);
        const std::size_t i1 = std::min(i0 + 1, src - 1);
        const double frac = pos - double(i0);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            out(r, j) = frac == 0.0 ? m(r, i0) : (1.0 - frac) * m(r, i0) + frac * m(r, i1);
        }
    }
    return out;
}

LogMelGram log_mel(const Waveform &w, const LogMelConfig &cfg) {
    LogMelGram gram;
    gram.values = resize_columns(log_mel_raw(w, cfg), cfg.frames);
    const auto [lo, hi] = std::minmax_element(gram.values.data().begin(), gram.values.data().end());
    gram.min = *lo;
    gram.max = *hi;
    const double range = gram.max - gram.min;
    if (!(range > 1e-12)) {
        spdlog::warn("log-Mel of '{}' is constant ({}); normalizing to zeros", w.source_id,
                     gram.min);
        gram.degenerate = true;
        std::fill(gram.values.data().begin(), gram.values.data().end(), 0.0);
        return gram;
    }
    for (auto &v : gram.values.data()) {
        v = std::clamp((v - gram.min) / range, 0.0, 1.0);
    }
    return gram;
}

void save_log_mel(const std::filesystem::path &path, const LogMelGram &gram) {
    TensorFile t;
    t.dims = {gram.values.rows(), gram.values.cols()};
    t.layout = "HW";
    t.extra = {{"min", gram.min}, {"max", gram.max}, {"degenerate", gram.degenerate}};
    t.data = gram.values.data();
    save_tensor_file(path, t);
}

LogMelGram load_log_mel(const std::filesystem::path &path) {
    auto t = load_tensor_file(path);
    if (t.dims.size() != 2 || t.layout != "HW") {
        throw FormatError(path.string() + ": not a log-Mel tensor");
    }
    LogMelGram g;
    g.values = Matrix(t.dims[0], t.dims[1]);
    g.values.data() = std::move(t.data);
    g.min = t.extra.value("min", 0.0);
    g.max = t.extra.value("max", 0.0);
    g.degenerate = t.extra.value("degenerate", false);
    return g;
}

} // namespace qnnrobust::audio
