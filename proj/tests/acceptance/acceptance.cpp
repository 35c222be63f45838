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

// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <malloc.h>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "qnnrobust/audio/log_mel.hpp"
#include "qnnrobust/audio/mel.hpp"
#include "qnnrobust/audio/stft.hpp"
#include "qnnrobust/common/csv.hpp"
#include "qnnrobust/common/fft.hpp"
#include "qnnrobust/common/fs_util.hpp"
#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/corrupt/generators.hpp"
#include "qnnrobust/harness/experiment.hpp"
#include "qnnrobust/harness/fixture.hpp"
#include "qnnrobust/metrics/robustness.hpp"
#include "qnnrobust/nn/layers.hpp"
#include "qnnrobust/qsim/templates.hpp"
#include "qnnrobust/quanv/quanv_layer.hpp"

namespace fs = std::filesystem;
using namespace qnnrobust;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Accumulates sub-checks; the first few failures are kept for the summary.
class Checker {
  public:
    void expect(bool ok, const std::string &what) {
        if (ok) return;
        if (failures_++ < 3) failed_ += (failed_.empty() ? "" : "; ") + what;
    }
    void note(const std::string &s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
    Outcome outcome() const {
        if (failures_ == 0) return {true, notes_};
        return {false, std::to_string(failures_) + " failed check(s): " + failed_ + (notes_.empty() ? "" : " | " + notes_)};
    }

  private:
    std::size_t failures_ = 0;
    std::string failed_;
    std::string notes_;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int g_failed = 0;

void run(const std::string &name, double limit_s, const std::function<Outcome()> &fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : ", ") + std::string("over time limit");
    }
    g_failed += o.pass ? 0 : 1;
    std::printf("%s  %-16s %s [%.1f s%s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs,
                limit_s > 0 ? (", limit " + fmt("%.0f", limit_s) + " s").c_str() : "");
    std::fflush(stdout);
}

qsim::StateVec random_state(std::size_t n, CounterRng &rng) {
    std::vector<std::complex<double>> a(std::size_t{1} << n);
    double norm = 0;
    for (auto &x : a) {
        x = {rng.normal(), rng.normal()};
        norm += std::norm(x);
    }
    for (auto &x : a) x /= std::sqrt(norm);
    return qsim::StateVec::from_amplitudes(std::move(a));
}

const std::vector<std::size_t> kDepths{1, 4, 10, 15, 20, 25, 30, 50};

Outcome simulator_suite() {
    Checker c;
    CounterRng rng(2024);
    double worst = 0;
    for (auto t : {qsim::Template::kBEQC, qsim::Template::kSEQC, qsim::Template::kRQC})
        for (auto d : kDepths)
            for (std::uint64_t k = 0; k < 100; ++k) {
                const auto spec = qsim::build_circuit(t, 4, d, k);
                const auto out = qsim::run_circuit(spec, random_state(4, rng));
                worst = std::max(worst, std::abs(std::sqrt(out.norm_squared()) - 1.0));
            }
    c.expect(worst < 1e-12, "norm error " + fmt("%.3g", worst));
    c.note("max norm error " + fmt("%.2g", worst));

    for (auto d : kDepths) {
        const auto b = qsim::build_beqc(4, d, d);
        const auto bc = b.counts();
        bool all_rx = true;
        for (const auto &g : b.gates) all_rx &= g.kind() == qsim::GateKind::RX || g.kind() == qsim::GateKind::CNOT;
        c.expect(bc.rotations == 4 * d && bc.cnots == 4 * d && bc.other == 0 && all_rx,
                 "BEQC counts at d=" + std::to_string(d));
        const auto s = qsim::build_seqc(4, d, d).counts();
        c.expect(s.rotations == 12 * d && s.cnots == 4 * d && s.other == 0, "SEQC counts at d=" + std::to_string(d));
    }

    const double p = qsim::kRqcCnotProbability;
    constexpr int kSeeds = 10000;
    double worst_z = 0;
    for (auto d : kDepths) {
        double sum = 0;
        bool rotations_ok = true;
        for (int s = 0; s < kSeeds; ++s) {
            const auto k = qsim::build_rqc(4, d, std::uint64_t(s)).counts();
            rotations_ok &= k.rotations == 4 * d;
            sum += double(k.cnots);
        }
        const double sigma = std::sqrt(4.0 * double(d) * p * (1 - p) / kSeeds);
        const double z = std::abs(sum / kSeeds - 12.0 * double(d) / 7.0) / sigma;
        worst_z = std::max(worst_z, z);
        c.expect(z < 3.0, "RQC mean at d=" + std::to_string(d) + " off by " + fmt("%.2f", z) + " sigma");
        c.expect(rotations_ok, "RQC rotations at d=" + std::to_string(d));
    }
    c.note("gate counts exact, RQC CNOT mean within " + fmt("%.2f", worst_z) + " sigma");
    return c.outcome();
}

Outcome quanv_anchors() {
    Checker c;
    auto beqc = qsim::build_beqc(4, 1, 0);
    for (auto &g : beqc.gates)
        if (g.angle()) g = qsim::Gate::rx(g.wires()[0], 0.0);
    const auto ones = quanv::quanv_forward(Matrix(40, 128, 0.0), beqc);
    c.expect(ones.channels == 4 && ones.height == 20 && ones.width == 64, "zero map shape");
    double dev = 0;
    for (double v : ones.values) dev = std::max(dev, std::abs(v - 1.0));
    c.expect(dev <= 1e-12, "all-ones deviation " + fmt("%.3g", dev));

    CounterRng rng(5);
    Matrix img(40, 128);
    for (auto &v : img.data()) v = rng.uniform();
    const auto id = quanv::quanv_forward(img, qsim::build_identity(4));
    double err = 0;
    for (std::size_t r = 0; r < 20; ++r)
        for (std::size_t col = 0; col < 64; ++col) {
            const double px[4] = {img(2 * r, 2 * col), img(2 * r, 2 * col + 1), img(2 * r + 1, 2 * col),
                                  img(2 * r + 1, 2 * col + 1)};
            for (std::size_t q = 0; q < 4; ++q) err = std::max(err, std::abs(id.at(q, r, col) - std::cos(kPi * px[q])));
        }
    c.expect(err <= 1e-12, "identity circuit error " + fmt("%.3g", err));

    for (auto [h, w] : std::vector<std::pair<std::size_t, std::size_t>>{{40, 128}, {41, 127}, {2, 2}, {7, 30}}) {
        const auto m = quanv::quanv_forward(Matrix(h, w, 0.5), qsim::build_seqc(4, 2, 1));
        c.expect(m.channels == 4 && m.height == (h + 1) / 2 && m.width == (w + 1) / 2,
                 "shape law for " + std::to_string(h) + "x" + std::to_string(w));
    }
    c.note("zero-angle BEQC all ones (max dev " + fmt("%.1g", dev) + "), identity = cos(pi x) (max err " +
           fmt("%.1g", err) + "), 40x128 -> 4x20x64");
    return c.outcome();
}

double ks_statistic(std::vector<double> x, double sd) {
    std::sort(x.begin(), x.end());
    const double n = double(x.size());
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = 0.5 * std::erfc(-x[i] / (sd * std::sqrt(2.0)));
        d = std::max({d, f - double(i) / n, double(i + 1) / n - f});
    }
    return d;
}

audio::Waveform random_wave(CounterRng &rng, std::size_t n, double amp) {
    audio::Waveform w{{}, 16000, {}};
    for (std::size_t i = 0; i < n; ++i) w.samples.push_back(rng.uniform(-amp, amp));
    return w;
}

Outcome corruption_suite() {
    using corrupt::Kind;
    Checker c;
    CounterRng rng(77);
    for (auto k : corrupt::kAllKinds) {
        const auto w = random_wave(rng, 5000, 0.8);
        const auto r = corrupt::apply({k, 0, 123}, w);
        c.expect(r.waveform.samples == w.samples, "clean identity for " + std::string(corrupt::to_string(k)));
    }
    std::size_t cases = 0;
    for (auto k : corrupt::kAllKinds) {
        for (int i = 0; i < 1000; ++i) {
            const std::size_t n = 200 + rng.below(8000);
            const double amp = k == Kind::kGaussianNoise && i % 2 == 0 ? 1.0 : rng.uniform(0.05, 1.0);
            const auto w = random_wave(rng, n, amp);
            const std::size_t sev = 1 + rng.below(6);
            const auto r = corrupt::apply({k, sev, rng()}, w);
            ++cases;
            c.expect(r.waveform.size() == n, std::string(corrupt::to_string(k)) + " changed length");
            if (k == Kind::kGaussianNoise) {
                const auto [lo, hi] = std::minmax_element(r.waveform.samples.begin(), r.waveform.samples.end());
                c.expect(*lo >= -1.0 && *hi <= 1.0, "gaussian output outside [-1, 1]");
            }
        }
    }

    constexpr std::size_t kDraws = 10000;
    const double critical = 1.628 / std::sqrt(double(kDraws)); // alpha = 0.01
    double worst = 0;
    for (std::size_t sev = 1; sev <= 6; ++sev) {
        std::vector<double> pitch, shift, speed;
        for (std::size_t i = 0; i < kDraws; ++i) {
            const std::string id = "clip" + std::to_string(i);
            CounterRng a(corrupt::file_seed(9, id, Kind::kPitchShift, sev));
            CounterRng b(corrupt::file_seed(9, id, Kind::kTemporalShift, sev));
            CounterRng s(corrupt::file_seed(9, id, Kind::kSpeedVariation, sev));
            pitch.push_back(corrupt::draw_semitones(a, corrupt::severity_value(Kind::kPitchShift, sev)));
            shift.push_back(corrupt::draw_shift_proportion(b, corrupt::severity_value(Kind::kTemporalShift, sev)));
            speed.push_back(corrupt::draw_log_speed(s, corrupt::severity_value(Kind::kSpeedVariation, sev)));
        }
        const double d[3] = {ks_statistic(pitch, corrupt::severity_value(Kind::kPitchShift, sev)),
                             ks_statistic(shift, corrupt::severity_value(Kind::kTemporalShift, sev)),
                             ks_statistic(speed, std::log(corrupt::severity_value(Kind::kSpeedVariation, sev)))};
        for (double v : d) {
            worst = std::max(worst, v);
            c.expect(v < critical, "KS rejects at severity " + std::to_string(sev));
        }
    }

    // Dominant peak of a full-length FFT (1 Hz bins for a 1 s signal).
    audio::Waveform tone{std::vector<double>(16000), 16000, {}};
    for (std::size_t i = 0; i < tone.size(); ++i) tone.samples[i] = 0.5 * std::sin(2 * kPi * 440.0 * double(i) / 16000);
    const auto shifted = corrupt::pitch_shift_by(tone, 12.0).waveform;
    RealFft fft(shifted.size());
    std::vector<std::complex<double>> spec(fft.bins());
    fft.forward(shifted.samples, spec);
    std::size_t peak = 1;
    for (std::size_t k = 1; k < spec.size(); ++k)
        if (std::abs(spec[k]) > std::abs(spec[peak])) peak = k;
    const double bin_hz = 16000.0 / double(shifted.size());
    const double peak_hz = double(peak) * bin_hz;
    c.expect(std::abs(peak_hz - 880.0) <= bin_hz, "octave-up peak at " + fmt("%.1f", peak_hz) + " Hz");

    c.note(std::to_string(cases) + " length cases, max KS D " + fmt("%.4f", worst) + " < " + fmt("%.4f", critical) +
           ", +12 st peak " + fmt("%.0f", peak_hz) + " Hz (bin " + fmt("%.0f", bin_hz) + " Hz)");
    return c.outcome();
}

double oracle_mel(double f) { return f < 1000 ? 3 * f / 200 : 15 + 27 * std::log(f / 1000) / std::log(6.4); }
double oracle_hz(double m) { return m < 15 ? 200 * m / 3 : 1000 * std::pow(6.4, (m - 15) / 27); }

Outcome dsp_suite() {
    Checker c;
    audio::Waveform silence{std::vector<double>(4000, 0.0), 16000, {}};
    double floor_err = 0;
    const auto raw = audio::log_mel_raw(silence);
    for (double v : raw.data()) floor_err = std::max(floor_err, std::abs(v - std::log(1e-10)));
    c.expect(floor_err <= 1e-12, "silence floor off by " + fmt("%.3g", floor_err));
    c.expect(fmt("%.4f", raw.data().front()) == "-23.0259", "silence floor prints as " + fmt("%.4f", raw.data().front()));

    const audio::StftConfig cfg;
    CounterRng rng(31);
    double worst_parseval = 0;
    for (int s = 0; s < 100; ++s) {
        const auto w = random_wave(rng, 300 + rng.below(6000), 0.9);
        const auto p = audio::stft_power(w, cfg);
        const auto window = audio::hann_window(audio::window_samples(w.sample_rate, cfg), cfg.n_fft);
        const long n = long(w.size()), pad = long(cfg.n_fft / 2);
        std::vector<double> padded;
        for (long i = -pad; i < n + pad; ++i) {
            long j = i;
            while (j < 0 || j >= n) j = j < 0 ? -j : 2 * (n - 1) - j;
            padded.push_back(w.samples[std::size_t(j)]);
        }
        double te = 0, fe = 0;
        for (std::size_t t = 0; t < p.cols(); ++t) {
            for (std::size_t i = 0; i < cfg.n_fft; ++i) te += std::pow(window[i] * padded[t * cfg.hop + i], 2);
            for (std::size_t k = 0; k < p.rows(); ++k) fe += (k == 0 || k + 1 == p.rows() ? 1.0 : 2.0) * p(k, t);
        }
        worst_parseval = std::max(worst_parseval, std::abs(fe / double(cfg.n_fft) / te - 1.0));
    }
    c.expect(worst_parseval < 1e-6, "Parseval relative error " + fmt("%.3g", worst_parseval));

    double mel_err = 0;
    for (std::uint32_t sr : {8000u, 16000u, 22050u, 24000u, 44100u}) {
        const auto bank = audio::mel_bank(sr, 40, 512);
        const double top = oracle_mel(sr / 2.0);
        for (std::size_t m = 0; m < 40; ++m) {
            const double l = oracle_hz(top * double(m) / 41), ce = oracle_hz(top * double(m + 1) / 41),
                         r = oracle_hz(top * double(m + 2) / 41);
            for (std::size_t k = 0; k <= 256; ++k) {
                const double f = double(k) * sr / 512.0;
                double tri = 0;
                if (f > l && f <= ce) tri = (f - l) / (ce - l);
                else if (f > ce && f < r) tri = (r - f) / (r - ce);
                mel_err = std::max(mel_err, std::abs(bank.weights(m, k) - tri * 2 / (r - l)));
            }
        }
    }
    c.expect(mel_err < 1e-6, "mel bank error " + fmt("%.3g", mel_err));

    std::size_t images = 0;
    for (int s = 0; s < 60; ++s) {
        const std::size_t n = 1 + rng.below(48000);
        audio::Waveform w = s % 3 == 0 ? audio::Waveform{std::vector<double>(n, 0.0), 16000, {}}
                                       : random_wave(rng, n, rng.uniform(1e-4, 1.0));
        if (s % 3 == 2)
            for (std::size_t i = 0; i < n; ++i) w.samples[i] = 0.7 * std::sin(2 * kPi * 300.0 * double(s) * double(i) / 16000);
        const auto g = audio::log_mel(w);
        ++images;
        bool in_range = g.values.rows() == 40 && g.values.cols() == 128;
        for (double v : g.values.data()) in_range &= v >= 0.0 && v <= 1.0;
        c.expect(in_range, "log-Mel image not 40x128 in [0, 1] for n=" + std::to_string(n));
    }
    c.note("silence floor " + fmt("%.4f", raw.data().front()) + ", Parseval " + fmt("%.1g", worst_parseval) + ", mel " +
           fmt("%.1g", mel_err) + ", " + std::to_string(images) + " images 40x128 in [0,1]");
    return c.outcome();
}

nn::Tensor random_tensor(std::vector<std::size_t> dims, CounterRng &rng) {
    nn::Tensor t(std::move(dims));
    for (auto &v : t.data) v = rng.uniform(-1, 1);
    return t;
}

double dot(const nn::Tensor &a, const nn::Tensor &b) {
    double s = 0;
    for (std::size_t i = 0; i < a.numel(); ++i) s += a.data[i] * b.data[i];
    return s;
}

Outcome autodiff_suite() {
    Checker c;
    CounterRng rng(404);
    double worst = 0;
    std::size_t probes = 0;
    auto check = [&](nn::Tensor &target, const nn::Tensor &grad, const std::function<double()> &loss,
                     const std::string &what) {
        constexpr double h = 1e-5;
        for (int p = 0; p < 12; ++p) {
            const std::size_t i = rng.below(target.numel());
            const double saved = target.data[i];
            target.data[i] = saved + h;
            const double up = loss();
            target.data[i] = saved - h;
            const double down = loss();
            target.data[i] = saved;
            const double num = (up - down) / (2 * h);
            const double rel = std::abs(grad.data[i] - num) / std::max({std::abs(grad.data[i]), std::abs(num), 1e-8});
            worst = std::max(worst, rel);
            ++probes;
            c.expect(rel < 1e-6, what + " rel error " + fmt("%.3g", rel));
        }
    };
    {
        auto x = random_tensor({2, 4, 10, 12}, rng), w = random_tensor({5, 4, 3, 3}, rng), b = random_tensor({5}, rng);
        const auto r = random_tensor(nn::conv2d_forward(x, w, b, 1).dims, rng);
        auto loss = [&] { return dot(nn::conv2d_forward(x, w, b, 1), r); };
        const auto g = nn::conv2d_backward(x, w, r, 1, true);
        check(x, g.dx, loss, "conv dx");
        check(w, g.dw, loss, "conv dw");
        check(b, g.db, loss, "conv db");
    }
    {
        auto x = random_tensor({2, 3, 9, 12}, rng);
        const auto r = random_tensor(nn::maxpool_forward(x).y.dims, rng);
        const auto f = nn::maxpool_forward(x);
        check(x, nn::maxpool_backward(r, f.argmax, x.dims), [&] { return dot(nn::maxpool_forward(x).y, r); }, "pool");
    }
    {
        auto x = random_tensor({4, 25}, rng);
        const auto r = random_tensor({4, 25}, rng);
        check(x, nn::relu_backward(nn::relu_forward(x), r), [&] { return dot(nn::relu_forward(x), r); }, "relu");
        check(x, nn::tanh_backward(nn::tanh_forward(x), r), [&] { return dot(nn::tanh_forward(x), r); }, "tanh");
    }
    {
        auto x = random_tensor({3, 20}, rng), w = random_tensor({8, 20}, rng), b = random_tensor({8}, rng);
        const auto r = random_tensor({3, 8}, rng);
        auto loss = [&] { return dot(nn::dense_forward(x, w, b), r); };
        const auto g = nn::dense_backward(x, w, r);
        check(x, g.dx, loss, "dense dx");
        check(w, g.dw, loss, "dense dw");
        check(b, g.db, loss, "dense db");
    }
    {
        auto z = random_tensor({6, 7}, rng);
        const std::vector<int> labels{0, 3, 6, 2, 2, 5};
        check(z, nn::softmax_cross_entropy(z, labels).dlogits,
              [&] { return nn::softmax_cross_entropy(z, labels).loss; }, "cross-entropy");
    }
    double ce_err = 0;
    for (std::size_t k : {2ul, 3ul, 7ul, 10ul}) {
        const std::vector<int> labels{0, int(k - 1), 1};
        ce_err = std::max(ce_err, std::abs(nn::softmax_cross_entropy(nn::Tensor({3, k}, 0.42), labels).loss -
                                           std::log(double(k))));
    }
    c.expect(ce_err < 1e-12, "uniform-logit cross-entropy off by " + fmt("%.3g", ce_err));
    c.note(std::to_string(probes) + " probes over 10 gradients, max rel err " + fmt("%.2g", worst) +
           ", |CE - ln K| " + fmt("%.1g", ce_err));
    return c.outcome();
}

metrics::AccuracyGrid grid(const std::string &name, double clean, std::array<double, 6> accs) {
    metrics::AccuracyGrid g({name}, 0);
    g.set_clean(clean);
    for (auto k : corrupt::kAllKinds)
        for (std::size_t s = 1; s <= 6; ++s) g.set(k, s, accs[s - 1]);
    return g;
}

Outcome metrics_oracle() {
    using metrics::corruption_error;
    using metrics::relative_corruption_error;
    Checker c;
    const auto k = corrupt::Kind::kPitchShift;
    const auto model = grid("m", 1.0, {.9, .8, .7, .6, .5, .4});
    const auto base = grid("b", 0.9, {.8, .7, .6, .5, .4, .3});
    c.expect(std::abs(corruption_error(model, base, k) - 2.1 / 2.7) <= 1e-12, "CE 2.1/2.7");
    // Baseline degradation from 0.9 over (.8..3) is 2.1, so RCE = 2.1/2.1;
    // the 1.5 denominator corresponds to a baseline clean accuracy of 0.8.
    c.expect(std::abs(relative_corruption_error(model, base, k) - 1.0) <= 1e-12, "RCE on stated grids");
    c.expect(std::abs(relative_corruption_error(model, grid("b8", 0.8, {.8, .7, .6, .5, .4, .3}), k) - 1.4) <= 1e-12,
             "RCE 2.1/1.5");
    c.expect(std::abs(corruption_error(grid("h", 1, {.9, .85, .8, .75, .7, .65}), grid("f", 1, {.8, .7, .6, .5, .4, .3}),
                                       k) - 0.5) <= 1e-12,
             "CE half errors");
    c.expect(relative_corruption_error(grid("flat", .7, {.7, .7, .7, .7, .7, .7}), base, k) == 0.0, "flat RCE");
    const std::vector<std::optional<double>> v{0.98, 0.96, 0.95, 0.93}, ones{1.0, 1.0, 1.0, 1.0};
    c.expect(std::abs(metrics::mean_metrics(v) - 0.955) <= 1e-12, "mean 0.955");
    c.expect(metrics::mean_metrics(ones) == 1.0, "mean of ones");

    CounterRng rng(8);
    for (int s = 0; s < 200; ++s) {
        metrics::AccuracyGrid g({"r"}, 0);
        g.set_clean(rng.uniform(0.5, 1.0));
        for (auto kind : corrupt::kAllKinds)
            for (std::size_t sev = 1; sev <= 6; ++sev) g.set(kind, sev, rng.uniform(0.0, 0.95));
        const auto r = metrics::make_report(g, g);
        bool exact = r.mce == 1.0 && r.rmce == 1.0;
        for (std::size_t i = 0; i < 4; ++i) exact &= r.ce[i] == 1.0 && r.rce[i] == 1.0;
        c.expect(exact, "self-baseline not exactly 1");
    }

    auto throws_undefined = [](const std::function<void()> &f) {
        try {
            f();
        } catch (const metrics::UndefinedMetric &) {
            return true;
        }
        return false;
    };
    const auto perfect = grid("p", 1.0, {1, 1, 1, 1, 1, 1});
    c.expect(throws_undefined([&] { corruption_error(model, perfect, k); }), "perfect baseline CE not an error");
    c.expect(throws_undefined([&] { relative_corruption_error(model, grid("fl", .8, {.8, .8, .8, .8, .8, .8}), k); }),
             "flat baseline RCE not an error");
    const std::vector<std::optional<double>> partial{1.0, std::nullopt, 1.0, 1.0};
    c.expect(throws_undefined([&] { metrics::mean_metrics(partial); }), "undefined mean not an error");
    c.note("hand values to 1e-12, 200 self-baselines exactly 1, undefined denominators raise");
    return c.outcome();
}

// Bundled 200-WAV tone/noise fixture, regenerated on every acceptance run.
void ensure_fixture(const fs::path &work) {
    static bool done = false;
    if (done) return;
    fs::remove_all(work / "fixture");
    harness::make_fixture(work / "fixture", 200, 0);
    done = true;
}

harness::ExperimentConfig e2e_config(const fs::path &work) {
    harness::ExperimentConfig cfg;
    cfg.dataset_root = work / "fixture";
    cfg.models = {harness::ModelName::kCnnBase, harness::ModelName::kQnnBasic};
    cfg.depths = {1};
    cfg.seeds = {0, 1};
    cfg.train.max_epochs = 500;
    cfg.output_dir = work / "e2e";
    cfg.cache_dir = work / "e2e_cache";
    return cfg;
}

Outcome end_to_end(const fs::path &work) {
    Checker c;
    ensure_fixture(work);
    const auto cfg = e2e_config(work);
    fs::remove_all(cfg.cache_dir);
    fs::remove_all(cfg.output_dir);
    const auto res = harness::run_experiment(cfg);
    c.expect(res.complete(), std::to_string(res.failures.size()) + " failed cells");
    c.expect(res.grids.size() == 4, "expected 4 grids");
    double min_acc = 1.0;
    for (const auto &g : res.grids) {
        c.expect(g.complete(), g.key().label() + " grid incomplete");
        if (!g.has_clean()) continue;
        min_acc = std::min(min_acc, g.clean());
        c.expect(g.clean() >= 0.95, g.key().label() + " seed " + std::to_string(g.seed()) + " clean accuracy " +
                                        fmt("%.3f", g.clean()));
    }
    std::size_t max_epochs_used = 0;
    for (const auto &e : fs::directory_iterator(cfg.output_dir / "histories")) {
        const auto rows = parse_csv(read_file(e.path()));
        max_epochs_used = std::max(max_epochs_used, rows.size() - 1);
    }
    c.expect(max_epochs_used <= 500, "trained past 500 epochs");
    c.expect(res.reports.size() == 4 && res.aggregates.size() == 2, "reports missing");
    std::size_t ce_defined = 0, rce_defined = 0, cells = 0;
    for (const auto &r : res.reports) {
        for (std::size_t i = 0; i < 4; ++i) {
            ++cells;
            ce_defined += r.ce[i].has_value();
            rce_defined += r.rce[i].has_value();
        }
    }
    c.expect(res.corrupted_in_train_val == 0, "corrupted files reached train/val");
    c.note("min clean acc " + fmt("%.3f", min_acc) + ", " + std::to_string(res.grids.size()) + " grids x 25 cells, " +
           std::to_string(res.reports.size()) + " reports, CE defined " + std::to_string(ce_defined) + "/" +
           std::to_string(cells) + ", RCE defined " + std::to_string(rce_defined) + "/" + std::to_string(cells) +
           ", <= " + std::to_string(max_epochs_used) + " epochs");
    return c.outcome();
}

Outcome reproducibility(const fs::path &work, const std::string &cli) {
    Checker c;
    ensure_fixture(work);
    const auto dir = work / "repro";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const nlohmann::json cfg = {{"dataset", {{"root", (work / "fixture").string()}}},
                                {"models", {"cnn_base", "qnn_basic"}},
                                {"depths", {1}},
                                {"seeds", {3}},
                                {"train", {{"max_epochs", 60}, {"patience", 30}}},
                                {"output_dir", (dir / "results").string()},
                                {"cache_dir", (dir / "cache").string()}};
    write_file_atomic(dir / "config.json", cfg.dump(2));
    const std::vector<std::string> csvs{"accuracy.csv", "confusion.csv", "report_per_seed.csv", "report.csv",
                                        "failures.csv"};
    std::vector<std::vector<std::string>> runs;
    for (int run = 0; run < 2; ++run) {
        fs::remove_all(dir / "cache");
        const std::string cmd = "\"" + cli + "\" sweep --config \"" + (dir / "config.json").string() + "\" > \"" +
                                (dir / ("run" + std::to_string(run) + ".log")).string() + "\" 2>&1";
        const int rc = std::system(cmd.c_str());
        c.expect(rc == 0, "sweep run " + std::to_string(run + 1) + " exited with " + std::to_string(rc));
        std::vector<std::string> contents;
        for (const auto &f : csvs) contents.push_back(read_file(dir / "results" / f));
        runs.push_back(std::move(contents));
    }
    std::size_t bytes = 0;
    for (std::size_t i = 0; i < csvs.size(); ++i) {
        c.expect(runs[0][i] == runs[1][i], csvs[i] + " differs");
        bytes += runs[0][i].size();
    }
    c.note("2 sweep executions from empty caches, " + std::to_string(csvs.size()) + " CSVs (" + std::to_string(bytes) +
           " bytes) byte-identical");
    return c.outcome();
}

void tess_ordering(const fs::path &work) {
    const char *root = std::getenv("QNNROBUST_TESS_ROOT");
    if (root == nullptr || *root == '\0') {
        std::printf("SKIP  %-16s set QNNROBUST_TESS_ROOT (and optionally QNNROBUST_TESS_MANIFEST) to run\n",
                    "tess-ordering");
        return;
    }
    run("tess-ordering", 0, [&]() -> Outcome {
        harness::ExperimentConfig cfg;
        cfg.dataset_root = root;
        if (const char *m = std::getenv("QNNROBUST_TESS_MANIFEST")) cfg.manifest = m;
        cfg.models = {harness::ModelName::kCnnBase, harness::ModelName::kQnnBasic};
        cfg.depths = {15};
        cfg.seeds = {0, 1, 2};
        cfg.kinds = {corrupt::Kind::kTemporalShift};
        cfg.log_mel.resample_hz = 16000;
        cfg.output_dir = work / "tess";
        cfg.cache_dir = work / "tess_cache";
        const auto res = harness::run_experiment(cfg);
        std::vector<double> ce;
        for (const auto seed : cfg.seeds) {
            const metrics::AccuracyGrid *base = nullptr, *qnn = nullptr;
            for (const auto &g : res.grids) {
                if (g.seed() != seed) continue;
                (g.key().model == "cnn_base" ? base : qnn) = &g;
            }
            if (base && qnn) ce.push_back(metrics::corruption_error(*qnn, *base, corrupt::Kind::kTemporalShift));
        }
        if (ce.empty()) return {false, "no complete temporal-shift grids"};
        const auto ms = metrics::mean_std(ce);
        return {*ms.mean < 1.0, "QNN-Basic temporal-shift CE " + fmt("%.3f", *ms.mean) + " vs CNN-Base 1.000 over " +
                                    std::to_string(ce.size()) + " seeds"};
    });
}

} // namespace

int main(int argc, char **argv) {
    mallopt(M_MMAP_THRESHOLD, 256 << 20);
    mallopt(M_TRIM_THRESHOLD, 512 << 20);
    CLI::App app{"acceptance checks"};
    std::string work = (fs::temp_directory_path() / "qnnrobust_acceptance").string();
    std::string cli;
    std::vector<std::string> only;
    app.add_option("--work", work, "scratch directory");
    app.add_option("--cli", cli, "path to the qnnrobust executable")->required();
    app.add_option("--only", only, "run only the named criteria");
    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(spdlog::level::err);
    unsetenv("QNNROBUST_CACHE_DIR");
    fs::create_directories(work);

    auto want = [&](const std::string &n) { return only.empty() || std::find(only.begin(), only.end(), n) != only.end(); };
    if (want("simulator")) run("simulator", 60, simulator_suite);
    if (want("quanvolution")) run("quanvolution", 30, quanv_anchors);
    if (want("corruption")) run("corruption", 300, corruption_suite);
    if (want("dsp")) run("dsp", 0, dsp_suite);
    if (want("autodiff")) run("autodiff", 0, autodiff_suite);
    if (want("metrics")) run("metrics", 0, metrics_oracle);
    if (want("end-to-end")) run("end-to-end", 900, [&] { return end_to_end(work); });
    if (want("reproducibility")) run("reproducibility", 0, [&] { return reproducibility(work, cli); });
    if (want("tess-ordering")) tess_ordering(work);
    std::printf("%s: %d criterion(s) failed\n", g_failed == 0 ? "ACCEPTED" : "REJECTED", g_failed);
    return g_failed == 0 ? 0 : 1;
}
