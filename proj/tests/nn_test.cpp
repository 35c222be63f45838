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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/nn/adam.hpp"
#include "qnnrobust/nn/checkpoint.hpp"
#include "qnnrobust/nn/layers.hpp"
#include "qnnrobust/nn/model.hpp"
#include "qnnrobust/nn/train.hpp"

namespace qnnrobust::nn {
namespace {

constexpr double kH = 1e-5;
constexpr double kGradTol = 1e-6;

Tensor random_tensor(std::vector<std::size_t> dims, std::uint64_t seed, double lo = -1, double hi = 1) {
    Tensor t(std::move(dims));
    CounterRng rng(seed);
    for (auto &v : t.data) v = rng.uniform(lo, hi);
    return t;
}

double dot(const Tensor &a, const Tensor &b) {
    double s = 0;
    for (std::size_t i = 0; i < a.numel(); ++i) s += a.data[i] * b.data[i];
    return s;
}

double rel_error(double analytic, double numeric) {
    return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-8});
}

// Probes `count` random coordinates of `target` with central differences of
// the scalar `loss`, comparing against `grad`.
void check_gradient(Tensor &target, const Tensor &grad, const std::function<double()> &loss,
                    std::uint64_t seed, const char *what, std::size_t count = 12) {
    ASSERT_EQ(target.dims, grad.dims) << what;
    CounterRng rng(seed);
    for (std::size_t probe = 0; probe < count; ++probe) {
        const std::size_t i = rng.below(target.numel());
        const double saved = target.data[i];
        target.data[i] = saved + kH;
        const double up = loss();
        target.data[i] = saved - kH;
        const double down = loss();
        target.data[i] = saved;
        const double numeric = (up - down) / (2 * kH);
        EXPECT_LT(rel_error(grad.data[i], numeric), kGradTol)
            << what << " index " << i << " analytic " << grad.data[i] << " numeric " << numeric;
    }
}

// Direct nested-loop cross-correlation.
Tensor conv_oracle(const Tensor &x, const Tensor &w, const Tensor &b, std::size_t s) {
    const std::size_t n = x.dim(0), c = x.dim(1), h = x.dim(2), wd = x.dim(3), f = w.dim(0), k = w.dim(2);
    const std::size_t oh = (h - k) / s + 1, ow = (wd - k) / s + 1;
    Tensor y({n, f, oh, ow});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t o = 0; o < f; ++o)
            for (std::size_t i = 0; i < oh; ++i)
                for (std::size_t j = 0; j < ow; ++j) {
                    double acc = b.data[o];
                    for (std::size_t ch = 0; ch < c; ++ch)
                        for (std::size_t p = 0; p < k; ++p)
                            for (std::size_t q = 0; q < k; ++q)
                                acc += x.data[((a * c + ch) * h + i * s + p) * wd + j * s + q] *
                                       w.data[((o * c + ch) * k + p) * k + q];
                    y.data[((a * f + o) * oh + i) * ow + j] = acc;
                }
    return y;
}

TEST(Conv2d, Anchors) {
    const Tensor x = random_tensor({1, 1, 5, 7}, 1);
    Tensor w({1, 1, 1, 1}, 1.0);
    EXPECT_EQ(conv2d_forward(x, w, Tensor({1}), 1), x);

    Tensor x2({1, 1, 2, 2});
    x2.data = {1, 2, 3, 4};
    Tensor k({1, 1, 2, 2});
    k.data = {1, 0, 0, 1};
    const auto y = conv2d_forward(x2, k, Tensor({1}), 2);
    EXPECT_EQ(y.dims, (std::vector<std::size_t>{1, 1, 1, 1}));
    EXPECT_EQ(y.data[0], 5.0);
}

TEST(Conv2d, MatchesDirectLoopOracle) {
    for (std::size_t stride : {1ul, 2ul}) {
        const auto x = random_tensor({3, 4, 9, 11}, 2), w = random_tensor({5, 4, 3, 3}, 3), b = random_tensor({5}, 4);
        const auto y = conv2d_forward(x, w, b, stride), ref = conv_oracle(x, w, b, stride);
        ASSERT_EQ(y.dims, ref.dims);
        for (std::size_t i = 0; i < y.numel(); ++i) EXPECT_NEAR(y.data[i], ref.data[i], 1e-12);
    }
    EXPECT_THROW(conv2d_forward(random_tensor({1, 2, 4, 4}, 1), random_tensor({1, 3, 2, 2}, 1), Tensor({1}), 1),
                 StructuralError);
    EXPECT_THROW(conv2d_forward(random_tensor({1, 1, 2, 2}, 1), random_tensor({1, 1, 3, 3}, 1), Tensor({1}), 1),
                 StructuralError);
}

TEST(Conv2d, GradientsMatchFiniteDifferences) {
    for (std::size_t stride : {1ul, 2ul}) {
        auto x = random_tensor({2, 3, 8, 9}, 5), w = random_tensor({4, 3, 3, 3}, 6), b = random_tensor({4}, 7);
        const auto r = random_tensor(conv2d_forward(x, w, b, stride).dims, 8);
        auto loss = [&] { return dot(conv2d_forward(x, w, b, stride), r); };
        const auto g = conv2d_backward(x, w, r, stride, true);
        check_gradient(x, g.dx, loss, 11, "conv dx");
        check_gradient(w, g.dw, loss, 12, "conv dw");
        check_gradient(b, g.db, loss, 13, "conv db");
    }
}

TEST(MaxPool, ShapesAndConstant) {
    const Tensor c({1, 2, 7, 8}, 0.25);
    const auto r = maxpool_forward(c);
    EXPECT_EQ(r.y.dims, (std::vector<std::size_t>{1, 2, 2, 2}));
    for (double v : r.y.data) EXPECT_EQ(v, 0.25);
    EXPECT_EQ(maxpool_forward(Tensor({1, 32, 20, 64})).y.dims, (std::vector<std::size_t>{1, 32, 6, 21}));
    EXPECT_THROW(maxpool_forward(Tensor({1, 1, 2, 5})), StructuralError);
}

TEST(MaxPool, GradientRoutesToArgmax) {
    auto x = random_tensor({2, 3, 9, 10}, 21);
    const auto fwd = maxpool_forward(x);
    const auto r = random_tensor(fwd.y.dims, 22);
    const auto dx = maxpool_backward(r, fwd.argmax, x.dims);
    std::size_t nonzero = 0;
    for (double v : dx.data) nonzero += v != 0.0;
    EXPECT_EQ(nonzero, fwd.y.numel());
    check_gradient(x, dx, [&] { return dot(maxpool_forward(x).y, r); }, 23, "pool dx", 40);
}

TEST(Activations, GradientsMatchFiniteDifferences) {
    auto x = random_tensor({3, 17}, 31);
    const auto r = random_tensor({3, 17}, 32);
    check_gradient(x, relu_backward(relu_forward(x), r), [&] { return dot(relu_forward(x), r); }, 33, "relu");
    check_gradient(x, tanh_backward(tanh_forward(x), r), [&] { return dot(tanh_forward(x), r); }, 34, "tanh");
}

TEST(Dense, GradientsMatchFiniteDifferences) {
    auto x = random_tensor({4, 13}, 41), w = random_tensor({6, 13}, 42), b = random_tensor({6}, 43);
    const auto r = random_tensor({4, 6}, 44);
    auto loss = [&] { return dot(dense_forward(x, w, b), r); };
    const auto g = dense_backward(x, w, r);
    check_gradient(x, g.dx, loss, 45, "dense dx");
    check_gradient(w, g.dw, loss, 46, "dense dw");
    check_gradient(b, g.db, loss, 47, "dense db");
}

TEST(CrossEntropy, UniformLogitsGiveLogK) {
    for (std::size_t k : {2ul, 7ul}) {
        const std::vector<int> labels{0, 1, 1, 0};
        const auto r = softmax_cross_entropy(Tensor({4, k}, 0.3), labels);
        EXPECT_NEAR(r.loss, std::log(double(k)), 1e-12);
    }
    EXPECT_NEAR(softmax_cross_entropy(Tensor({1, 2}), std::vector<int>{1}).loss, 0.6931, 1e-4);
}

TEST(CrossEntropy, GradientAndMargin) {
    auto z = random_tensor({5, 7}, 51, -3, 3);
    const std::vector<int> labels{0, 6, 3, 3, 1};
    const auto r = softmax_cross_entropy(z, labels);
    check_gradient(z, r.dlogits, [&] { return softmax_cross_entropy(z, labels).loss; }, 52, "ce");
    double prev = INFINITY;
    for (double m : {0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
        Tensor logits({1, 2});
        logits.data = {m, -m};
        const double l = softmax_cross_entropy(logits, std::vector<int>{0}).loss;
        EXPECT_LT(l, prev);
        prev = l;
    }
    EXPECT_GT(prev, 0.0);
    EXPECT_LT(prev, 1e-30);
    EXPECT_THROW(softmax_cross_entropy(Tensor({1, 2}), std::vector<int>{2}), ValidationError);
    EXPECT_THROW(softmax_cross_entropy(Tensor({1, 2}), std::vector<int>{-1}), ValidationError);
}

TEST(Model, ShapeChainAndParameterCount) {
    const auto chain = shape_chain(Architecture::qnn(7));
    const std::vector<std::vector<std::size_t>> want{{4, 20, 64}, {32, 18, 62}, {32, 6, 20}, {3840}, {64}, {7}};
    EXPECT_EQ(chain, want);
    const auto base = shape_chain(Architecture::cnn_base(2));
    EXPECT_EQ(base[0], (std::vector<std::size_t>{1, 40, 128}));
    EXPECT_EQ(base[1], (std::vector<std::size_t>{4, 20, 64}));
    EXPECT_EQ(base[3], (std::vector<std::size_t>{32, 6, 20}));
    EXPECT_EQ(zero_params(Architecture::qnn(2)).count(), 32u * 36 + 32 + 64u * 3840 + 64 + 2 * 64 + 2);
    EXPECT_EQ(zero_params(Architecture::cnn_base(2)).count(),
              4u * 4 + 4 + 32u * 36 + 32 + 64u * 3840 + 64 + 2 * 64 + 2);
    EXPECT_THROW(shape_chain(Architecture::qnn(2, 4, 4, 4)), StructuralError);
}

TEST(Model, ForwardAnchors) {
    const auto arch = Architecture::qnn(7);
    const auto logits = forward(arch, zero_params(arch), Tensor({2, 4, 20, 64}));
    EXPECT_EQ(logits.dims, (std::vector<std::size_t>{2, 7}));
    for (double v : logits.data) EXPECT_EQ(v, 0.0);
    const auto p = init_params(arch, 9);
    const auto x = random_tensor({3, 4, 20, 64}, 10);
    EXPECT_EQ(forward(arch, p, x), forward(arch, p, x));
    EXPECT_EQ(init_params(arch, 9), p);
    EXPECT_NE(init_params(arch, 10), p);
    EXPECT_THROW(forward(arch, p, Tensor({1, 4, 20, 63})), StructuralError);
    const auto &w = p.get("fc1.weight");
    const double bound = 1 / std::sqrt(3840.0);
    for (double v : w.data) ASSERT_LE(std::abs(v), bound);
}

// Smallest distance of any ReLU pre-activation from zero, or of any pooled
// maximum from its runner-up. Central differences are only meaningful when
// this exceeds what a probe step can move.
double kink_margin(const Architecture &arch, const Params &p, const Tensor &x) {
    double margin = INFINITY;
    auto relu_margin = [&](const Tensor &pre) {
        for (double v : pre.data) margin = std::min(margin, std::abs(v));
        return relu_forward(pre);
    };
    Tensor in = x;
    if (arch.kind == ModelKind::kCnnBase) {
        in = relu_margin(conv2d_forward(x, p.get("front.weight"), p.get("front.bias"), 2));
    }
    const Tensor c = relu_margin(conv2d_forward(in, p.get("conv.weight"), p.get("conv.bias"), 1));
    const std::size_t h = c.dim(2), w = c.dim(3);
    for (std::size_t pl = 0; pl < c.dim(0) * c.dim(1); ++pl) {
        for (std::size_t i = 0; i + kPool <= h; i += kPool) {
            for (std::size_t j = 0; j + kPool <= w; j += kPool) {
                std::vector<double> win;
                for (std::size_t a = 0; a < kPool; ++a)
                    for (std::size_t b = 0; b < kPool; ++b) win.push_back(c.data[(pl * h + i + a) * w + j + b]);
                std::sort(win.rbegin(), win.rend());
                if (win[0] > 0) margin = std::min(margin, win[0] - win[1]);
            }
        }
    }
    return margin;
}

TEST(Model, FullGradientsMatchFiniteDifferences) {
    // Reduced spatial size so a probe point clear of every ReLU and max kink
    // exists; the chain of layers is the same as at full size.
    for (auto arch : {Architecture::qnn(3, 4, 5, 8), Architecture::cnn_base(3, 10, 16)}) {
        Params params;
        Tensor x;
        std::uint64_t seed = 60;
        for (;; ++seed) {
            params = init_params(arch, seed);
            x = random_tensor({1, arch.in_channels, arch.in_height, arch.in_width}, seed + 1000, 0, 1);
            if (kink_margin(arch, params, x) > 2e-4) break;
        }
        const std::vector<int> labels{2};
        const auto lg = loss_and_grads(arch, params, x, labels);
        EXPECT_NEAR(lg.loss, softmax_cross_entropy(forward(arch, params, x), labels).loss, 1e-15);
        for (std::size_t i = 0; i < params.names.size(); ++i) {
            check_gradient(params.tensors[i], lg.grads.tensors[i],
                           [&] { return softmax_cross_entropy(forward(arch, params, x), labels).loss; }, seed + i,
                           params.names[i].c_str());
        }
    }
}

TEST(Adam, ClosedFormSteps) {
    Params p;
    p.names = {"w"};
    p.tensors = {Tensor({3})};
    p.tensors[0].data = {0.0, 0.0, 0.5};
    Params g = zeros_like(p);
    g.tensors[0].data = {0.0, 1.0, -0.2};
    const AdamConfig cfg;
    auto state = AdamState::for_params(p);
    adam_step(p, g, state, cfg);
    EXPECT_EQ(p.tensors[0].data[0], 0.0);
    EXPECT_NEAR(p.tensors[0].data[1], -cfg.lr / (1 + cfg.eps), 1e-15 * cfg.lr);
    EXPECT_NEAR(p.tensors[0].data[1], -cfg.lr, 1e-7 * cfg.lr);
    adam_step(p, g, state, cfg);

    // Scalar reference for the third coordinate, coupled L2.
    double w = 0.5, m = 0, v = 0;
    for (int t = 1; t <= 2; ++t) {
        const double gj = -0.2 + 1e-2 * w;
        m = 0.9 * m + 0.1 * gj;
        v = 0.999 * v + 0.001 * gj * gj;
        const double mh = m / (1 - std::pow(0.9, t)), vh = v / (1 - std::pow(0.999, t));
        w -= 1e-5 * mh / (std::sqrt(vh) + 1e-8);
    }
    EXPECT_NEAR(p.tensors[0].data[2], w, 1e-15);
    EXPECT_EQ(state.t, 2u);
}

TEST(Adam, DecoupledDecay) {
    Params p;
    p.names = {"w"};
    p.tensors = {Tensor({1}, 1.0)};
    auto state = AdamState::for_params(p);
    AdamConfig cfg;
    cfg.decoupled = true;
    adam_step(p, zeros_like(p), state, cfg);
    EXPECT_DOUBLE_EQ(p.tensors[0].data[0], 1.0 - cfg.lr * cfg.weight_decay);
}

TEST(EarlyStopping, StrictImprovementResetsPatience) {
    EarlyStopping s(3);
    EXPECT_FALSE(s.update(1.0));
    EXPECT_FALSE(s.update(1.0)); // equal is not an improvement
    EXPECT_FALSE(s.update(1.1));
    EXPECT_FALSE(s.update(0.9)); // reset
    EXPECT_TRUE(s.improved());
    EXPECT_FALSE(s.update(0.95));
    EXPECT_FALSE(s.update(0.9));
    EXPECT_TRUE(s.update(0.9));
    EXPECT_EQ(s.best(), 0.9);
}

// Two classes whose feature maps differ in mean level.
Dataset toy(const Architecture &arch, std::size_t n, std::uint64_t seed) {
    Dataset d;
    d.sample_dims = arch.input_dims();
    CounterRng rng(seed);
    std::vector<double> sample(product(d.sample_dims));
    for (std::size_t i = 0; i < n; ++i) {
        const int label = int(i % 2);
        for (auto &v : sample) v = std::clamp(0.5 + (label ? 0.15 : -0.15) + 0.1 * rng.normal(), 0.0, 1.0);
        d.add(sample, label);
    }
    return d;
}

TEST(Train, SeparableToyReachesFullAccuracy) {
    for (auto arch : {Architecture::qnn(2), Architecture::cnn_base(2)}) {
        const auto tr = toy(arch, 40, 1), va = toy(arch, 20, 2);
        TrainConfig cfg;
        cfg.max_epochs = 200;
        cfg.seed = 3;
        std::size_t first_perfect = 0;
        const auto r = train(arch, tr, va, cfg, [&](const EpochRecord &e) {
            if (!first_perfect && e.val_accuracy == 1.0) first_perfect = e.epoch;
            return first_perfect != 0;
        });
        EXPECT_GT(first_perfect, 0u) << to_string(arch.kind);
        EXPECT_LE(r.history.size(), cfg.max_epochs);
        double best = INFINITY;
        for (const auto &e : r.history) best = std::min(best, e.val_loss);
        EXPECT_EQ(r.best_val_loss, best);
        EXPECT_EQ(evaluate(arch, r.params, va).loss, best);
        EXPECT_EQ(r.history[r.best_epoch - 1].val_loss, best);
    }
}

TEST(Train, LossDecreasesOverFirstTenEpochs) {
    for (auto arch : {Architecture::qnn(2), Architecture::cnn_base(2)}) {
        double first = 0, tenth = 0;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            TrainConfig cfg;
            cfg.max_epochs = 10;
            cfg.patience = 9;
            cfg.seed = seed;
            const auto r = train(arch, toy(arch, 40, 10 + seed), toy(arch, 10, 20 + seed), cfg);
            ASSERT_EQ(r.history.size(), 10u);
            first += r.history.front().train_loss;
            tenth += r.history.back().train_loss;
        }
        EXPECT_LE(tenth, first) << to_string(arch.kind);
    }
}

TEST(Train, DeterministicAndValidated) {
    const auto arch = Architecture::qnn(2);
    const auto tr = toy(arch, 20, 1), va = toy(arch, 10, 2);
    TrainConfig cfg;
    cfg.max_epochs = 3;
    cfg.patience = 2;
    const auto a = train(arch, tr, va, cfg), b = train(arch, tr, va, cfg);
    EXPECT_EQ(a.params, b.params);
    EXPECT_EQ(a.history.size(), b.history.size());
    EXPECT_THROW(train(arch, Dataset{arch.input_dims(), {}, {}}, va, cfg), ValidationError);
    cfg.patience = 3;
    EXPECT_THROW(train(arch, tr, va, cfg), ValidationError);
    cfg.patience = 2;
    auto bad = tr;
    bad.values[5] = NAN;
    EXPECT_THROW(train(arch, bad, va, cfg), TrainingDiverged);
}

TEST(Checkpoint, RoundTrip) {
    const auto arch = Architecture::cnn_base(7);
    Checkpoint c{arch, init_params(arch, 4), 12, 0.25};
    const auto path = std::filesystem::temp_directory_path() / "qnnrobust_ckpt_rt.bin";
    save_checkpoint(path, c);
    const auto back = load_checkpoint(path);
    EXPECT_EQ(back.arch, arch);
    EXPECT_EQ(back.params, c.params);
    EXPECT_EQ(back.best_epoch, 12u);
    std::vector<EpochRecord> hist{{1, 0.7, 0.69, 0.5}, {2, 0.1 + 0.2, 1.0 / 3, 0.75}};
    save_history_csv(history_path(path), hist);
    const auto h = load_history_csv(history_path(path));
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h[1].train_loss, 0.1 + 0.2);
    EXPECT_EQ(h[1].val_loss, 1.0 / 3);
    std::filesystem::remove(path);
    std::filesystem::remove(history_path(path));
}

} // namespace
} // namespace qnnrobust::nn
