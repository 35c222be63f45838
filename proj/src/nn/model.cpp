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

#include "qnnrobust/nn/model.hpp"

#include <cmath>
#include <optional>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/nn/layers.hpp"

namespace qnnrobust::nn {
namespace {

constexpr std::size_t kFrontKernel = 2;
constexpr std::size_t kFrontStride = 2;

struct Activations {
    Tensor front; // post-ReLU, cnn_base only
    Tensor conv;  // post-ReLU
    PoolResult pool;
    Tensor flat;
    Tensor hidden; // post-tanh
    Tensor logits;
};

Activations run_forward(const Architecture &arch, const Params &p, const Tensor &x) {
    const std::vector<std::size_t> want{x.dims.empty() ? 0 : x.dims[0], arch.in_channels, arch.in_height,
                                        arch.in_width};
    if (x.dims != want) {
        throw StructuralError("model input " + shape_string(x.dims) + ", expected " + shape_string(want));
    }
    Activations a;
    const Tensor *tail_in = &x;
    if (arch.kind == ModelKind::kCnnBase) {
        a.front = relu_forward(conv2d_forward(x, p.get("front.weight"), p.get("front.bias"), kFrontStride));
        tail_in = &a.front;
    }
    a.conv = relu_forward(conv2d_forward(*tail_in, p.get("conv.weight"), p.get("conv.bias"), 1));
    a.pool = maxpool_forward(a.conv, kPool, kPool);
    a.flat = a.pool.y;
    a.flat.dims = {x.dims[0], a.pool.y.numel() / x.dims[0]};
    a.hidden = tanh_forward(dense_forward(a.flat, p.get("fc1.weight"), p.get("fc1.bias")));
    a.logits = dense_forward(a.hidden, p.get("fc2.weight"), p.get("fc2.bias"));
    return a;
}

} // namespace

std::string_view to_string(ModelKind k) noexcept { return k == ModelKind::kCnnBase ? "cnn_base" : "qnn"; }

ModelKind model_kind_from_string(std::string_view name) {
    if (name == "cnn_base") return ModelKind::kCnnBase;
    if (name == "qnn") return ModelKind::kQnn;
    throw ValidationError("unknown model kind '" + std::string(name) + "'");
}

Architecture Architecture::cnn_base(std::size_t n_classes, std::size_t h, std::size_t w) {
    return {ModelKind::kCnnBase, 1, h, w, n_classes};
}

Architecture Architecture::qnn(std::size_t n_classes, std::size_t c, std::size_t h, std::size_t w) {
    return {ModelKind::kQnn, c, h, w, n_classes};
}

std::vector<std::vector<std::size_t>> shape_chain(const Architecture &a) {
    if (a.n_classes < 2) throw StructuralError("need at least 2 classes");
    auto valid = [](std::size_t in, std::size_t k, std::size_t s, const char *stage) {
        if (in < k) {
            throw StructuralError(std::string(stage) + ": spatial size " + std::to_string(in) +
                                  " smaller than kernel " + std::to_string(k));
        }
        return (in - k) / s + 1;
    };
    std::vector<std::vector<std::size_t>> chain{{a.in_channels, a.in_height, a.in_width}};
    std::size_t c = a.in_channels, h = a.in_height, w = a.in_width;
    if (a.kind == ModelKind::kCnnBase) {
        h = valid(h, kFrontKernel, kFrontStride, "front conv");
        w = valid(w, kFrontKernel, kFrontStride, "front conv");
        c = kFrontFilters;
        chain.push_back({c, h, w});
    }
    h = valid(h, kConvKernel, 1, "conv");
    w = valid(w, kConvKernel, 1, "conv");
    chain.push_back({kConvFilters, h, w});
    h = valid(h, kPool, kPool, "pool");
    w = valid(w, kPool, kPool, "pool");
    chain.push_back({kConvFilters, h, w});
    chain.push_back({kConvFilters * h * w});
    chain.push_back({kHidden});
    chain.push_back({a.n_classes});
    return chain;
}

Tensor &Params::get(std::string_view name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return tensors[i];
    }
    throw StructuralError("no parameter named '" + std::string(name) + "'");
}

const Tensor &Params::get(std::string_view name) const { return const_cast<Params *>(this)->get(name); }

std::size_t Params::count() const noexcept {
    std::size_t n = 0;
    for (const auto &t : tensors) n += t.numel();
    return n;
}

Params zero_params(const Architecture &a) {
    const auto chain = shape_chain(a);
    Params p;
    auto add = [&](std::string name, std::vector<std::size_t> dims) {
        p.names.push_back(std::move(name));
        p.tensors.emplace_back(std::move(dims));
    };
    std::size_t conv_in = a.in_channels;
    if (a.kind == ModelKind::kCnnBase) {
        add("front.weight", {kFrontFilters, a.in_channels, kFrontKernel, kFrontKernel});
        add("front.bias", {kFrontFilters});
        conv_in = kFrontFilters;
    }
    add("conv.weight", {kConvFilters, conv_in, kConvKernel, kConvKernel});
    add("conv.bias", {kConvFilters});
    const std::size_t flat = chain[chain.size() - 3][0];
    add("fc1.weight", {kHidden, flat});
    add("fc1.bias", {kHidden});
    add("fc2.weight", {a.n_classes, kHidden});
    add("fc2.bias", {a.n_classes});
    return p;
}

Params zeros_like(const Params &p) {
    Params z = p;
    for (auto &t : z.tensors) std::fill(t.data.begin(), t.data.end(), 0.0);
    return z;
}

Params init_params(const Architecture &arch, std::uint64_t seed) {
    Params p = zero_params(arch);
    for (std::size_t i = 0; i < p.names.size(); i += 2) {
        const auto &wd = p.tensors[i].dims;
        std::size_t fan_in = 1;
        for (std::size_t d = 1; d < wd.size(); ++d) fan_in *= wd[d];
        const double bound = 1.0 / std::sqrt(double(fan_in));
        for (std::size_t j : {i, i + 1}) {
            CounterRng rng(derive_seed(seed, "init/" + p.names[j]));
            for (auto &v : p.tensors[j].data) v = rng.uniform(-bound, bound);
        }
    }
    return p;
}

Tensor forward(const Architecture &arch, const Params &params, const Tensor &x) {
    return run_forward(arch, params, x).logits;
}

LossAndGrads loss_and_grads(const Architecture &arch, const Params &p, const Tensor &x,
                            std::span<const int> labels) {
    const auto a = run_forward(arch, p, x);
    auto ce = softmax_cross_entropy(a.logits, labels);
    LossAndGrads out{ce.loss, zeros_like(p)};
    auto fc2 = dense_backward(a.hidden, p.get("fc2.weight"), ce.dlogits);
    out.grads.get("fc2.weight") = std::move(fc2.dw);
    out.grads.get("fc2.bias") = std::move(fc2.db);
    auto fc1 = dense_backward(a.flat, p.get("fc1.weight"), tanh_backward(a.hidden, fc2.dx));
    out.grads.get("fc1.weight") = std::move(fc1.dw);
    out.grads.get("fc1.bias") = std::move(fc1.db);
    fc1.dx.dims = a.pool.y.dims;
    const Tensor dconv = relu_backward(a.conv, maxpool_backward(fc1.dx, a.pool.argmax, a.conv.dims));
    const bool front = arch.kind == ModelKind::kCnnBase;
    auto conv = conv2d_backward(front ? a.front : x, p.get("conv.weight"), dconv, 1, front);
    out.grads.get("conv.weight") = std::move(conv.dw);
    out.grads.get("conv.bias") = std::move(conv.db);
    if (front) {
        auto f = conv2d_backward(x, p.get("front.weight"), relu_backward(a.front, conv.dx), kFrontStride, false);
        out.grads.get("front.weight") = std::move(f.dw);
        out.grads.get("front.bias") = std::move(f.db);
    }
    return out;
}

} // namespace qnnrobust::nn
