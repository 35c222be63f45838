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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnnrobust/nn/tensor.hpp"

namespace qnnrobust::nn {

/// kCnnBase: 2x2 stride-2 conv with 4 filters + ReLU on the log-Mel image.
/// kQnn: takes a precomputed 4-channel quanvolution map directly.
enum class ModelKind : std::uint8_t { kCnnBase, kQnn };
std::string_view to_string(ModelKind k) noexcept;
ModelKind model_kind_from_string(std::string_view name);

inline constexpr std::size_t kFrontFilters = 4;
inline constexpr std::size_t kConvFilters = 32;
inline constexpr std::size_t kConvKernel = 3;
inline constexpr std::size_t kPool = 3;
inline constexpr std::size_t kHidden = 64;

struct Architecture {
    ModelKind kind = ModelKind::kQnn;
    std::size_t in_channels = 4;
    std::size_t in_height = 20;
    std::size_t in_width = 64;
    std::size_t n_classes = 2;

    static Architecture cnn_base(std::size_t n_classes, std::size_t h = 40, std::size_t w = 128);
    static Architecture qnn(std::size_t n_classes, std::size_t c = 4, std::size_t h = 20,
                            std::size_t w = 64);
    std::vector<std::size_t> input_dims() const { return {in_channels, in_height, in_width}; }
    bool operator==(const Architecture &) const = default;
};

/// Per-sample shape after each stage, starting with the input. Throws
/// StructuralError if a stage would have an empty output.
std::vector<std::vector<std::size_t>> shape_chain(const Architecture &arch);

/// Named parameter tensors in a fixed order.
struct Params {
    std::vector<std::string> names;
    std::vector<Tensor> tensors;

    Tensor &get(std::string_view name);
    const Tensor &get(std::string_view name) const;
    std::size_t count() const noexcept;
    bool operator==(const Params &) const = default;
};

/// Shapes of every parameter for the architecture, all zero.
Params zero_params(const Architecture &arch);
Params zeros_like(const Params &p);
/// U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases, one derived
/// stream per tensor.
Params init_params(const Architecture &arch, std::uint64_t seed);

/// Logits [N, n_classes] for x [N, C, H, W].
Tensor forward(const Architecture &arch, const Params &params, const Tensor &x);

struct LossAndGrads {
    double loss = 0.0;
    Params grads;
};
LossAndGrads loss_and_grads(const Architecture &arch, const Params &params, const Tensor &x,
                            std::span<const int> labels);

} // namespace qnnrobust::nn
