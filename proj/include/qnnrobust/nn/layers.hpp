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
#include <span>
#include <vector>

#include "qnnrobust/nn/tensor.hpp"

namespace qnnrobust::nn {

/// Valid cross-correlation. x [N,C,H,W], w [F,C,k,k], b [F] ->
/// y [N,F,(H-k)/s+1,(W-k)/s+1].
Tensor conv2d_forward(const Tensor &x, const Tensor &w, const Tensor &b, std::size_t stride);

struct Conv2dGrads {
    Tensor dx; // empty unless requested
    Tensor dw;
    Tensor db;
};
Conv2dGrads conv2d_backward(const Tensor &x, const Tensor &w, const Tensor &dy, std::size_t stride,
                            bool need_dx);

struct PoolResult {
    Tensor y;
    /// Flat input index of each output's maximum (first one on ties).
    std::vector<std::size_t> argmax;
};
/// Max pooling over [N,C,H,W]; trailing rows and columns that do not fill a
/// window are dropped.
PoolResult maxpool_forward(const Tensor &x, std::size_t k = 3, std::size_t stride = 3);
Tensor maxpool_backward(const Tensor &dy, std::span<const std::size_t> argmax,
                        const std::vector<std::size_t> &x_dims);

Tensor relu_forward(const Tensor &x);
/// Takes the forward output.
Tensor relu_backward(const Tensor &y, const Tensor &dy);
Tensor tanh_forward(const Tensor &x);
/// Takes the forward output.
Tensor tanh_backward(const Tensor &y, const Tensor &dy);

/// x [N,in], w [out,in], b [out] -> x w^T + b.
Tensor dense_forward(const Tensor &x, const Tensor &w, const Tensor &b);
struct DenseGrads {
    Tensor dx;
    Tensor dw;
    Tensor db;
};
DenseGrads dense_backward(const Tensor &x, const Tensor &w, const Tensor &dy);

struct LossResult {
    double loss = 0.0;
    /// d(mean loss)/d logits.
    Tensor dlogits;
};
/// Mean softmax cross-entropy of logits [N,K]. Throws ValidationError for a
/// label outside [0, K).
LossResult softmax_cross_entropy(const Tensor &logits, std::span<const int> labels);

} // namespace qnnrobust::nn
