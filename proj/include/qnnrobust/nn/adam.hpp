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

#include "qnnrobust/nn/model.hpp"

namespace qnnrobust::nn {

struct AdamConfig {
    double lr = 1e-5;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 1e-2;
    /// false: L2 term added to the gradient. true: decay applied to the
    /// weights directly (AdamW).
    bool decoupled = false;
};

struct AdamState {
    std::size_t t = 0;
    Params m;
    Params v;

    static AdamState for_params(const Params &p) { return {0, zeros_like(p), zeros_like(p)}; }
};

/// One bias-corrected Adam update in place; increments state.t first.
void adam_step(Params &params, const Params &grads, AdamState &state, const AdamConfig &cfg);

} // namespace qnnrobust::nn
