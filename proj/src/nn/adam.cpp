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

#include "qnnrobust/nn/adam.hpp"

#include <cmath>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::nn {

void adam_step(Params &params, const Params &grads, AdamState &state, const AdamConfig &cfg) {
    if (grads.names != params.names || state.m.names != params.names) {
        throw StructuralError("adam_step: parameter, gradient and state layouts differ");
    }
    ++state.t;
    const double c1 = 1.0 - std::pow(cfg.beta1, double(state.t));
    const double c2 = 1.0 - std::pow(cfg.beta2, double(state.t));
    for (std::size_t i = 0; i < params.tensors.size(); ++i) {
        auto &w = params.tensors[i].data;
        const auto &g = grads.tensors[i].data;
        auto &m = state.m.tensors[i].data;
        auto &v = state.v.tensors[i].data;
        if (g.size() != w.size()) throw StructuralError("adam_step: gradient size mismatch for " + params.names[i]);
        for (std::size_t j = 0; j < w.size(); ++j) {
            double gj = g[j];
            if (!cfg.decoupled) gj += cfg.weight_decay * w[j];
            m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * gj;
            v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * gj * gj;
            if (cfg.decoupled) w[j] -= cfg.lr * cfg.weight_decay * w[j];
            w[j] -= cfg.lr * (m[j] / c1) / (std::sqrt(v[j] / c2) + cfg.eps);
        }
    }
}

} // namespace qnnrobust::nn
