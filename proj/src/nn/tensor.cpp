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

#include "qnnrobust/nn/tensor.hpp"

#include <cmath>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::nn {

Tensor::Tensor(std::vector<std::size_t> d, double fill) : dims(std::move(d)), data(product(dims), fill) {}

std::size_t product(const std::vector<std::size_t> &dims) noexcept {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
}

std::string shape_string(const std::vector<std::size_t> &dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(dims[i]);
    }
    return s;
}

void require_finite(const Tensor &t, const std::string &what) {
    for (std::size_t i = 0; i < t.data.size(); ++i) {
        if (!std::isfinite(t.data[i])) {
            throw StructuralError(what + ": non-finite value at flat index " + std::to_string(i));
        }
    }
}

} // namespace qnnrobust::nn
