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
#include <string>
#include <vector>

namespace qnnrobust::nn {

/// Dense row-major tensor of up to four dimensions.
struct Tensor {
    std::vector<std::size_t> dims;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> d, double fill = 0.0);

    std::size_t numel() const noexcept { return data.size(); }
    std::size_t dim(std::size_t i) const { return dims.at(i); }
    bool operator==(const Tensor &) const = default;
};

std::size_t product(const std::vector<std::size_t> &dims) noexcept;
/// "4x20x64".
std::string shape_string(const std::vector<std::size_t> &dims);
/// Throws StructuralError with `what` if any value is NaN or infinite.
void require_finite(const Tensor &t, const std::string &what);

} // namespace qnnrobust::nn
