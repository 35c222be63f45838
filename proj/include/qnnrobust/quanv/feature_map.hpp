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
#include <filesystem>
#include <vector>

namespace qnnrobust::quanv {

/// Channel-major (CHW) feature tensor.
struct FeatureMap {
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> values;

    FeatureMap() = default;
    FeatureMap(std::size_t c, std::size_t h, std::size_t w)
        : channels(c), height(h), width(w), values(c * h * w, 0.0) {}

    double &at(std::size_t c, std::size_t r, std::size_t col) { return values[(c * height + r) * width + col]; }
    double at(std::size_t c, std::size_t r, std::size_t col) const {
        return values[(c * height + r) * width + col];
    }
    bool operator==(const FeatureMap &) const = default;
};

void save_feature_map(const std::filesystem::path &path, const FeatureMap &map);
FeatureMap load_feature_map(const std::filesystem::path &path);

} // namespace qnnrobust::quanv
