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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qnnrobust/harness/manifest.hpp"

namespace qnnrobust::harness {

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

/**
 * Stratified shuffled split of manifest rows. Rows sharing a non-empty group
 * id stay together. Overall sizes follow largest-remainder rounding of the
 * ratios; per-class sizes are rounded to match those totals. Throws
 * ValidationError naming any class left without an item in some split.
 */
Split split_dataset(const DatasetManifest &m, const std::array<double, 3> &ratios, std::uint64_t seed);

/// file,label,split rows in manifest order.
std::string split_csv(const DatasetManifest &m, const Split &s);

} // namespace qnnrobust::harness
