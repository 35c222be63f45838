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
#include <vector>

namespace qnnrobust::quanv {

/// Top-left corner of one 2x2 block and its output coordinate.
struct Patch {
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t out_row = 0;
    std::size_t out_col = 0;
    /// Set when the block hangs over an odd bottom or right edge.
    bool padded = false;
};

/// Row-major, stride-2, non-overlapping 2x2 blocks covering an H x W grid.
std::vector<Patch> patch_iterate(std::size_t height, std::size_t width);

} // namespace qnnrobust::quanv
