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

#include "qnnrobust/quanv/patches.hpp"

namespace qnnrobust::quanv {

std::vector<Patch> patch_iterate(std::size_t height, std::size_t width) {
    std::vector<Patch> out;
    out.reserve(((height + 1) / 2) * ((width + 1) / 2));
    for (std::size_t r = 0; r < height; r += 2) {
        for (std::size_t c = 0; c < width; c += 2) {
            out.push_back({r, c, r / 2, c / 2, r + 1 >= height || c + 1 >= width});
        }
    }
    return out;
}

} // namespace qnnrobust::quanv
