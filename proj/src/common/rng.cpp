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

#include "qnnrobust/common/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qnnrobust/common/hash.hpp"

namespace qnnrobust {

double CounterRng::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
}

std::uint64_t CounterRng::below(std::uint64_t n) noexcept {
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x = next_u64();
    while (x >= limit) {
        x = next_u64();
    }
    return x % n;
}

bool CounterRng::bernoulli(double p) noexcept { return uniform() < p; }

double CounterRng::normal() noexcept {
    // u1 in (0, 1] so the logarithm stays finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::normal(double mean, double stddev) noexcept {
    return mean + stddev * normal();
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    Sha256 h;
    h.update_u64(master);
    h.update(tag);
    const auto d = h.digest();
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) {
        out |= static_cast<std::uint64_t>(d[static_cast<std::size_t>(i)])
               << (8 * i);
    }
    return out;
}

} // namespace qnnrobust
