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

#include <cstdint>
#include <limits>
#include <string_view>

namespace qnnrobust {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based generator: the i-th output is a pure function of
 * (key, i). Streams for different purposes are obtained by deriving
 * distinct keys, never by sharing a generator.
 *
 * Satisfies UniformRandomBitGenerator. The distribution helpers below are
 * implemented here rather than through <random> distributions so that draws
 * are identical across standard library implementations.
 */
class CounterRng {
  public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) noexcept : key_(mix64(key)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept {
        return mix64(key_ ^ mix64(counter_++));
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) noexcept;
    /// Uniform integer on [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept;
    /// Bernoulli trial with success probability p.
    bool bernoulli(double p) noexcept;
    /// Standard normal via Box-Muller (one value per call).
    double normal() noexcept;
    /// N(mean, stddev).
    double normal(double mean, double stddev) noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Derives a sub-seed from a master seed and a purpose tag (SHA-256 based).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

} // namespace qnnrobust
