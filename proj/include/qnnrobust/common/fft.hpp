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

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace qnnrobust {

/**
 * Real-input FFT of a fixed size backed by FFTW. A plan is created once per
 * instance under a global planner lock; `forward` and `inverse` are safe to
 * call concurrently on distinct instances.
 */
class RealFft {
  public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft &) = delete;
    RealFft &operator=(const RealFft &) = delete;

    std::size_t size() const noexcept { return n_; }
    std::size_t bins() const noexcept { return n_ / 2 + 1; }

    /// input.size() == size(), output.size() == bins(). Unnormalized.
    void forward(std::span<const double> input,
                 std::span<std::complex<double>> output);
    /// Inverse of forward, scaled by 1/n so inverse(forward(x)) == x.
    void inverse(std::span<const std::complex<double>> input,
                 std::span<double> output);

  private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

} // namespace qnnrobust
