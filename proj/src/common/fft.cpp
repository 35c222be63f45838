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

#include "qnnrobust/common/fft.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>

#include <fftw3.h>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust {

namespace {
// FFTW's planner is not thread-safe; execution is.
std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct RealFft::Impl {
    double *real = nullptr;
    fftw_complex *spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (fwd != nullptr) fftw_destroy_plan(fwd);
        if (inv != nullptr) fftw_destroy_plan(inv);
        fftw_free(real);
        fftw_free(spec);
    }
};

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
    if (n < 2) {
        throw ValidationError("FFT size must be at least 2");
    }
    std::lock_guard lock(planner_mutex());
    impl_->real = fftw_alloc_real(n);
    impl_->spec = fftw_alloc_complex(n / 2 + 1);
    const int ni = static_cast<int>(n);
    // FFTW_ESTIMATE keeps plans (and therefore results) deterministic.
    impl_->fwd = fftw_plan_dft_r2c_1d(ni, impl_->real, impl_->spec, FFTW_ESTIMATE);
    impl_->inv = fftw_plan_dft_c2r_1d(ni, impl_->spec, impl_->real, FFTW_ESTIMATE);
    if (impl_->fwd == nullptr || impl_->inv == nullptr) {
        throw Error("FFTW plan creation failed");
    }
}

RealFft::~RealFft() = default;

void RealFft::forward(std::span<const double> input,
                      std::span<std::complex<double>> output) {
    if (input.size() != n_ || output.size() != bins()) {
        throw StructuralError("RealFft::forward size mismatch");
    }
    std::copy(input.begin(), input.end(), impl_->real);
    fftw_execute(impl_->fwd);
    std::memcpy(static_cast<void *>(output.data()), impl_->spec, bins() * sizeof(fftw_complex));
}

void RealFft::inverse(std::span<const std::complex<double>> input,
                      std::span<double> output) {
    if (input.size() != bins() || output.size() != n_) {
        throw StructuralError("RealFft::inverse size mismatch");
    }
    // c2r destroys its input, so it always works on the owned buffer.
    std::memcpy(impl_->spec, input.data(), bins() * sizeof(fftw_complex));
    fftw_execute(impl_->inv);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        output[i] = impl_->real[i] * scale;
    }
}

} // namespace qnnrobust
