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

#include "qnnrobust/metrics/confusion.hpp"

#include <cmath>
#include <string>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::metrics {

std::size_t ConfusionMatrix::total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
    std::size_t t = 0;
    for (std::size_t p = 0; p < n_classes; ++p) t += at(truth, p);
    return t;
}

double ConfusionMatrix::accuracy() const {
    std::size_t diag = 0;
    for (std::size_t i = 0; i < n_classes; ++i) diag += at(i, i);
    const auto t = total();
    return t ? double(diag) / double(t) : NAN;
}

std::vector<double> ConfusionMatrix::per_class_accuracy() const {
    std::vector<double> out(n_classes);
    for (std::size_t i = 0; i < n_classes; ++i) {
        const auto rs = row_sum(i);
        out[i] = rs ? double(at(i, i)) / double(rs) : NAN;
    }
    return out;
}

ConfusionMatrix confusion(std::span<const int> preds, std::span<const int> labels, std::size_t n_classes) {
    if (preds.size() != labels.size()) {
        throw ValidationError("confusion: " + std::to_string(preds.size()) + " predictions for " +
                              std::to_string(labels.size()) + " labels");
    }
    ConfusionMatrix m{n_classes, std::vector<std::size_t>(n_classes * n_classes, 0)};
    for (std::size_t i = 0; i < preds.size(); ++i) {
        for (int v : {preds[i], labels[i]}) {
            if (v < 0 || std::size_t(v) >= n_classes) {
                throw ValidationError("class index " + std::to_string(v) + " outside [0, " +
                                      std::to_string(n_classes) + ")");
            }
        }
        ++m.counts[std::size_t(labels[i]) * n_classes + std::size_t(preds[i])];
    }
    return m;
}

} // namespace qnnrobust::metrics
