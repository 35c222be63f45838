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
#include <span>
#include <vector>

namespace qnnrobust::metrics {

/// Row = true label, column = predicted label.
struct ConfusionMatrix {
    std::size_t n_classes = 0;
    std::vector<std::size_t> counts;

    std::size_t at(std::size_t truth, std::size_t pred) const { return counts[truth * n_classes + pred]; }
    std::size_t total() const;
    std::size_t row_sum(std::size_t truth) const;
    double accuracy() const;
    /// Diagonal over row sum; NaN for an empty row.
    std::vector<double> per_class_accuracy() const;
};

ConfusionMatrix confusion(std::span<const int> preds, std::span<const int> labels, std::size_t n_classes);

} // namespace qnnrobust::metrics
