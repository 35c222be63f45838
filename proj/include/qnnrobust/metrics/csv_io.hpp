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
#include <span>
#include <string>
#include <vector>

#include "qnnrobust/metrics/accuracy_grid.hpp"
#include "qnnrobust/metrics/confusion.hpp"
#include "qnnrobust/metrics/robustness.hpp"

namespace qnnrobust::metrics {

/// Confusion matrix of one evaluation cell. kind is "clean" at severity 0.
struct ConfusionRecord {
    std::uint64_t seed = 0;
    ModelKey model;
    std::string kind;
    std::size_t severity = 0;
    ConfusionMatrix matrix;
};

// Every row carries seed, model, template, depth, kind and severity. Report
// rows span severities "1-6"; aggregated rows use seed "all". Undefined
// metrics are written as "undefined".

/// seed,model,template,depth,kind,severity,accuracy; the clean cell is
/// kind "clean", severity 0.
std::string accuracy_csv(std::span<const AccuracyGrid> grids);
std::vector<AccuracyGrid> parse_accuracy_csv(const std::string &text);

std::string report_csv(std::span<const RobustnessReport> reports);
std::string aggregate_csv(std::span<const AggregateReport> reports);
/// Long format: ...,true_label,pred_label,count.
std::string confusion_csv(std::span<const ConfusionRecord> records);

} // namespace qnnrobust::metrics
