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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/metrics/accuracy_grid.hpp"

namespace qnnrobust::metrics {

/// A metric whose denominator vanishes; reported, never zero-filled.
class UndefinedMetric : public Error {
  public:
    using Error::Error;
};

inline constexpr double kDenominatorTolerance = 1e-12;

/// sum_s (1 - acc_s) / sum_s (1 - base_s) over severities 1..6.
double corruption_error(const AccuracyGrid &model, const AccuracyGrid &base, corrupt::Kind kind);
/// sum_s (clean - acc_s) / sum_s (base_clean - base_s). May be negative.
double relative_corruption_error(const AccuracyGrid &model, const AccuracyGrid &base, corrupt::Kind kind);
/// Mean over the four kinds; throws UndefinedMetric if any is missing.
double mean_metrics(std::span<const std::optional<double>> per_kind);

/// Per-seed robustness of one model against a baseline.
struct RobustnessReport {
    ModelKey model;
    ModelKey baseline;
    std::uint64_t seed = 0;
    double clean_accuracy = 0.0;
    std::array<std::optional<double>, 4> ce{};
    std::array<std::optional<double>, 4> rce{};
    std::optional<double> mce;
    std::optional<double> rmce;
    /// One line per undefined cell.
    std::vector<std::string> notes;
};

/// Both grids must be complete and share a seed.
RobustnessReport make_report(const AccuracyGrid &model, const AccuracyGrid &base);

struct MeanStd {
    std::optional<double> mean;
    /// (n-1) denominator; undefined for a single seed.
    std::optional<double> std;
};

struct AggregateReport {
    ModelKey model;
    ModelKey baseline;
    std::size_t n_seeds = 0;
    MeanStd clean_accuracy;
    std::array<MeanStd, 4> ce{};
    std::array<MeanStd, 4> rce{};
    MeanStd mce;
    MeanStd rmce;
};

/// Sample mean and (n-1) std per cell over at least two per-seed reports of
/// the same model and baseline. A cell undefined in any seed stays undefined.
AggregateReport aggregate_seeds(std::span<const RobustnessReport> reports);
/// Single-seed summary: means are the values, every std is undefined.
AggregateReport summarize_single(const RobustnessReport &report);

MeanStd mean_std(std::span<const double> values);

} // namespace qnnrobust::metrics
