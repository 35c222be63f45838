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
#include <cstdint>
#include <string>
#include <vector>

#include "qnnrobust/harness/config.hpp"
#include "qnnrobust/harness/manifest.hpp"
#include "qnnrobust/metrics/accuracy_grid.hpp"
#include "qnnrobust/metrics/csv_io.hpp"
#include "qnnrobust/metrics/robustness.hpp"

namespace qnnrobust::harness {

/// A cell (or a whole model when kind is "train") that did not produce a
/// value.
struct CellFailure {
    std::uint64_t seed = 0;
    metrics::ModelKey model;
    std::string kind;
    std::size_t severity = 0;
    std::string message;
};

struct ExperimentResult {
    std::vector<metrics::AccuracyGrid> grids;
    std::vector<metrics::ConfusionRecord> confusions;
    std::vector<metrics::RobustnessReport> reports;
    std::vector<metrics::AggregateReport> aggregates;
    std::vector<CellFailure> failures;
    std::vector<std::string> notes;
    /// Files fed through a corruption, and how many of those were also in
    /// a training or validation split (must be 0).
    std::size_t corrupted_files = 0;
    std::size_t corrupted_in_train_val = 0;
    std::size_t quanv_computations = 0;
    std::size_t cache_hits = 0;

    bool complete() const noexcept { return failures.empty(); }
};

/**
 * Full sweep: for every seed, split, featurize, train each variant on clean
 * audio, evaluate on the clean test split and on each corrupted copy of it,
 * then compute per-seed and aggregated robustness reports against the
 * baseline. Failing cells are recorded and skipped.
 *
 * Writes into cfg.output_dir: config.json, splits/, histories/,
 * accuracy.csv, confusion.csv, report_per_seed.csv, report.csv,
 * failures.csv and run.json.
 */
ExperimentResult run_experiment(const ExperimentConfig &cfg);

/// Dataset manifest named by the config (CSV if given, else directory).
DatasetManifest load_dataset(const ExperimentConfig &cfg);

struct ReportSet {
    std::vector<metrics::RobustnessReport> reports;
    std::vector<metrics::AggregateReport> aggregates;
    std::vector<std::string> notes;
    /// Grids left without a report because they or their baseline were
    /// incomplete.
    std::size_t skipped = 0;
};

/// Per-seed reports of every complete grid against the baseline grid of the
/// same seed, then one aggregate per model (summarize_single for a single
/// seed). Incomplete grids are skipped with a note.
ReportSet build_reports(const std::vector<metrics::AccuracyGrid> &grids, const metrics::ModelKey &baseline);

std::string failures_csv(const std::vector<CellFailure> &failures);

} // namespace qnnrobust::harness
