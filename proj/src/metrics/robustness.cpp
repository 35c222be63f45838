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

#include "qnnrobust/metrics/robustness.hpp"

#include <cmath>
#include <functional>

namespace qnnrobust::metrics {
namespace {

void require_complete(const AccuracyGrid &g, corrupt::Kind kind) {
    if (!g.complete(kind)) {
        throw ValidationError(g.key().label() + " grid incomplete for " + std::string(corrupt::to_string(kind)));
    }
}

double ratio(double num, double den, const std::string &what) {
    if (std::abs(den) <= kDenominatorTolerance) {
        throw UndefinedMetric(what + " undefined: baseline denominator is " + std::to_string(den));
    }
    return num / den;
}

std::string cell_name(const char *metric, corrupt::Kind kind) {
    return std::string(metric) + "[" + std::string(corrupt::to_string(kind)) + "]";
}

MeanStd aggregate_cell(std::span<const RobustnessReport> reports,
                       const std::function<std::optional<double>(const RobustnessReport &)> &get) {
    std::vector<double> values;
    for (const auto &r : reports) {
        const auto v = get(r);
        if (!v) return {};
        values.push_back(*v);
    }
    return mean_std(values);
}

} // namespace

double corruption_error(const AccuracyGrid &model, const AccuracyGrid &base, corrupt::Kind kind) {
    require_complete(model, kind);
    require_complete(base, kind);
    double num = 0, den = 0;
    for (std::size_t s = 1; s <= corrupt::kMaxSeverity; ++s) {
        num += 1.0 - model.at(kind, s);
        den += 1.0 - base.at(kind, s);
    }
    return ratio(num, den, cell_name("CE", kind));
}

double relative_corruption_error(const AccuracyGrid &model, const AccuracyGrid &base, corrupt::Kind kind) {
    require_complete(model, kind);
    require_complete(base, kind);
    double num = 0, den = 0;
    for (std::size_t s = 1; s <= corrupt::kMaxSeverity; ++s) {
        num += model.clean() - model.at(kind, s);
        den += base.clean() - base.at(kind, s);
    }
    return ratio(num, den, cell_name("RCE", kind));
}

double mean_metrics(std::span<const std::optional<double>> per_kind) {
    if (per_kind.size() != corrupt::kAllKinds.size()) {
        throw ValidationError("mean over " + std::to_string(per_kind.size()) + " kinds, expected 4");
    }
    double sum = 0;
    for (const auto &v : per_kind) {
        if (!v) throw UndefinedMetric("mean undefined: a per-kind component is undefined");
        sum += *v;
    }
    return sum / double(per_kind.size());
}

RobustnessReport make_report(const AccuracyGrid &model, const AccuracyGrid &base) {
    if (model.seed() != base.seed()) {
        throw ValidationError("report mixes seeds " + std::to_string(model.seed()) + " and " +
                              std::to_string(base.seed()));
    }
    if (!model.complete() || !base.complete()) {
        throw ValidationError("report needs complete grids for " + model.key().label() + " and " +
                              base.key().label());
    }
    RobustnessReport r{model.key(), base.key(), model.seed(), model.clean(), {}, {}, {}, {}, {}};
    for (std::size_t i = 0; i < corrupt::kAllKinds.size(); ++i) {
        const auto kind = corrupt::kAllKinds[i];
        try {
            r.ce[i] = corruption_error(model, base, kind);
        } catch (const UndefinedMetric &e) {
            r.notes.push_back(e.what());
        }
        try {
            r.rce[i] = relative_corruption_error(model, base, kind);
        } catch (const UndefinedMetric &e) {
            r.notes.push_back(e.what());
        }
    }
    try {
        r.mce = mean_metrics(r.ce);
    } catch (const UndefinedMetric &) {
        r.notes.push_back("mCE undefined");
    }
    try {
        r.rmce = mean_metrics(r.rce);
    } catch (const UndefinedMetric &) {
        r.notes.push_back("RmCE undefined");
    }
    return r;
}

MeanStd mean_std(std::span<const double> values) {
    if (values.empty()) return {};
    double mean = 0;
    for (double v : values) mean += v;
    mean /= double(values.size());
    if (values.size() < 2) return {mean, std::nullopt};
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / double(values.size() - 1))};
}

AggregateReport aggregate_seeds(std::span<const RobustnessReport> reports) {
    if (reports.size() < 2) {
        throw ValidationError("aggregation needs at least 2 seed reports, got " + std::to_string(reports.size()));
    }
    for (const auto &r : reports) {
        if (r.model != reports[0].model || r.baseline != reports[0].baseline) {
            throw ValidationError("cannot aggregate " + r.model.label() + " vs " + r.baseline.label() + " with " +
                                  reports[0].model.label() + " vs " + reports[0].baseline.label());
        }
    }
    AggregateReport a;
    a.model = reports[0].model;
    a.baseline = reports[0].baseline;
    a.n_seeds = reports.size();
    a.clean_accuracy = aggregate_cell(reports, [](const auto &r) { return std::optional(r.clean_accuracy); });
    for (std::size_t i = 0; i < 4; ++i) {
        a.ce[i] = aggregate_cell(reports, [i](const auto &r) { return r.ce[i]; });
        a.rce[i] = aggregate_cell(reports, [i](const auto &r) { return r.rce[i]; });
    }
    a.mce = aggregate_cell(reports, [](const auto &r) { return r.mce; });
    a.rmce = aggregate_cell(reports, [](const auto &r) { return r.rmce; });
    return a;
}

AggregateReport summarize_single(const RobustnessReport &r) {
    AggregateReport a;
    a.model = r.model;
    a.baseline = r.baseline;
    a.n_seeds = 1;
    a.clean_accuracy = {r.clean_accuracy, std::nullopt};
    for (std::size_t i = 0; i < 4; ++i) {
        a.ce[i] = {r.ce[i], std::nullopt};
        a.rce[i] = {r.rce[i], std::nullopt};
    }
    a.mce = {r.mce, std::nullopt};
    a.rmce = {r.rmce, std::nullopt};
    return a;
}

} // namespace qnnrobust::metrics
