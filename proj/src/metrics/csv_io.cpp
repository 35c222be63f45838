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

#include "qnnrobust/metrics/csv_io.hpp"

#include <map>

#include "qnnrobust/common/csv.hpp"
#include "qnnrobust/common/error.hpp"

namespace qnnrobust::metrics {
namespace {

constexpr const char *kSpan = "1-6";

CsvRow key_fields(const std::string &seed, const ModelKey &k) {
    return {seed, k.model, k.circuit_template, std::to_string(k.depth)};
}

std::size_t parse_size(const std::string &s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-') throw FormatError("not a count: '" + s + "'");
    return std::size_t(v);
}

} // namespace

std::string accuracy_csv(std::span<const AccuracyGrid> grids) {
    std::string out = "seed,model,template,depth,kind,severity,accuracy\n";
    for (const auto &g : grids) {
        const auto seed = std::to_string(g.seed());
        if (g.has_clean()) {
            auto row = key_fields(seed, g.key());
            row.insert(row.end(), {"clean", "0", format_double(g.clean())});
            out += csv_line(row);
        }
        for (auto kind : corrupt::kAllKinds) {
            for (std::size_t s = 1; s <= corrupt::kMaxSeverity; ++s) {
                if (!g.has(kind, s)) continue;
                auto row = key_fields(seed, g.key());
                row.insert(row.end(), {std::string(corrupt::to_string(kind)), std::to_string(s),
                                       format_double(g.at(kind, s))});
                out += csv_line(row);
            }
        }
    }
    return out;
}

std::vector<AccuracyGrid> parse_accuracy_csv(const std::string &text) {
    const auto rows = parse_csv(text);
    if (rows.empty() || rows[0] != CsvRow{"seed", "model", "template", "depth", "kind", "severity", "accuracy"}) {
        throw FormatError("accuracy CSV header mismatch");
    }
    std::vector<AccuracyGrid> grids;
    std::map<std::pair<std::uint64_t, ModelKey>, std::size_t> index;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &r = rows[i];
        if (r.size() != 7) throw FormatError("accuracy CSV row " + std::to_string(i) + " has " + std::to_string(r.size()) + " fields");
        const std::uint64_t seed = parse_size(r[0]);
        ModelKey key{r[1], r[2], parse_size(r[3])};
        auto [it, inserted] = index.try_emplace({seed, key}, grids.size());
        if (inserted) grids.emplace_back(key, seed);
        auto &g = grids[it->second];
        const double acc = parse_double(r[6]);
        if (r[4] == "clean") {
            g.set_clean(acc);
        } else {
            g.set(corrupt::kind_from_string(r[4]), parse_size(r[5]), acc);
        }
    }
    return grids;
}

std::string report_csv(std::span<const RobustnessReport> reports) {
    std::string out = "seed,model,template,depth,kind,severity,baseline,clean_accuracy,CE,RCE\n";
    for (const auto &r : reports) {
        const auto seed = std::to_string(r.seed);
        for (std::size_t i = 0; i < 4; ++i) {
            auto row = key_fields(seed, r.model);
            row.insert(row.end(), {std::string(corrupt::to_string(corrupt::kAllKinds[i])), kSpan, r.baseline.label(),
                                   format_double(r.clean_accuracy), format_optional(r.ce[i]), format_optional(r.rce[i])});
            out += csv_line(row);
        }
        auto row = key_fields(seed, r.model);
        row.insert(row.end(), {"mean", kSpan, r.baseline.label(), format_double(r.clean_accuracy),
                               format_optional(r.mce), format_optional(r.rmce)});
        out += csv_line(row);
    }
    return out;
}

std::string aggregate_csv(std::span<const AggregateReport> reports) {
    std::string out = "seed,model,template,depth,kind,severity,baseline,n_seeds,clean_acc_mean,clean_acc_std,"
                      "CE_mean,CE_std,RCE_mean,RCE_std\n";
    auto emit = [&](const AggregateReport &a, const std::string &kind, const MeanStd &ce, const MeanStd &rce) {
        auto row = key_fields("all", a.model);
        row.insert(row.end(), {kind, kSpan, a.baseline.label(), std::to_string(a.n_seeds),
                               format_optional(a.clean_accuracy.mean), format_optional(a.clean_accuracy.std),
                               format_optional(ce.mean), format_optional(ce.std), format_optional(rce.mean),
                               format_optional(rce.std)});
        out += csv_line(row);
    };
    for (const auto &a : reports) {
        for (std::size_t i = 0; i < 4; ++i) emit(a, std::string(corrupt::to_string(corrupt::kAllKinds[i])), a.ce[i], a.rce[i]);
        emit(a, "mean", a.mce, a.rmce);
    }
    return out;
}

std::string confusion_csv(std::span<const ConfusionRecord> records) {
    std::string out = "seed,model,template,depth,kind,severity,true_label,pred_label,count\n";
    for (const auto &c : records) {
        for (std::size_t t = 0; t < c.matrix.n_classes; ++t) {
            for (std::size_t p = 0; p < c.matrix.n_classes; ++p) {
                auto row = key_fields(std::to_string(c.seed), c.model);
                row.insert(row.end(), {c.kind, std::to_string(c.severity), std::to_string(t), std::to_string(p),
                                       std::to_string(c.matrix.at(t, p))});
                out += csv_line(row);
            }
        }
    }
    return out;
}

} // namespace qnnrobust::metrics
