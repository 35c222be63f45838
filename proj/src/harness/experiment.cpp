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

#include "qnnrobust/harness/experiment.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include <spdlog/spdlog.h>

#include "qnnrobust/common/csv.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"
#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/harness/cache.hpp"
#include "qnnrobust/harness/pipeline.hpp"
#include "qnnrobust/harness/split.hpp"
#include "qnnrobust/metrics/confusion.hpp"

namespace fs = std::filesystem;

namespace qnnrobust::harness {

DatasetManifest load_dataset(const ExperimentConfig &cfg) {
    auto m = cfg.manifest.empty() ? manifest_from_directory(cfg.dataset_root)
                                  : manifest_from_csv(cfg.manifest, cfg.dataset_root);
    validate_manifest(m);
    return m;
}

std::string failures_csv(const std::vector<CellFailure> &failures) {
    std::string out = "seed,model,template,depth,kind,severity,message\n";
    for (const auto &f : failures)
        out += csv_line({std::to_string(f.seed), f.model.model, f.model.circuit_template, std::to_string(f.model.depth),
                         f.kind, std::to_string(f.severity), f.message});
    return out;
}

ReportSet build_reports(const std::vector<metrics::AccuracyGrid> &grids, const metrics::ModelKey &baseline) {
    ReportSet out;
    std::vector<std::uint64_t> seeds;
    std::vector<metrics::ModelKey> models;
    for (const auto &g : grids) {
        if (std::find(seeds.begin(), seeds.end(), g.seed()) == seeds.end()) seeds.push_back(g.seed());
        if (std::find(models.begin(), models.end(), g.key()) == models.end()) models.push_back(g.key());
    }
    std::map<metrics::ModelKey, std::vector<metrics::RobustnessReport>> by_model;
    for (const auto seed : seeds) {
        const metrics::AccuracyGrid *base = nullptr;
        for (const auto &g : grids)
            if (g.seed() == seed && g.key() == baseline) base = &g;
        for (const auto &g : grids) {
            if (g.seed() != seed) continue;
            if (!g.complete() || base == nullptr || !base->complete()) {
                out.notes.push_back("seed " + std::to_string(seed) + " " + g.key().label() +
                                    ": grid or baseline incomplete; no report");
                ++out.skipped;
                continue;
            }
            auto r = metrics::make_report(g, *base);
            for (const auto &n : r.notes) out.notes.push_back("seed " + std::to_string(seed) + ": " + n);
            by_model[g.key()].push_back(r);
            out.reports.push_back(std::move(r));
        }
    }
    for (const auto &k : models) {
        auto it = by_model.find(k);
        if (it == by_model.end()) continue;
        out.aggregates.push_back(it->second.size() >= 2 ? metrics::aggregate_seeds(it->second)
                                                        : metrics::summarize_single(it->second.front()));
    }
    return out;
}

namespace {

struct CorruptCell {
    corrupt::Kind kind;
    std::size_t severity;
    std::vector<Gram> grams; // parallel to the test split
    std::optional<std::string> error;
};

struct JobOutput {
    metrics::AccuracyGrid grid;
    std::vector<metrics::ConfusionRecord> confusions;
    std::vector<CellFailure> failures;
    std::vector<nn::EpochRecord> history;
};

JobOutput run_job(const ExperimentConfig &cfg, const Cache &cache, const Featurizer &fz, const DatasetManifest &m,
                  const std::vector<int> &labels, const Split &split, const std::vector<Gram> &clean,
                  const std::vector<CorruptCell> &cells, const Variant &v, std::uint64_t seed) {
    JobOutput out;
    out.grid = metrics::AccuracyGrid(v.key(), seed);
    auto fail = [&](std::string kind, std::size_t sev, const std::string &msg) {
        spdlog::error("seed {} {} {}/{}: {}", seed, v.key().label(), kind, sev, msg);
        out.failures.push_back({seed, v.key(), std::move(kind), sev, msg});
    };
    auto pick = [&](const std::vector<std::size_t> &idx, std::vector<const Gram *> &g, std::vector<int> &l,
                    std::vector<std::string> &keys) {
        for (auto i : idx) {
            g.push_back(&clean[i]);
            l.push_back(labels[i]);
            keys.push_back(clean[i].key);
        }
    };

    const auto arch = variant_architecture(v, m.n_classes(), cfg.log_mel);
    const auto circuit = variant_circuit(v, seed);
    std::optional<TrainedModel> model;
    try {
        std::vector<const Gram *> tg, vg, sg;
        std::vector<int> tl, vl, sl;
        std::vector<std::string> tk, vk, sk;
        pick(split.train, tg, tl, tk);
        pick(split.val, vg, vl, vk);
        auto train_cfg = cfg.train;
        train_cfg.seed = derive_seed(seed, "train");
        const auto train_set = build_dataset(arch, fz, tg, tl, circuit);
        const auto val_set = build_dataset(arch, fz, vg, vl, circuit);
        model = train_cached(cache, arch, train_cfg, circuit, tk, train_set, vk, val_set);
        out.history = model->history;
        spdlog::info("seed {} {}: best epoch {} of {}, val loss {:.4f}", seed, v.key().label(),
                     model->checkpoint.best_epoch, model->history.size(), model->checkpoint.best_val_loss);
    } catch (const std::exception &e) {
        fail("train", 0, e.what());
        return out;
    }

    std::vector<int> test_labels;
    for (auto i : split.test) test_labels.push_back(labels[i]);
    auto evaluate = [&](const std::vector<const Gram *> &grams, const std::string &kind, std::size_t sev) {
        const auto data = build_dataset(arch, fz, grams, test_labels, circuit);
        const auto ev = nn::evaluate(arch, model->checkpoint.params, data);
        out.confusions.push_back({seed, v.key(), kind, sev, metrics::confusion(ev.predictions, test_labels, m.n_classes())});
        return ev.accuracy;
    };

    try {
        std::vector<const Gram *> g;
        for (auto i : split.test) g.push_back(&clean[i]);
        out.grid.set_clean(evaluate(g, "clean", 0));
    } catch (const std::exception &e) {
        fail("clean", 0, e.what());
    }
    for (const auto &c : cells) {
        const std::string kind(corrupt::to_string(c.kind));
        if (c.error) {
            fail(kind, c.severity, *c.error);
            continue;
        }
        try {
            std::vector<const Gram *> g;
            for (const auto &x : c.grams) g.push_back(&x);
            out.grid.set(c.kind, c.severity, evaluate(g, kind, c.severity));
        } catch (const std::exception &e) {
            fail(kind, c.severity, e.what());
        }
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    const auto m = load_dataset(cfg);
    const auto labels = m.label_ids();
    const auto variants = expand_variants(cfg);
    const Cache cache(effective_cache_dir(cfg));
    const Featurizer fz(cache, cfg.log_mel);

    fs::create_directories(cfg.output_dir / "splits");
    fs::create_directories(cfg.output_dir / "histories");
    write_file_atomic(cfg.output_dir / "config.json", config_to_json(cfg).dump(2) + "\n");

    spdlog::info("dataset: {} files, {} classes; {} variants x {} seeds", m.rows.size(), m.n_classes(),
                 variants.size(), cfg.seeds.size());

    ExperimentResult res;
    std::vector<Gram> clean(m.rows.size());
    std::vector<std::optional<std::string>> clean_error(m.rows.size());
    parallel_for(m.rows.size(), cfg.workers, [&](std::size_t i) {
        try {
            clean[i] = fz.clean(m.rows[i]);
        } catch (const std::exception &e) {
            clean_error[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        if (clean_error[i]) throw Error("featurize " + m.rows[i].id + ": " + *clean_error[i]);

    std::set<std::size_t> corrupted_rows;
    for (const auto seed : cfg.seeds) {
        const auto split = split_dataset(m, cfg.split, derive_seed(seed, "split"));
        write_file_atomic(cfg.output_dir / "splits" / ("seed_" + std::to_string(seed) + ".csv"), split_csv(m, split));

        // Corrupted test images are shared by every variant of this seed.
        const auto corrupt_seed = derive_seed(seed, "corrupt");
        std::vector<CorruptCell> cells;
        for (auto k : cfg.kinds)
            for (auto s : cfg.severities) cells.push_back({k, s, std::vector<Gram>(split.test.size()), std::nullopt});
        std::vector<std::optional<std::string>> errs(cells.size() * split.test.size());
        parallel_for(errs.size(), cfg.workers, [&](std::size_t job) {
            auto &c = cells[job / split.test.size()];
            const auto t = job % split.test.size();
            const auto &row = m.rows[split.test[t]];
            try {
                c.grams[t] = fz.corrupted(
                    row, {c.kind, c.severity, corrupt::file_seed(corrupt_seed, row.id, c.kind, c.severity)});
            } catch (const std::exception &e) {
                errs[job] = row.id + ": " + e.what();
            }
        });
        for (std::size_t job = 0; job < errs.size(); ++job) {
            auto &c = cells[job / split.test.size()];
            if (errs[job] && !c.error) c.error = *errs[job];
        }
        corrupted_rows.insert(split.test.begin(), split.test.end());
        std::set<std::size_t> train_val(split.train.begin(), split.train.end());
        train_val.insert(split.val.begin(), split.val.end());
        for (auto i : split.test) res.corrupted_in_train_val += train_val.count(i);

        std::vector<JobOutput> outs(variants.size());
        parallel_for(variants.size(), cfg.workers, [&](std::size_t j) {
            outs[j] = run_job(cfg, cache, fz, m, labels, split, clean, cells, variants[j], seed);
        });
        for (std::size_t j = 0; j < variants.size(); ++j) {
            auto &o = outs[j];
            nn::save_history_csv(cfg.output_dir / "histories" /
                                     ("seed_" + std::to_string(seed) + "_" + variants[j].slug() + ".csv"),
                                 o.history);
            res.grids.push_back(std::move(o.grid));
            for (auto &c : o.confusions) res.confusions.push_back(std::move(c));
            for (auto &f : o.failures) res.failures.push_back(std::move(f));
        }
    }
    res.corrupted_files = corrupted_rows.size();
    if (res.corrupted_in_train_val != 0)
        throw Error("audit failed: corrupted files overlap the training/validation splits");

    const auto baseline_it = std::find_if(variants.begin(), variants.end(),
                                          [&](const Variant &v) { return v.name == cfg.baseline; });
    if (baseline_it == variants.end()) {
        res.notes.push_back("baseline " + std::string(to_string(cfg.baseline)) + " not in the model list; no reports");
    } else {
        auto rs = build_reports(res.grids, baseline_it->key());
        res.reports = std::move(rs.reports);
        res.aggregates = std::move(rs.aggregates);
        res.notes.insert(res.notes.end(), rs.notes.begin(), rs.notes.end());
    }

    res.quanv_computations = fz.quanv_computations();
    res.cache_hits = cache.hits();

    write_file_atomic(cfg.output_dir / "accuracy.csv", metrics::accuracy_csv(res.grids));
    write_file_atomic(cfg.output_dir / "confusion.csv", metrics::confusion_csv(res.confusions));
    write_file_atomic(cfg.output_dir / "report_per_seed.csv", metrics::report_csv(res.reports));
    write_file_atomic(cfg.output_dir / "report.csv", metrics::aggregate_csv(res.aggregates));
    write_file_atomic(cfg.output_dir / "failures.csv", failures_csv(res.failures));
    nlohmann::json run = {{"status", res.complete() ? "complete" : "partial"},
                          {"grids", res.grids.size()},
                          {"failures", res.failures.size()},
                          {"reports", res.reports.size()},
                          {"notes", res.notes},
                          {"audit",
                           {{"corrupted_files", res.corrupted_files},
                            {"corrupted_in_train_val", res.corrupted_in_train_val}}}};
    write_file_atomic(cfg.output_dir / "run.json", run.dump(2) + "\n");
    for (const auto &n : res.notes) spdlog::warn("{}", n);
    spdlog::info("sweep {}: {} grids, {} failures", res.complete() ? "complete" : "partial", res.grids.size(),
                 res.failures.size());
    return res;
}

} // namespace qnnrobust::harness
