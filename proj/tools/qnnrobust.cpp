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

// qnnrobust command-line interface.

#include <cstdio>
#include <malloc.h>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "qnnrobust/audio/wav_io.hpp"
#include "qnnrobust/common/csv.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"
#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/corrupt/generators.hpp"
#include "qnnrobust/harness/experiment.hpp"
#include "qnnrobust/harness/fixture.hpp"
#include "qnnrobust/harness/pipeline.hpp"
#include "qnnrobust/harness/split.hpp"
#include "qnnrobust/metrics/confusion.hpp"
#include "qnnrobust/quanv/quanv_layer.hpp"

namespace fs = std::filesystem;
using namespace qnnrobust;
using namespace qnnrobust::harness;

namespace {

// Flags shared by the dataset-driven subcommands; they override the config.
struct CommonOpts {
    std::string config;
    std::string data;
    std::string manifest;
    std::string cache;
    std::vector<std::string> models;
    std::vector<std::size_t> depths;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> kinds;
    std::vector<std::size_t> severities;
    std::optional<std::size_t> max_epochs;
    std::optional<std::size_t> patience;
    std::optional<double> lr;
    std::optional<std::size_t> workers;
    std::string out;
};

void add_common(CLI::App *app, CommonOpts &o, bool sweep_flags) {
    app->add_option("--config", o.config, "JSON experiment config");
    app->add_option("--data", o.data, "dataset root (root/<label>/*.wav)");
    app->add_option("--manifest", o.manifest, "manifest CSV path,label[,group]");
    app->add_option("--cache", o.cache, "cache directory (QNNROBUST_CACHE_DIR overrides)");
    app->add_option("--max-epochs", o.max_epochs);
    app->add_option("--patience", o.patience);
    app->add_option("--lr", o.lr);
    app->add_option("--workers", o.workers);
    if (sweep_flags) {
        app->add_option("--models", o.models, "cnn_base qnn_basic qnn_strongly qnn_random");
        app->add_option("--depths", o.depths);
        app->add_option("--seeds", o.seeds);
        app->add_option("--kinds", o.kinds);
        app->add_option("--severities", o.severities);
    }
}

ExperimentConfig resolve_config(const CommonOpts &o) {
    ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
    if (!o.data.empty()) cfg.dataset_root = o.data;
    if (!o.manifest.empty()) cfg.manifest = o.manifest;
    if (!o.cache.empty()) cfg.cache_dir = o.cache;
    if (!o.models.empty()) {
        cfg.models.clear();
        for (const auto &m : o.models) cfg.models.push_back(model_name_from_string(m));
    }
    if (!o.depths.empty()) cfg.depths = o.depths;
    if (!o.seeds.empty()) cfg.seeds = o.seeds;
    if (!o.kinds.empty()) {
        cfg.kinds.clear();
        for (const auto &k : o.kinds) cfg.kinds.push_back(corrupt::kind_from_string(k));
    }
    if (!o.severities.empty()) cfg.severities = o.severities;
    if (o.max_epochs) cfg.train.max_epochs = *o.max_epochs;
    if (o.patience) cfg.train.patience = *o.patience;
    if (o.lr) cfg.train.lr = *o.lr;
    if (o.workers) cfg.workers = *o.workers;
    if (!o.out.empty()) cfg.output_dir = o.out;
    cfg.validate();
    return cfg;
}

fs::path mirror_path(const fs::path &out_dir, const std::string &id, const std::string &suffix) {
    fs::path rel(id);
    rel.replace_extension();
    return out_dir / (rel.string() + suffix);
}

struct SeedData {
    DatasetManifest manifest;
    std::vector<int> labels;
    Split split;
    std::vector<Gram> clean;
};

SeedData prepare(const ExperimentConfig &cfg, const Featurizer &fz, std::uint64_t seed) {
    SeedData d;
    d.manifest = load_dataset(cfg);
    d.labels = d.manifest.label_ids();
    d.split = split_dataset(d.manifest, cfg.split, derive_seed(seed, "split"));
    d.clean.resize(d.manifest.rows.size());
    parallel_for(d.clean.size(), cfg.workers, [&](std::size_t i) { d.clean[i] = fz.clean(d.manifest.rows[i]); });
    return d;
}

int cmd_make_fixture(const std::string &out, std::size_t count, std::uint64_t seed) {
    make_fixture(out, count, seed);
    std::printf("wrote %zu WAVs under %s\n", count, out.c_str());
    return 0;
}

int cmd_featurize(const CommonOpts &o, const std::string &model, std::size_t depth, std::uint64_t seed) {
    const auto cfg = resolve_config(o);
    const Cache cache(effective_cache_dir(cfg));
    const Featurizer fz(cache, cfg.log_mel);
    const auto m = load_dataset(cfg);
    const auto v = parse_variant(model, depth);
    const auto circuit = variant_circuit(v, seed);
    parallel_for(m.rows.size(), cfg.workers, [&](std::size_t i) {
        const auto &row = m.rows[i];
        const auto g = fz.clean(row);
        const auto dst = mirror_path(cfg.output_dir, row.id, circuit ? ".quanv.bin" : ".logmel.bin");
        fs::create_directories(dst.parent_path());
        if (!circuit) {
            audio::save_log_mel(dst, g.gram);
        } else {
            quanv::FeatureMap fm(quanv::kPatchQubits, (g.gram.values.rows() + 1) / 2, (g.gram.values.cols() + 1) / 2);
            fm.values = fz.features(g, circuit);
            quanv::save_feature_map(dst, fm);
        }
    });
    std::printf("featurized %zu files into %s\n", m.rows.size(), cfg.output_dir.string().c_str());
    return 0;
}

int cmd_corrupt(const CommonOpts &o, const std::string &kind, std::size_t severity, std::uint64_t seed) {
    const auto cfg = resolve_config(o);
    const auto m = load_dataset(cfg);
    const auto k = corrupt::kind_from_string(kind);
    require(severity <= corrupt::kMaxSeverity, "severity must lie in 0..6");
    const auto run_seed = derive_seed(seed, "corrupt");
    std::vector<std::string> lines(m.rows.size());
    parallel_for(m.rows.size(), cfg.workers, [&](std::size_t i) {
        const auto &row = m.rows[i];
        const corrupt::CorruptionSpec spec{k, severity, corrupt::file_seed(run_seed, row.id, k, severity)};
        auto w = audio::load_wav(row.path);
        const auto r = corrupt::apply(spec, w);
        const auto dst = mirror_path(cfg.output_dir, row.id, ".wav");
        fs::create_directories(dst.parent_path());
        audio::save_wav_pcm16(dst, r.waveform);
        std::string diag;
        for (const auto &d : r.diagnostics) diag += (diag.empty() ? "" : "; ") + d;
        lines[i] = csv_line({row.id, std::string(corrupt::to_string(k)), std::to_string(severity),
                             format_double(spec.value()), std::to_string(spec.seed), format_double(r.parameter), diag});
    });
    std::string sidecar = "file,kind,severity,sigma,file_seed,parameter,diagnostics\n";
    for (const auto &l : lines) sidecar += l;
    write_file_atomic(cfg.output_dir / "corruptions.csv", sidecar);
    std::printf("wrote %zu corrupted WAVs into %s\n", m.rows.size(), cfg.output_dir.string().c_str());
    return 0;
}

int cmd_train(const CommonOpts &o, const std::string &model, std::size_t depth, std::uint64_t seed,
              const std::string &ckpt) {
    const auto cfg = resolve_config(o);
    const Cache cache(effective_cache_dir(cfg));
    const Featurizer fz(cache, cfg.log_mel);
    const auto d = prepare(cfg, fz, seed);
    const auto v = parse_variant(model, depth);
    const auto arch = variant_architecture(v, d.manifest.n_classes(), cfg.log_mel);
    const auto circuit = variant_circuit(v, seed);
    std::vector<const Gram *> tg, vg;
    std::vector<int> tl, vl;
    std::vector<std::string> tk, vk;
    for (auto i : d.split.train) tg.push_back(&d.clean[i]), tl.push_back(d.labels[i]), tk.push_back(d.clean[i].key);
    for (auto i : d.split.val) vg.push_back(&d.clean[i]), vl.push_back(d.labels[i]), vk.push_back(d.clean[i].key);
    auto tc = cfg.train;
    tc.seed = derive_seed(seed, "train");
    const auto trained = train_cached(cache, arch, tc, circuit, tk, build_dataset(arch, fz, tg, tl, circuit), vk,
                                      build_dataset(arch, fz, vg, vl, circuit));
    if (fs::path(ckpt).has_parent_path()) fs::create_directories(fs::path(ckpt).parent_path());
    nn::save_history_csv(nn::history_path(ckpt), trained.history);
    nn::save_checkpoint(ckpt, trained.checkpoint);
    std::printf("%s seed %llu: best epoch %zu/%zu, val loss %.6f -> %s\n", v.key().label().c_str(),
                static_cast<unsigned long long>(seed), trained.checkpoint.best_epoch, trained.history.size(),
                trained.checkpoint.best_val_loss, ckpt.c_str());
    return 0;
}

int cmd_evaluate(const CommonOpts &o, const std::string &model, std::size_t depth, std::uint64_t seed,
                 const std::string &ckpt, const std::string &out_csv) {
    const auto cfg = resolve_config(o);
    const Cache cache(effective_cache_dir(cfg));
    const Featurizer fz(cache, cfg.log_mel);
    const auto d = prepare(cfg, fz, seed);
    const auto v = parse_variant(model, depth);
    const auto checkpoint = nn::load_checkpoint(ckpt);
    const auto arch = variant_architecture(v, d.manifest.n_classes(), cfg.log_mel);
    if (!(checkpoint.arch == arch)) throw ValidationError("checkpoint architecture does not match " + v.key().label());
    const auto circuit = variant_circuit(v, seed);
    std::vector<int> labels;
    for (auto i : d.split.test) labels.push_back(d.labels[i]);
    auto eval = [&](const std::vector<Gram> &grams) {
        std::vector<const Gram *> ptrs;
        for (const auto &g : grams) ptrs.push_back(&g);
        return nn::evaluate(arch, checkpoint.params, build_dataset(arch, fz, ptrs, labels, circuit)).accuracy;
    };
    metrics::AccuracyGrid grid(v.key(), seed);
    std::vector<Gram> clean;
    for (auto i : d.split.test) clean.push_back(d.clean[i]);
    grid.set_clean(eval(clean));
    const auto run_seed = derive_seed(seed, "corrupt");
    for (auto k : cfg.kinds)
        for (auto s : cfg.severities) {
            std::vector<Gram> grams(d.split.test.size());
            parallel_for(grams.size(), cfg.workers, [&](std::size_t t) {
                const auto &row = d.manifest.rows[d.split.test[t]];
                grams[t] = fz.corrupted(row, {k, s, corrupt::file_seed(run_seed, row.id, k, s)});
            });
            grid.set(k, s, eval(grams));
        }
    const std::vector<metrics::AccuracyGrid> grids{grid};
    const auto csv = metrics::accuracy_csv(grids);
    if (out_csv.empty()) std::cout << csv;
    else write_file_atomic(out_csv, csv);
    return 0;
}

int cmd_report(const std::string &accuracy, const std::string &baseline, const std::string &out_dir) {
    const auto grids = metrics::parse_accuracy_csv(read_file(accuracy));
    const auto base = parse_variant(baseline, 0).key();
    const auto rs = build_reports(grids, base);
    for (const auto &n : rs.notes) spdlog::warn("{}", n);
    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "report_per_seed.csv", metrics::report_csv(rs.reports));
    write_file_atomic(fs::path(out_dir) / "report.csv", metrics::aggregate_csv(rs.aggregates));
    std::printf("%zu per-seed reports, %zu aggregates -> %s\n", rs.reports.size(), rs.aggregates.size(),
                out_dir.c_str());
    return rs.skipped == 0 ? 0 : 1;
}

int cmd_sweep(const CommonOpts &o) {
    const auto cfg = resolve_config(o);
    const auto res = run_experiment(cfg);
    std::printf("%s: %zu grids, %zu reports, %zu failed cells -> %s\n", res.complete() ? "complete" : "partial",
                res.grids.size(), res.reports.size(), res.failures.size(), cfg.output_dir.string().c_str());
    return res.complete() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    // Training allocates many short-lived multi-MB buffers; keep them on the
    // heap instead of a fresh mmap per batch.
    mallopt(M_MMAP_THRESHOLD, 256 << 20);
    mallopt(M_TRIM_THRESHOLD, 512 << 20);
    CLI::App app{"Robustness benchmarking of quanvolutional audio classifiers"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "debug logging");

    std::string fixture_out;
    std::size_t fixture_count = 200;
    std::uint64_t fixture_seed = 0;
    auto *fx = app.add_subcommand("make-fixture", "write the synthetic tone/noise dataset");
    fx->add_option("--out", fixture_out)->required();
    fx->add_option("--count", fixture_count);
    fx->add_option("--seed", fixture_seed);

    CommonOpts feat_o, corr_o, train_o, eval_o, sweep_o;
    std::string model = "cnn_base", ckpt, eval_out, kind;
    std::size_t depth = 1, severity = 0;
    std::uint64_t seed = 0;

    auto *feat = app.add_subcommand("featurize", "log-Mel (and quanvolution) features per file");
    add_common(feat, feat_o, false);
    feat->add_option("--out", feat_o.out)->required();
    feat->add_option("--model", model);
    feat->add_option("--depth", depth);
    feat->add_option("--seed", seed);

    auto *corr = app.add_subcommand("corrupt", "write corrupted 16-bit WAVs plus corruptions.csv");
    add_common(corr, corr_o, false);
    corr->add_option("--out", corr_o.out)->required();
    corr->add_option("--kind", kind)->required();
    corr->add_option("--severity", severity)->required();
    corr->add_option("--seed", seed);

    auto *tr = app.add_subcommand("train", "train one model on the clean train/val split of a seed");
    add_common(tr, train_o, false);
    tr->add_option("--model", model);
    tr->add_option("--depth", depth);
    tr->add_option("--seed", seed);
    tr->add_option("--checkpoint", ckpt)->required();

    auto *ev = app.add_subcommand("evaluate", "clean and corrupted test accuracy of a checkpoint");
    add_common(ev, eval_o, true);
    ev->add_option("--model", model);
    ev->add_option("--depth", depth);
    ev->add_option("--seed", seed);
    ev->add_option("--checkpoint", ckpt)->required();
    ev->add_option("--out", eval_out, "accuracy CSV (default stdout)");

    std::string acc_csv, baseline = "cnn_base", report_out;
    auto *rep = app.add_subcommand("report", "robustness reports from an accuracy CSV");
    rep->add_option("--accuracy", acc_csv)->required();
    rep->add_option("--baseline", baseline);
    rep->add_option("--out", report_out)->required();

    auto *sw = app.add_subcommand("sweep", "full clean-train / corrupted-test experiment");
    add_common(sw, sweep_o, true);
    sw->add_option("--out", sweep_o.out, "results directory");

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

    try {
        if (*fx) return cmd_make_fixture(fixture_out, fixture_count, fixture_seed);
        if (*feat) return cmd_featurize(feat_o, model, depth, seed);
        if (*corr) return cmd_corrupt(corr_o, kind, severity, seed);
        if (*tr) return cmd_train(train_o, model, depth, seed, ckpt);
        if (*ev) return cmd_evaluate(eval_o, model, depth, seed, ckpt, eval_out);
        if (*rep) return cmd_report(acc_csv, baseline, report_out);
        if (*sw) return cmd_sweep(sweep_o);
    } catch (const std::exception &e) {
        spdlog::error("{}", e.what());
        return 2;
    }
    return 2;
}
