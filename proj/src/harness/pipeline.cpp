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

#include "qnnrobust/harness/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include <spdlog/spdlog.h>

#include "qnnrobust/audio/wav_io.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/hash.hpp"
#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/corrupt/generators.hpp"
#include "qnnrobust/qsim/circuit_json.hpp"
#include "qnnrobust/qsim/templates.hpp"
#include "qnnrobust/quanv/quanv_layer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace qnnrobust::harness {

metrics::ModelKey Variant::key() const {
    const auto t = circuit_template(name);
    if (!t) return {std::string(to_string(name)), "none", 0};
    return {std::string(to_string(name)), std::string(qsim::to_string(*t)), depth};
}

std::string Variant::slug() const {
    const auto k = key();
    if (k.circuit_template == "none") return k.model;
    return k.model + "_" + k.circuit_template + "_d" + std::to_string(k.depth);
}

std::vector<Variant> expand_variants(const ExperimentConfig &cfg) {
    std::vector<Variant> out;
    for (auto m : cfg.models) {
        if (m == ModelName::kCnnBase) {
            out.push_back({m, 0});
            continue;
        }
        for (auto d : cfg.depths) out.push_back({m, d});
    }
    return out;
}

Variant parse_variant(const std::string &model, std::size_t depth) {
    const auto m = model_name_from_string(model);
    if (m == ModelName::kCnnBase) return {m, 0};
    require(depth >= 1, "QNN models need a depth >= 1");
    return {m, depth};
}

nn::Architecture variant_architecture(const Variant &v, std::size_t n_classes, const audio::LogMelConfig &lm) {
    if (v.name == ModelName::kCnnBase) return nn::Architecture::cnn_base(n_classes, lm.n_mels, lm.frames);
    return nn::Architecture::qnn(n_classes, quanv::kPatchQubits, (lm.n_mels + 1) / 2, (lm.frames + 1) / 2);
}

std::optional<qsim::CircuitSpec> variant_circuit(const Variant &v, std::uint64_t run_seed) {
    const auto t = circuit_template(v.name);
    if (!t) return std::nullopt;
    return qsim::build_circuit(*t, quanv::kPatchQubits, v.depth, derive_seed(run_seed, "circuit"));
}

json log_mel_json(const audio::LogMelConfig &lm) {
    return {{"n_fft", lm.stft.n_fft},   {"hop", lm.stft.hop},     {"win_seconds", lm.stft.win_seconds},
            {"n_mels", lm.n_mels},      {"frames", lm.frames},    {"epsilon", lm.epsilon},
            {"resample_hz", lm.resample_hz}};
}

std::string Featurizer::file_hash(const ManifestRow &row) const {
    const auto p = row.path.string();
    {
        std::lock_guard lock(mu_);
        if (auto it = file_hashes_.find(p); it != file_hashes_.end()) return it->second;
    }
    auto h = sha256_file(row.path);
    std::lock_guard lock(mu_);
    file_hashes_.emplace(p, h);
    return h;
}

namespace {

audio::LogMelGram load_gram(const fs::path &p) { return audio::load_log_mel(p); }
void store_gram(const fs::path &p, const audio::LogMelGram &g) { audio::save_log_mel(p, g); }

} // namespace

Gram Featurizer::clean(const ManifestRow &row) const {
    const auto key = cache_key("featurize", {{"file", file_hash(row)}, {"log_mel", log_mel_json(lm_)}});
    auto compute = [&] {
        auto w = audio::load_wav(row.path);
        w.source_id = row.id;
        return audio::log_mel(w, lm_);
    };
    return {key, cache_.get_or_compute<audio::LogMelGram>("featurize", key, load_gram, store_gram, compute)};
}

Gram Featurizer::corrupted(const ManifestRow &row, const corrupt::CorruptionSpec &spec) const {
    const auto key = cache_key("corrupt", {{"file", file_hash(row)},
                                           {"kind", corrupt::to_string(spec.kind)},
                                           {"severity", spec.severity},
                                           {"seed", spec.seed},
                                           {"log_mel", log_mel_json(lm_)}});
    auto compute = [&] {
        auto w = audio::load_wav(row.path);
        w.source_id = row.id;
        auto r = corrupt::apply(spec, w);
        for (const auto &d : r.diagnostics) spdlog::debug("{} {}/{}: {}", row.id, corrupt::to_string(spec.kind), spec.severity, d);
        return audio::log_mel(r.waveform, lm_);
    };
    return {key, cache_.get_or_compute<audio::LogMelGram>("corrupt", key, load_gram, store_gram, compute)};
}

std::vector<double> Featurizer::features(const Gram &gram, const std::optional<qsim::CircuitSpec> &circuit) const {
    if (!circuit) return gram.gram.values.data();
    const auto key = cache_key("featurize", {{"gram", gram.key}, {"circuit", qsim::circuit_digest(*circuit)}});
    auto compute = [&] {
        ++quanv_runs_;
        return quanv::quanv_forward(gram.gram, *circuit);
    };
    auto map = cache_.get_or_compute<quanv::FeatureMap>(
        "featurize", key, [](const fs::path &p) { return quanv::load_feature_map(p); },
        [](const fs::path &p, const quanv::FeatureMap &m) { quanv::save_feature_map(p, m); }, compute);
    return std::move(map.values);
}

nn::Dataset build_dataset(const nn::Architecture &arch, const Featurizer &fz, const std::vector<const Gram *> &grams,
                          const std::vector<int> &labels, const std::optional<qsim::CircuitSpec> &circuit) {
    nn::Dataset d;
    d.sample_dims = arch.input_dims();
    for (std::size_t i = 0; i < grams.size(); ++i) d.add(fz.features(*grams[i], circuit), labels[i]);
    return d;
}

TrainedModel train_cached(const Cache &cache, const nn::Architecture &arch, const nn::TrainConfig &cfg,
                          const std::optional<qsim::CircuitSpec> &circuit, const std::vector<std::string> &train_keys,
                          const nn::Dataset &train_set, const std::vector<std::string> &val_keys,
                          const nn::Dataset &val_set) {
    const json inputs = {
        {"arch",
         {{"kind", nn::to_string(arch.kind)},
          {"dims", arch.input_dims()},
          {"n_classes", arch.n_classes}}},
        {"train",
         {{"lr", cfg.lr},
          {"weight_decay", cfg.weight_decay},
          {"batch_size", cfg.batch_size},
          {"max_epochs", cfg.max_epochs},
          {"patience", cfg.patience},
          {"seed", cfg.seed},
          {"decoupled", cfg.decoupled_weight_decay}}},
        {"circuit", circuit ? qsim::circuit_digest(*circuit) : std::string("none")},
        {"train_samples", train_keys},
        {"train_labels", train_set.labels},
        {"val_samples", val_keys},
        {"val_labels", val_set.labels},
    };
    const auto key = cache_key("train", inputs);
    auto load = [](const fs::path &p) {
        TrainedModel m{nn::load_checkpoint(p), nn::load_history_csv(nn::history_path(p))};
        return m;
    };
    auto store = [](const fs::path &p, const TrainedModel &m) {
        nn::save_history_csv(nn::history_path(p), m.history);
        nn::save_checkpoint(p, m.checkpoint);
    };
    auto compute = [&] {
        auto r = nn::train(arch, train_set, val_set, cfg);
        return TrainedModel{{arch, std::move(r.params), r.best_epoch, r.best_val_loss}, std::move(r.history)};
    };
    return cache.get_or_compute<TrainedModel>("train", key, load, store, compute);
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto &th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace qnnrobust::harness
