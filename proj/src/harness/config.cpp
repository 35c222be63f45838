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

#include "qnnrobust/harness/config.hpp"

#include <cstdlib>
#include <set>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"

namespace qnnrobust::harness {

using nlohmann::json;

std::string_view to_string(ModelName m) noexcept {
    switch (m) {
    case ModelName::kCnnBase: return "cnn_base";
    case ModelName::kQnnBasic: return "qnn_basic";
    case ModelName::kQnnStrongly: return "qnn_strongly";
    case ModelName::kQnnRandom: return "qnn_random";
    }
    return "?";
}

ModelName model_name_from_string(std::string_view s) {
    for (auto m : {ModelName::kCnnBase, ModelName::kQnnBasic, ModelName::kQnnStrongly, ModelName::kQnnRandom})
        if (to_string(m) == s) return m;
    throw ValidationError("unknown model '" + std::string(s) +
                          "' (expected cnn_base, qnn_basic, qnn_strongly or qnn_random)");
}

std::optional<qsim::Template> circuit_template(ModelName m) noexcept {
    switch (m) {
    case ModelName::kQnnBasic: return qsim::Template::kBEQC;
    case ModelName::kQnnStrongly: return qsim::Template::kSEQC;
    case ModelName::kQnnRandom: return qsim::Template::kRQC;
    case ModelName::kCnnBase: break;
    }
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    require(!dataset_root.empty() || !manifest.empty(), "config: dataset root or manifest required");
    require(!models.empty(), "config: at least one model required");
    require(!seeds.empty(), "config: seeds must contain at least one seed");
    double sum = 0.0;
    for (double r : split) {
        require(r > 0.0 && r < 1.0, "config: split ratios must lie in (0, 1)");
        sum += r;
    }
    require(std::abs(sum - 1.0) <= 1e-9, "config: split ratios must sum to 1.0");
    bool any_qnn = false;
    for (auto m : models) any_qnn |= m != ModelName::kCnnBase;
    if (any_qnn) require(!depths.empty(), "config: depths required for QNN models");
    for (auto d : depths) require(d >= 1, "config: depths must be >= 1");
    for (auto s : severities)
        require(s >= 1 && s <= corrupt::kMaxSeverity, "config: severities must lie in 1..6");
    std::set<std::uint64_t> uniq(seeds.begin(), seeds.end());
    require(uniq.size() == seeds.size(), "config: duplicate seeds");
    train.validate();
}

namespace {

void reject_unknown(const json &obj, std::initializer_list<std::string_view> allowed, const std::string &where) {
    require(obj.is_object(), "config: '" + where + "' must be an object");
    for (const auto &[k, v] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok |= a == k;
        if (!ok) throw ValidationError("config: unknown key '" + k + "' in " + where);
    }
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
    std::filesystem::path path(p);
    if (path.empty() || path.is_absolute() || base.empty()) return path;
    return base / path;
}

template <typename T> T get(const json &j, const char *key, const T &fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ValidationError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

} // namespace

ExperimentConfig config_from_json(const json &j, const std::filesystem::path &base_dir) {
    reject_unknown(j,
                   {"dataset", "models", "depths", "corruptions", "seeds", "split", "train", "log_mel",
                    "baseline", "output_dir", "cache_dir", "workers"},
                   "top level");
    ExperimentConfig cfg;
    if (j.contains("dataset")) {
        const auto &d = j.at("dataset");
        reject_unknown(d, {"root", "manifest"}, "dataset");
        cfg.dataset_root = resolve(base_dir, get<std::string>(d, "root", ""));
        cfg.manifest = resolve(base_dir, get<std::string>(d, "manifest", ""));
    }
    if (j.contains("models")) {
        cfg.models.clear();
        for (const auto &m : get<std::vector<std::string>>(j, "models", {}))
            cfg.models.push_back(model_name_from_string(m));
    }
    cfg.depths = get(j, "depths", cfg.depths);
    if (j.contains("corruptions")) {
        const auto &c = j.at("corruptions");
        reject_unknown(c, {"kinds", "severities"}, "corruptions");
        if (c.contains("kinds")) {
            cfg.kinds.clear();
            for (const auto &k : get<std::vector<std::string>>(c, "kinds", {}))
                cfg.kinds.push_back(corrupt::kind_from_string(k));
        }
        cfg.severities = get(c, "severities", cfg.severities);
    }
    if (j.contains("seeds")) {
        const auto &s = j.at("seeds");
        if (s.is_number_integer()) {
            const auto n = s.get<std::int64_t>();
            require(n >= 1, "config: seeds must be >= 1");
            cfg.seeds.clear();
            for (std::int64_t i = 0; i < n; ++i) cfg.seeds.push_back(std::uint64_t(i));
        } else {
            cfg.seeds = get<std::vector<std::uint64_t>>(j, "seeds", {});
        }
    }
    if (j.contains("split")) {
        auto v = get<std::vector<double>>(j, "split", {});
        require(v.size() == 3, "config: split must have three ratios (train, val, test)");
        cfg.split = {v[0], v[1], v[2]};
    }
    if (j.contains("train")) {
        const auto &t = j.at("train");
        reject_unknown(t, {"lr", "weight_decay", "batch_size", "max_epochs", "patience", "decoupled_weight_decay"},
                       "train");
        cfg.train.lr = get(t, "lr", cfg.train.lr);
        cfg.train.weight_decay = get(t, "weight_decay", cfg.train.weight_decay);
        cfg.train.batch_size = get(t, "batch_size", cfg.train.batch_size);
        cfg.train.max_epochs = get(t, "max_epochs", cfg.train.max_epochs);
        cfg.train.patience = get(t, "patience", cfg.train.patience);
        cfg.train.decoupled_weight_decay = get(t, "decoupled_weight_decay", cfg.train.decoupled_weight_decay);
    }
    if (j.contains("log_mel")) {
        const auto &l = j.at("log_mel");
        reject_unknown(l, {"n_fft", "hop", "win_seconds", "n_mels", "frames", "epsilon", "resample_hz"}, "log_mel");
        cfg.log_mel.stft.n_fft = get(l, "n_fft", cfg.log_mel.stft.n_fft);
        cfg.log_mel.stft.hop = get(l, "hop", cfg.log_mel.stft.hop);
        cfg.log_mel.stft.win_seconds = get(l, "win_seconds", cfg.log_mel.stft.win_seconds);
        cfg.log_mel.n_mels = get(l, "n_mels", cfg.log_mel.n_mels);
        cfg.log_mel.frames = get(l, "frames", cfg.log_mel.frames);
        cfg.log_mel.epsilon = get(l, "epsilon", cfg.log_mel.epsilon);
        cfg.log_mel.resample_hz = get(l, "resample_hz", cfg.log_mel.resample_hz);
    }
    if (j.contains("baseline")) cfg.baseline = model_name_from_string(get<std::string>(j, "baseline", ""));
    if (j.contains("output_dir")) cfg.output_dir = resolve(base_dir, get<std::string>(j, "output_dir", ""));
    if (j.contains("cache_dir")) cfg.cache_dir = resolve(base_dir, get<std::string>(j, "cache_dir", ""));
    cfg.workers = get(j, "workers", cfg.workers);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw FormatError("config " + path.string() + ": " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

json config_to_json(const ExperimentConfig &cfg) {
    json j;
    j["dataset"] = {{"root", cfg.dataset_root.string()}, {"manifest", cfg.manifest.string()}};
    j["models"] = json::array();
    for (auto m : cfg.models) j["models"].push_back(std::string(to_string(m)));
    j["depths"] = cfg.depths;
    json kinds = json::array();
    for (auto k : cfg.kinds) kinds.push_back(std::string(corrupt::to_string(k)));
    j["corruptions"] = {{"kinds", kinds}, {"severities", cfg.severities}};
    j["seeds"] = cfg.seeds;
    j["split"] = cfg.split;
    j["train"] = {{"lr", cfg.train.lr},
                  {"weight_decay", cfg.train.weight_decay},
                  {"batch_size", cfg.train.batch_size},
                  {"max_epochs", cfg.train.max_epochs},
                  {"patience", cfg.train.patience},
                  {"decoupled_weight_decay", cfg.train.decoupled_weight_decay}};
    j["log_mel"] = {{"n_fft", cfg.log_mel.stft.n_fft},     {"hop", cfg.log_mel.stft.hop},
                    {"win_seconds", cfg.log_mel.stft.win_seconds}, {"n_mels", cfg.log_mel.n_mels},
                    {"frames", cfg.log_mel.frames},         {"epsilon", cfg.log_mel.epsilon},
                    {"resample_hz", cfg.log_mel.resample_hz}};
    j["baseline"] = std::string(to_string(cfg.baseline));
    j["output_dir"] = cfg.output_dir.string();
    j["cache_dir"] = cfg.cache_dir.string();
    j["workers"] = cfg.workers;
    return j;
}

std::filesystem::path effective_cache_dir(const ExperimentConfig &cfg) {
    if (const char *env = std::getenv("QNNROBUST_CACHE_DIR"); env != nullptr && *env != '\0') return env;
    return cfg.cache_dir;
}

} // namespace qnnrobust::harness
