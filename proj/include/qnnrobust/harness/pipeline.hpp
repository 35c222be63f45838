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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnnrobust/audio/log_mel.hpp"
#include "qnnrobust/corrupt/severity.hpp"
#include "qnnrobust/harness/cache.hpp"
#include "qnnrobust/harness/config.hpp"
#include "qnnrobust/harness/manifest.hpp"
#include "qnnrobust/metrics/accuracy_grid.hpp"
#include "qnnrobust/nn/checkpoint.hpp"
#include "qnnrobust/nn/train.hpp"
#include "qnnrobust/qsim/circuit.hpp"

namespace qnnrobust::harness {

/// One trained model of the sweep: cnn_base, or a QNN family at a depth.
struct Variant {
    ModelName name = ModelName::kCnnBase;
    std::size_t depth = 0;

    metrics::ModelKey key() const;
    /// Filesystem-safe label, e.g. qnn_basic_BEQC_d1.
    std::string slug() const;
    bool operator==(const Variant &) const = default;
};

/// cnn_base once; each QNN family once per depth. Config order.
std::vector<Variant> expand_variants(const ExperimentConfig &cfg);
Variant parse_variant(const std::string &model, std::size_t depth);

nn::Architecture variant_architecture(const Variant &v, std::size_t n_classes, const audio::LogMelConfig &lm);
/// Quanvolution circuit of a QNN variant; the angles come from
/// derive_seed(run_seed, "circuit").
std::optional<qsim::CircuitSpec> variant_circuit(const Variant &v, std::uint64_t run_seed);

nlohmann::json log_mel_json(const audio::LogMelConfig &lm);

/// A log-Mel image plus the cache key that identifies its inputs.
struct Gram {
    std::string key;
    audio::LogMelGram gram;
};

/// Cached clean / corrupted log-Mel extraction and quanvolution. Thread safe.
class Featurizer {
  public:
    Featurizer(const Cache &cache, audio::LogMelConfig lm) : cache_(cache), lm_(std::move(lm)) {}

    Gram clean(const ManifestRow &row) const;
    Gram corrupted(const ManifestRow &row, const corrupt::CorruptionSpec &spec) const;
    /// Flattened model input: the gram itself for cnn_base, the CHW
    /// quanvolution map otherwise.
    std::vector<double> features(const Gram &gram, const std::optional<qsim::CircuitSpec> &circuit) const;

    std::size_t quanv_computations() const noexcept { return quanv_runs_; }

  private:
    std::string file_hash(const ManifestRow &row) const;

    const Cache &cache_;
    audio::LogMelConfig lm_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::string> file_hashes_;
    mutable std::atomic<std::size_t> quanv_runs_{0};
};

nn::Dataset build_dataset(const nn::Architecture &arch, const Featurizer &fz, const std::vector<const Gram *> &grams,
                          const std::vector<int> &labels, const std::optional<qsim::CircuitSpec> &circuit);

struct TrainedModel {
    nn::Checkpoint checkpoint;
    std::vector<nn::EpochRecord> history;
};

/**
 * Trains (or fetches from the cache) one variant. The key covers the
 * architecture, training config, circuit and the identity and labels of every
 * training and validation sample.
 */
TrainedModel train_cached(const Cache &cache, const nn::Architecture &arch, const nn::TrainConfig &cfg,
                          const std::optional<qsim::CircuitSpec> &circuit, const std::vector<std::string> &train_keys,
                          const nn::Dataset &train_set, const std::vector<std::string> &val_keys,
                          const nn::Dataset &val_set);

/// Runs fn(i) for i in [0, n) on up to `workers` threads (0: hardware).
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &fn);

} // namespace qnnrobust::harness
