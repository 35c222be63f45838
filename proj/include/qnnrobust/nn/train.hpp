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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/nn/model.hpp"

namespace qnnrobust::nn {

struct TrainConfig {
    double lr = 1e-5;
    double weight_decay = 1e-2;
    std::size_t batch_size = 20;
    std::size_t max_epochs = 10000;
    std::size_t patience = 30;
    std::uint64_t seed = 0;
    bool decoupled_weight_decay = false;

    void validate() const;
};

/// Samples of identical shape stored contiguously.
struct Dataset {
    std::vector<std::size_t> sample_dims;
    std::vector<double> values;
    std::vector<int> labels;

    std::size_t size() const noexcept { return labels.size(); }
    void add(std::span<const double> sample, int label);
    Tensor batch(std::span<const std::size_t> indices) const;
};

/// Patience counter on validation loss; any strict improvement resets it.
class EarlyStopping {
  public:
    explicit EarlyStopping(std::size_t patience) : patience_(patience) {}
    /// Returns true when training should stop after this epoch.
    bool update(double val_loss);
    bool improved() const noexcept { return improved_; }
    double best() const noexcept { return best_; }

  private:
    std::size_t patience_;
    std::size_t since_best_ = 0;
    double best_ = INFINITY;
    bool improved_ = false;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
};

struct TrainResult {
    Params params;
    std::vector<EpochRecord> history;
    /// 1-based epoch whose parameters were kept.
    std::size_t best_epoch = 0;
    double best_val_loss = 0.0;
    bool early_stopped = false;
};

/// Non-finite loss or gradient during training.
class TrainingDiverged : public Error {
  public:
    using Error::Error;
};

struct Evaluation {
    double loss = 0.0;
    double accuracy = 0.0;
    std::vector<int> predictions;
};

/// Mean loss, accuracy and argmax predictions, in fixed chunks.
Evaluation evaluate(const Architecture &arch, const Params &params, const Dataset &data);

/// Called after every epoch; returning true stops training there.
using EpochCallback = std::function<bool(const EpochRecord &)>;

/// Shuffled minibatch Adam with early stopping on validation loss; returns
/// the parameters of the epoch with the lowest validation loss.
TrainResult train(const Architecture &arch, const Dataset &train_set, const Dataset &val_set,
                  const TrainConfig &cfg, const EpochCallback &on_epoch = {});

} // namespace qnnrobust::nn
