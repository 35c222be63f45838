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

#include "qnnrobust/nn/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qnnrobust/common/rng.hpp"
#include "qnnrobust/nn/adam.hpp"
#include "qnnrobust/nn/layers.hpp"

namespace qnnrobust::nn {
namespace {

constexpr std::size_t kEvalChunk = 64;

bool all_finite(const Params &p) {
    for (const auto &t : p.tensors) {
        for (double v : t.data) {
            if (!std::isfinite(v)) return false;
        }
    }
    return true;
}

} // namespace

void TrainConfig::validate() const {
    if (!(lr > 0.0) || !(weight_decay >= 0.0) || batch_size == 0 || max_epochs == 0 || patience == 0) {
        throw ValidationError("training config needs lr > 0, weight_decay >= 0 and positive batch size, "
                              "epoch limit and patience");
    }
    if (patience >= max_epochs) {
        throw ValidationError("patience (" + std::to_string(patience) + ") must be below max_epochs (" +
                              std::to_string(max_epochs) + ")");
    }
}

bool EarlyStopping::update(double val_loss) {
    improved_ = val_loss < best_;
    if (improved_) {
        best_ = val_loss;
        since_best_ = 0;
        return false;
    }
    return ++since_best_ >= patience_;
}

void Dataset::add(std::span<const double> sample, int label) {
    if (sample.size() != product(sample_dims)) {
        throw StructuralError("sample of " + std::to_string(sample.size()) + " values, expected " +
                              shape_string(sample_dims));
    }
    values.insert(values.end(), sample.begin(), sample.end());
    labels.push_back(label);
}

Tensor Dataset::batch(std::span<const std::size_t> indices) const {
    const std::size_t per = product(sample_dims);
    std::vector<std::size_t> dims{indices.size()};
    dims.insert(dims.end(), sample_dims.begin(), sample_dims.end());
    Tensor t(std::move(dims));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        std::copy_n(values.begin() + std::ptrdiff_t(indices[i] * per), per, t.data.begin() + std::ptrdiff_t(i * per));
    }
    return t;
}

Evaluation evaluate(const Architecture &arch, const Params &params, const Dataset &data) {
    if (data.size() == 0) throw ValidationError("cannot evaluate an empty dataset");
    Evaluation e;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < data.size(); start += kEvalChunk) {
        const std::size_t n = std::min(kEvalChunk, data.size() - start);
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), start);
        const Tensor logits = forward(arch, params, data.batch(idx));
        const std::span<const int> labels(data.labels.data() + start, n);
        e.loss += softmax_cross_entropy(logits, labels).loss * double(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = logits.data.begin() + std::ptrdiff_t(i * arch.n_classes);
            const int pred = int(std::max_element(row, row + std::ptrdiff_t(arch.n_classes)) - row);
            e.predictions.push_back(pred);
            correct += pred == labels[i];
        }
    }
    e.loss /= double(data.size());
    e.accuracy = double(correct) / double(data.size());
    return e;
}

TrainResult train(const Architecture &arch, const Dataset &train_set, const Dataset &val_set,
                  const TrainConfig &cfg, const EpochCallback &on_epoch) {
    cfg.validate();
    if (train_set.size() == 0 || val_set.size() == 0) {
        throw ValidationError("training needs non-empty train and validation splits");
    }
    Params params = init_params(arch, derive_seed(cfg.seed, "init"));
    AdamState state = AdamState::for_params(params);
    const AdamConfig adam{cfg.lr, 0.9, 0.999, 1e-8, cfg.weight_decay, cfg.decoupled_weight_decay};

    TrainResult result;
    result.params = params;
    result.best_val_loss = INFINITY;
    std::vector<std::size_t> order(train_set.size());
    EarlyStopping stopper(cfg.patience);
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        std::iota(order.begin(), order.end(), 0);
        CounterRng rng(derive_seed(cfg.seed, "shuffle/" + std::to_string(epoch)));
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

        double loss_sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t n = std::min(cfg.batch_size, order.size() - start);
            const std::span<const std::size_t> idx(order.data() + start, n);
            std::vector<int> labels(n);
            for (std::size_t i = 0; i < n; ++i) labels[i] = train_set.labels[idx[i]];
            auto lg = loss_and_grads(arch, params, train_set.batch(idx), labels);
            if (!std::isfinite(lg.loss) || !all_finite(lg.grads)) {
                throw TrainingDiverged("non-finite loss or gradient at epoch " + std::to_string(epoch) +
                                       ", batch starting at " + std::to_string(start) + " (loss " +
                                       std::to_string(lg.loss) + ")");
            }
            adam_step(params, lg.grads, state, adam);
            loss_sum += lg.loss * double(n);
        }
        const auto val = evaluate(arch, params, val_set);
        if (!std::isfinite(val.loss)) {
            throw TrainingDiverged("non-finite validation loss at epoch " + std::to_string(epoch));
        }
        const EpochRecord rec{epoch, loss_sum / double(order.size()), val.loss, val.accuracy};
        result.history.push_back(rec);
        const bool stop = stopper.update(val.loss);
        if (stopper.improved()) {
            result.best_val_loss = val.loss;
            result.best_epoch = epoch;
            result.params = params;
        }
        if (stop) {
            result.early_stopped = true;
            break;
        }
        if (on_epoch && on_epoch(rec)) break;
    }
    return result;
}

} // namespace qnnrobust::nn
