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

#include <filesystem>
#include <span>

#include "qnnrobust/nn/model.hpp"
#include "qnnrobust/nn/train.hpp"

namespace qnnrobust::nn {

struct Checkpoint {
    Architecture arch;
    Params params;
    std::size_t best_epoch = 0;
    double best_val_loss = 0.0;
};

/// Tagged binary file (architecture, tensor shapes, flat f64 blob).
void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
Checkpoint load_checkpoint(const std::filesystem::path &path);

/// epoch,train_loss,val_loss,val_accuracy with %.17g values.
void save_history_csv(const std::filesystem::path &path, std::span<const EpochRecord> history);
std::vector<EpochRecord> load_history_csv(const std::filesystem::path &path);

/// `<checkpoint>.history.csv`.
std::filesystem::path history_path(const std::filesystem::path &checkpoint);

} // namespace qnnrobust::nn
