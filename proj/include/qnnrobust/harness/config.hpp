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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qnnrobust/audio/log_mel.hpp"
#include "qnnrobust/corrupt/severity.hpp"
#include "qnnrobust/nn/train.hpp"
#include "qnnrobust/qsim/circuit.hpp"

namespace qnnrobust::harness {

/// Model variants: cnn_base or a quanvolutional front with a circuit family.
enum class ModelName : std::uint8_t { kCnnBase, kQnnBasic, kQnnStrongly, kQnnRandom };
std::string_view to_string(ModelName m) noexcept;
ModelName model_name_from_string(std::string_view s);
/// Circuit family of a QNN variant; nullopt for cnn_base.
std::optional<qsim::Template> circuit_template(ModelName m) noexcept;

struct ExperimentConfig {
    std::filesystem::path dataset_root;
    /// Optional CSV (path,label[,group]) overriding the directory layout.
    std::filesystem::path manifest;
    std::vector<ModelName> models{ModelName::kCnnBase, ModelName::kQnnBasic, ModelName::kQnnStrongly,
                                  ModelName::kQnnRandom};
    std::vector<std::size_t> depths{1, 4, 10, 15, 20, 25, 30, 50};
    std::vector<corrupt::Kind> kinds{corrupt::kAllKinds.begin(), corrupt::kAllKinds.end()};
    std::vector<std::size_t> severities{1, 2, 3, 4, 5, 6};
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::array<double, 3> split{0.65, 0.15, 0.20};
    nn::TrainConfig train;
    audio::LogMelConfig log_mel;
    ModelName baseline = ModelName::kCnnBase;
    std::filesystem::path output_dir = "results";
    std::filesystem::path cache_dir = ".qnnrobust_cache";
    /// 0 means one per hardware thread.
    std::size_t workers = 0;

    void validate() const;
};

/// Reads a JSON config; unknown keys are errors. Relative paths resolve
/// against the config file's directory.
ExperimentConfig load_config(const std::filesystem::path &path);
ExperimentConfig config_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir = {});
nlohmann::json config_to_json(const ExperimentConfig &cfg);

/// QNNROBUST_CACHE_DIR if set, else cfg.cache_dir.
std::filesystem::path effective_cache_dir(const ExperimentConfig &cfg);

} // namespace qnnrobust::harness
