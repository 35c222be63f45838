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
#include <optional>
#include <string>
#include <tuple>

#include "qnnrobust/corrupt/severity.hpp"

namespace qnnrobust::metrics {

/// Identifies a trained model variant. Classical models use template
/// "none" and depth 0.
struct ModelKey {
    std::string model;
    std::string circuit_template = "none";
    std::size_t depth = 0;

    auto operator<=>(const ModelKey &) const = default;
    std::string label() const;
};

/// Clean accuracy plus accuracy for each corruption kind at severities 1..6.
class AccuracyGrid {
  public:
    AccuracyGrid() = default;
    AccuracyGrid(ModelKey key, std::uint64_t seed) : key_(std::move(key)), seed_(seed) {}

    const ModelKey &key() const noexcept { return key_; }
    std::uint64_t seed() const noexcept { return seed_; }

    void set_clean(double acc);
    /// severity in 1..6.
    void set(corrupt::Kind kind, std::size_t severity, double acc);
    bool has_clean() const noexcept { return clean_.has_value(); }
    bool has(corrupt::Kind kind, std::size_t severity) const;
    /// Throws ValidationError for a missing cell.
    double clean() const;
    double at(corrupt::Kind kind, std::size_t severity) const;
    /// Clean cell and all six severities of `kind` present.
    bool complete(corrupt::Kind kind) const;
    bool complete() const;

  private:
    ModelKey key_;
    std::uint64_t seed_ = 0;
    std::optional<double> clean_;
    std::array<std::array<std::optional<double>, corrupt::kMaxSeverity>, 4> acc_{};
};

} // namespace qnnrobust::metrics
