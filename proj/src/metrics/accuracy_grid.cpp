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

#include "qnnrobust/metrics/accuracy_grid.hpp"

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::metrics {
namespace {

void check_accuracy(double acc) {
    if (!(acc >= 0.0 && acc <= 1.0)) throw ValidationError("accuracy " + std::to_string(acc) + " outside [0, 1]");
}

std::size_t severity_slot(std::size_t severity) {
    if (severity < 1 || severity > corrupt::kMaxSeverity) {
        throw ValidationError("grid severity " + std::to_string(severity) + " outside 1..6");
    }
    return severity - 1;
}

} // namespace

std::string ModelKey::label() const {
    if (circuit_template == "none") return model;
    return model + "/" + circuit_template + "/d" + std::to_string(depth);
}

void AccuracyGrid::set_clean(double acc) {
    check_accuracy(acc);
    clean_ = acc;
}

void AccuracyGrid::set(corrupt::Kind kind, std::size_t severity, double acc) {
    check_accuracy(acc);
    acc_[std::size_t(kind)][severity_slot(severity)] = acc;
}

bool AccuracyGrid::has(corrupt::Kind kind, std::size_t severity) const {
    return acc_[std::size_t(kind)][severity_slot(severity)].has_value();
}

double AccuracyGrid::clean() const {
    if (!clean_) throw ValidationError(key_.label() + ": clean accuracy missing");
    return *clean_;
}

double AccuracyGrid::at(corrupt::Kind kind, std::size_t severity) const {
    const auto &v = acc_[std::size_t(kind)][severity_slot(severity)];
    if (!v) {
        throw ValidationError(key_.label() + ": accuracy missing for " + std::string(corrupt::to_string(kind)) +
                              " severity " + std::to_string(severity));
    }
    return *v;
}

bool AccuracyGrid::complete(corrupt::Kind kind) const {
    if (!clean_) return false;
    for (const auto &v : acc_[std::size_t(kind)]) {
        if (!v) return false;
    }
    return true;
}

bool AccuracyGrid::complete() const {
    for (auto k : corrupt::kAllKinds) {
        if (!complete(k)) return false;
    }
    return true;
}

} // namespace qnnrobust::metrics
