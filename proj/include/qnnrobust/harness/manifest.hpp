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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qnnrobust::harness {

struct ManifestRow {
    std::filesystem::path path;
    /// Path relative to the dataset root (or as written in the CSV); used
    /// as the stable file id.
    std::string id;
    std::string label;
    std::string group;
};

struct DatasetManifest {
    std::vector<ManifestRow> rows;
    /// Sorted label strings; index = class id.
    std::vector<std::string> labels;

    int label_index(const std::string &label) const;
    std::vector<int> label_ids() const;
    std::size_t n_classes() const noexcept { return labels.size(); }
};

/// root/<label>/*.wav, rows sorted by id.
DatasetManifest manifest_from_directory(const std::filesystem::path &root);
/// CSV with header path,label[,group]; relative paths resolve against root.
DatasetManifest manifest_from_csv(const std::filesystem::path &csv, const std::filesystem::path &root);
/// Throws ValidationError unless there are >= 2 classes and every file is
/// readable.
void validate_manifest(const DatasetManifest &m);

} // namespace qnnrobust::harness
