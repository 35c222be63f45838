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

#include "qnnrobust/harness/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "qnnrobust/common/csv.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"

namespace fs = std::filesystem;

namespace qnnrobust::harness {

int DatasetManifest::label_index(const std::string &label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) throw ValidationError("unknown label '" + label + "'");
    return int(it - labels.begin());
}

std::vector<int> DatasetManifest::label_ids() const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (const auto &r : rows) out.push_back(label_index(r.label));
    return out;
}

namespace {

void finish(DatasetManifest &m) {
    std::sort(m.rows.begin(), m.rows.end(), [](const ManifestRow &a, const ManifestRow &b) { return a.id < b.id; });
    std::set<std::string> labels;
    std::set<std::string> ids;
    for (const auto &r : m.rows) {
        labels.insert(r.label);
        if (!ids.insert(r.id).second) throw ValidationError("manifest: duplicate file '" + r.id + "'");
    }
    m.labels.assign(labels.begin(), labels.end());
}

bool is_wav(const fs::path &p) {
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return ext == ".wav";
}

} // namespace

DatasetManifest manifest_from_directory(const fs::path &root) {
    if (!fs::is_directory(root)) throw IoError("dataset root is not a directory: " + root.string());
    DatasetManifest m;
    for (const auto &dir : fs::directory_iterator(root)) {
        if (!dir.is_directory()) continue;
        const auto label = dir.path().filename().string();
        for (const auto &f : fs::recursive_directory_iterator(dir.path())) {
            if (!f.is_regular_file() || !is_wav(f.path())) continue;
            m.rows.push_back({f.path(), fs::relative(f.path(), root).generic_string(), label, {}});
        }
    }
    finish(m);
    return m;
}

DatasetManifest manifest_from_csv(const fs::path &csv, const fs::path &root) {
    const auto rows = parse_csv(read_file(csv));
    if (rows.empty()) throw FormatError("manifest " + csv.string() + ": empty");
    const auto &header = rows.front();
    if (header.size() < 2 || header[0] != "path" || header[1] != "label" ||
        (header.size() > 2 && (header.size() != 3 || header[2] != "group")))
        throw FormatError("manifest " + csv.string() + ": header must be path,label[,group]");
    DatasetManifest m;
    const fs::path base = root.empty() ? csv.parent_path() : root;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &r = rows[i];
        if (r.size() == 1 && r[0].empty()) continue;
        if (r.size() != header.size())
            throw FormatError("manifest " + csv.string() + ": line " + std::to_string(i + 1) + " has " +
                              std::to_string(r.size()) + " fields");
        if (r[1].empty()) throw FormatError("manifest " + csv.string() + ": empty label on line " + std::to_string(i + 1));
        fs::path p(r[0]);
        m.rows.push_back({p.is_absolute() ? p : base / p, r[0], r[1], header.size() > 2 ? r[2] : std::string{}});
    }
    finish(m);
    return m;
}

void validate_manifest(const DatasetManifest &m) {
    if (m.labels.size() < 2)
        throw ValidationError("manifest: need >= 2 classes, found " + std::to_string(m.labels.size()));
    std::map<std::string, std::string> group_label;
    for (const auto &r : m.rows) {
        std::ifstream in(r.path, std::ios::binary);
        if (!in) throw IoError("manifest: unreadable file " + r.path.string());
        if (r.group.empty()) continue;
        auto [it, fresh] = group_label.emplace(r.group, r.label);
        if (!fresh && it->second != r.label)
            throw ValidationError("manifest: group '" + r.group + "' mixes labels '" + it->second + "' and '" +
                                  r.label + "'");
    }
}

} // namespace qnnrobust::harness
