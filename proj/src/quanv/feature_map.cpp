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

#include "qnnrobust/quanv/feature_map.hpp"

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/tensor_file.hpp"

namespace qnnrobust::quanv {

void save_feature_map(const std::filesystem::path &path, const FeatureMap &map) {
    TensorFile t;
    t.dims = {map.channels, map.height, map.width};
    t.layout = "CHW";
    t.data = map.values;
    save_tensor_file(path, t);
}

FeatureMap load_feature_map(const std::filesystem::path &path) {
    auto t = load_tensor_file(path);
    if (t.layout != "CHW" || t.dims.size() != 3) {
        throw FormatError("feature map file " + path.string() + " is not a CHW tensor");
    }
    FeatureMap map;
    map.channels = t.dims[0];
    map.height = t.dims[1];
    map.width = t.dims[2];
    map.values = std::move(t.data);
    return map;
}

} // namespace qnnrobust::quanv
