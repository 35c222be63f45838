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

#include "qnnrobust/harness/cache.hpp"

#include <spdlog/spdlog.h>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/hash.hpp"

namespace qnnrobust::harness {

std::string cache_key(std::string_view stage, const nlohmann::json &inputs) {
    if (stage != "featurize" && stage != "corrupt" && stage != "train")
        throw ValidationError("cache: unknown stage '" + std::string(stage) + "'");
    // nlohmann objects keep keys sorted, so dump() is canonical.
    const nlohmann::json doc = {{"stage", stage}, {"inputs", inputs}};
    return sha256_hex(doc.dump());
}

std::filesystem::path Cache::path_for(std::string_view stage, const std::string &key) const {
    return root_ / std::string(stage) / key.substr(0, 2) / key;
}

void Cache::discard_corrupt(const std::filesystem::path &p, const std::exception &e) const {
    spdlog::warn("cache entry {} unreadable ({}); recomputing", p.string(), e.what());
    std::error_code ec;
    std::filesystem::remove(p, ec);
}

} // namespace qnnrobust::harness
