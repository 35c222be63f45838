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

#include <atomic>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace qnnrobust::harness {

/// SHA-256 over {"stage", "inputs"} in canonical JSON. stage must be
/// featurize, corrupt or train.
std::string cache_key(std::string_view stage, const nlohmann::json &inputs);

/// Content-addressed files under root/<stage>/<key[0:2]>/<key>.
class Cache {
  public:
    explicit Cache(std::filesystem::path root) : root_(std::move(root)) {}

    std::filesystem::path path_for(std::string_view stage, const std::string &key) const;

    /**
     * Returns the loaded value for the key, or computes, stores and returns
     * it. If loading a present entry throws, the entry is treated as corrupt:
     * a warning is logged and the value recomputed.
     */
    template <typename T>
    T get_or_compute(std::string_view stage, const std::string &key,
                     const std::function<T(const std::filesystem::path &)> &load,
                     const std::function<void(const std::filesystem::path &, const T &)> &store,
                     const std::function<T()> &compute) const;

    std::size_t hits() const noexcept { return hits_; }
    std::size_t misses() const noexcept { return misses_; }

  private:
    void discard_corrupt(const std::filesystem::path &p, const std::exception &e) const;

    std::filesystem::path root_;
    mutable std::atomic<std::size_t> hits_{0};
    mutable std::atomic<std::size_t> misses_{0};
};

template <typename T>
T Cache::get_or_compute(std::string_view stage, const std::string &key,
                        const std::function<T(const std::filesystem::path &)> &load,
                        const std::function<void(const std::filesystem::path &, const T &)> &store,
                        const std::function<T()> &compute) const {
    const auto p = path_for(stage, key);
    if (std::filesystem::exists(p)) {
        try {
            T v = load(p);
            ++hits_;
            return v;
        } catch (const std::exception &e) {
            discard_corrupt(p, e);
        }
    }
    ++misses_;
    T v = compute();
    std::filesystem::create_directories(p.parent_path());
    store(p, v);
    return v;
}

} // namespace qnnrobust::harness
