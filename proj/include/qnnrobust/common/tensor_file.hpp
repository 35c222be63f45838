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
#include <string>
#include <vector>

#include <json.hpp>

namespace qnnrobust {

/**
 * Flat binary tensor file used for cached spectrograms, feature maps and
 * model checkpoints.
 *
 * Layout (all integers little-endian):
 *   bytes 0..7   magic "QNNRTNS1"
 *   bytes 8..15  uint64 header length H
 *   next H bytes UTF-8 JSON header {"dims":[...],"dtype":"f64","layout":...}
 *                plus any caller-supplied keys
 *   remainder    prod(dims) IEEE-754 binary64 values, row-major
 */
struct TensorFile {
    std::vector<std::size_t> dims;
    std::string layout;
    nlohmann::json extra = nlohmann::json::object();
    std::vector<double> data;

    std::size_t element_count() const;
};

std::string encode_tensor_file(const TensorFile &tensor);
/// Throws FormatError on bad magic, header or size mismatch.
TensorFile decode_tensor_file(const std::string &bytes);

void save_tensor_file(const std::filesystem::path &path, const TensorFile &tensor);
TensorFile load_tensor_file(const std::filesystem::path &path);

} // namespace qnnrobust
