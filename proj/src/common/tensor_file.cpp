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

#include "qnnrobust/common/tensor_file.hpp"

#include <bit>
#include <cstring>
#include <functional>
#include <numeric>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"

namespace qnnrobust {

static_assert(std::endian::native == std::endian::little,
              "tensor files assume a little-endian host");

namespace {
constexpr char kMagic[8] = {'Q', 'N', 'N', 'R', 'T', 'N', 'S', '1'};
}

std::size_t TensorFile::element_count() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           std::multiplies<>());
}

std::string encode_tensor_file(const TensorFile &tensor) {
    if (tensor.element_count() != tensor.data.size()) {
        throw StructuralError("tensor dims do not match data length");
    }
    nlohmann::json header = tensor.extra;
    header["dims"] = tensor.dims;
    header["dtype"] = "f64";
    header["layout"] = tensor.layout;
    const std::string text = header.dump();

    std::string out;
    out.reserve(16 + text.size() + tensor.data.size() * sizeof(double));
    out.append(kMagic, sizeof(kMagic));
    const std::uint64_t len = text.size();
    out.append(reinterpret_cast<const char *>(&len), sizeof(len));
    out.append(text);
    out.append(reinterpret_cast<const char *>(tensor.data.data()),
               tensor.data.size() * sizeof(double));
    return out;
}

TensorFile decode_tensor_file(const std::string &bytes) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 8) != 0) {
        throw FormatError("not a tensor file (bad magic)");
    }
    std::uint64_t len = 0;
    std::memcpy(&len, bytes.data() + 8, sizeof(len));
    if (len > bytes.size() - 16) {
        throw FormatError("tensor header truncated");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(bytes.substr(16, len));
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("tensor header is not JSON: ") + e.what());
    }
    if (!header.contains("dims") || header.value("dtype", "") != "f64") {
        throw FormatError("tensor header missing dims or dtype != f64");
    }
    TensorFile t;
    t.dims = header.at("dims").get<std::vector<std::size_t>>();
    t.layout = header.value("layout", "");
    header.erase("dims");
    header.erase("dtype");
    header.erase("layout");
    t.extra = std::move(header);

    const std::size_t payload = bytes.size() - 16 - len;
    if (payload != t.element_count() * sizeof(double)) {
        throw FormatError("tensor payload size does not match dims");
    }
    t.data.resize(t.element_count());
    std::memcpy(t.data.data(), bytes.data() + 16 + len, payload);
    return t;
}

void save_tensor_file(const std::filesystem::path &path, const TensorFile &tensor) {
    write_file_atomic(path, encode_tensor_file(tensor));
}

TensorFile load_tensor_file(const std::filesystem::path &path) {
    return decode_tensor_file(read_file(path));
}

} // namespace qnnrobust
