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

#include "qnnrobust/nn/checkpoint.hpp"

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/fs_util.hpp"
#include "qnnrobust/common/tensor_file.hpp"

namespace qnnrobust::nn {

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
    TensorFile f;
    f.layout = "params";
    f.dims = {ckpt.params.count()};
    nlohmann::json tensors = nlohmann::json::array();
    for (std::size_t i = 0; i < ckpt.params.names.size(); ++i) {
        tensors.push_back({{"name", ckpt.params.names[i]}, {"dims", ckpt.params.tensors[i].dims}});
        const auto &d = ckpt.params.tensors[i].data;
        f.data.insert(f.data.end(), d.begin(), d.end());
    }
    f.extra = {{"arch",
                {{"kind", to_string(ckpt.arch.kind)},
                 {"in_channels", ckpt.arch.in_channels},
                 {"in_height", ckpt.arch.in_height},
                 {"in_width", ckpt.arch.in_width},
                 {"n_classes", ckpt.arch.n_classes}}},
               {"tensors", tensors},
               {"best_epoch", ckpt.best_epoch},
               {"best_val_loss", ckpt.best_val_loss}};
    save_tensor_file(path, f);
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    const auto f = load_tensor_file(path);
    if (f.layout != "params") throw FormatError(path.string() + " is not a checkpoint");
    Checkpoint c;
    try {
        const auto &a = f.extra.at("arch");
        c.arch = {model_kind_from_string(a.at("kind").get<std::string>()), a.at("in_channels").get<std::size_t>(),
                  a.at("in_height").get<std::size_t>(), a.at("in_width").get<std::size_t>(),
                  a.at("n_classes").get<std::size_t>()};
        c.best_epoch = f.extra.at("best_epoch").get<std::size_t>();
        c.best_val_loss = f.extra.at("best_val_loss").get<double>();
        c.params = zero_params(c.arch);
        const auto &tensors = f.extra.at("tensors");
        if (tensors.size() != c.params.names.size()) throw FormatError("tensor count");
        std::size_t offset = 0;
        for (std::size_t i = 0; i < tensors.size(); ++i) {
            auto &t = c.params.tensors[i];
            if (tensors[i].at("name").get<std::string>() != c.params.names[i] ||
                tensors[i].at("dims").get<std::vector<std::size_t>>() != t.dims) {
                throw FormatError("tensor " + std::to_string(i) + " does not match the architecture");
            }
            std::copy_n(f.data.begin() + std::ptrdiff_t(offset), t.numel(), t.data.begin());
            offset += t.numel();
        }
    } catch (const nlohmann::json::exception &e) {
        throw FormatError("checkpoint header in " + path.string() + ": " + e.what());
    } catch (const FormatError &e) {
        throw FormatError("checkpoint " + path.string() + ": " + e.what());
    }
    return c;
}

void save_history_csv(const std::filesystem::path &path, std::span<const EpochRecord> history) {
    std::string out = "epoch,train_loss,val_loss,val_accuracy\n";
    char buf[128];
    for (const auto &r : history) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.epoch, r.train_loss, r.val_loss, r.val_accuracy);
        out += buf;
    }
    write_file_atomic(path, out);
}

std::vector<EpochRecord> load_history_csv(const std::filesystem::path &path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::getline(in, line);
    if (line != "epoch,train_loss,val_loss,val_accuracy") throw FormatError(path.string() + ": bad history header");
    std::vector<EpochRecord> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        EpochRecord r;
        if (std::sscanf(line.c_str(), "%zu,%lf,%lf,%lf", &r.epoch, &r.train_loss, &r.val_loss, &r.val_accuracy) != 4) {
            throw FormatError(path.string() + ": bad history row '" + line + "'");
        }
        rows.push_back(r);
    }
    return rows;
}

std::filesystem::path history_path(const std::filesystem::path &checkpoint) {
    return checkpoint.string() + ".history.csv";
}

} // namespace qnnrobust::nn
