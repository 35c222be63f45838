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

#include <cstdint>
#include <string>
#include <vector>

namespace qnnrobust::audio {

/// Mono audio in [-1, 1].
struct Waveform {
    std::vector<double> samples;
    std::uint32_t sample_rate = 0;
    std::string source_id;

    std::size_t size() const noexcept { return samples.size(); }
    double duration_seconds() const noexcept {
        return sample_rate == 0 ? 0.0 : double(samples.size()) / sample_rate;
    }
};

/// Throws ValidationError unless the waveform is non-empty, has a positive
/// sample rate and only finite samples within [-1, 1].
void validate(const Waveform &w);

} // namespace qnnrobust::audio
