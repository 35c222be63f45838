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

#include "qnnrobust/audio/waveform.hpp"

#include <cmath>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::audio {

void validate(const Waveform &w) {
    if (w.samples.empty()) {
        throw ValidationError("waveform '" + w.source_id + "' is empty");
    }
    if (w.sample_rate == 0) {
        throw ValidationError("waveform '" + w.source_id + "' has no sample rate");
    }
    for (double x : w.samples) {
        if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
            throw ValidationError("waveform '" + w.source_id +
                                  "' has a sample outside [-1, 1]");
        }
    }
}

} // namespace qnnrobust::audio
