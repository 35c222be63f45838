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

#include "qnnrobust/harness/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qnnrobust/audio/wav_io.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/rng.hpp"

namespace qnnrobust::harness {

void make_fixture(const std::filesystem::path &root, std::size_t count, std::uint64_t seed) {
    require(count >= 2 && count % 2 == 0, "fixture: count must be even and >= 2");
    std::filesystem::create_directories(root / "tone");
    std::filesystem::create_directories(root / "noise");
    for (std::size_t i = 0; i < count / 2; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%03zu.wav", i);

        CounterRng tr(derive_seed(seed, "fixture/tone/" + std::to_string(i)));
        const double f = tr.uniform(300.0, 3000.0);
        const double amp = tr.uniform(0.2, 0.7);
        const double phase = tr.uniform(0.0, 2.0 * std::numbers::pi);
        audio::Waveform tone{std::vector<double>(kFixtureRate), kFixtureRate, {}};
        for (std::size_t n = 0; n < tone.size(); ++n)
            tone.samples[n] = amp * std::sin(2.0 * std::numbers::pi * f * double(n) / kFixtureRate + phase) +
                              0.005 * tr.normal();
        audio::save_wav_pcm16(root / "tone" / name, tone);

        CounterRng nr(derive_seed(seed, "fixture/noise/" + std::to_string(i)));
        const double sd = nr.uniform(0.05, 0.25);
        audio::Waveform noise{std::vector<double>(kFixtureRate), kFixtureRate, {}};
        for (auto &x : noise.samples) x = std::clamp(sd * nr.normal(), -1.0, 1.0);
        audio::save_wav_pcm16(root / "noise" / name, noise);
    }
}

} // namespace qnnrobust::harness
