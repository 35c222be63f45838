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
#include <cstdint>
#include <filesystem>

namespace qnnrobust::harness {

inline constexpr std::uint32_t kFixtureRate = 16000;

/**
 * Writes a two-class dataset of 1 s, 16 kHz, 16-bit WAVs under
 * root/tone/ and root/noise/ (count / 2 each). Tones are single sinusoids
 * of random pitch and level; noise files are white Gaussian noise.
 */
void make_fixture(const std::filesystem::path &root, std::size_t count = 200, std::uint64_t seed = 0);

} // namespace qnnrobust::harness
