// Copyright 2026 The Speechfog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPEECHFOG_FIXTURES_HPP
#define SPEECHFOG_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "speechfog/dsp.hpp"

namespace speechfog {

struct FixtureSpec {
  std::string label;
  double duration_s = 0.0;
  std::uint32_t seed = 0;
};

// The reference benchmark set: five speech-task-sized clips. Durations are
// chosen so that at 44.1 kHz / 16-bit mono the files land at roughly
// 551 / 545 / 496 / 537 / 438 kB.
const std::vector<FixtureSpec>& benchmark_fixture_specs();

// Deterministic speech-shaped audio: a jittered glottal pulse train plus
// fricative noise, shaped through drifting formant resonators and a
// syllabic on/off envelope, with silence at both ends. Peak level 0.6.
AudioClip synthesize_speech_like(double duration_s,
                                 std::uint32_t sample_rate_hz,
                                 std::uint32_t seed);

// Writes the benchmark set as WAVs into dir (created if missing); returns
// the paths in label order.
std::vector<std::filesystem::path> write_benchmark_fixtures(
    const std::filesystem::path& dir, std::uint32_t sample_rate_hz = 44100);

}  // namespace speechfog

#endif  // SPEECHFOG_FIXTURES_HPP
