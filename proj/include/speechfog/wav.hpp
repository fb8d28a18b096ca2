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

#ifndef SPEECHFOG_WAV_HPP
#define SPEECHFOG_WAV_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "speechfog/dsp.hpp"

namespace speechfog {

// Accepted input format: linear PCM, 16-bit little-endian, mono.
struct PcmFormat {
  std::uint32_t sample_rate_hz = 0;
  std::uint16_t bits_per_sample = 16;
  std::uint16_t channels = 1;
  std::uint32_t byte_rate = 0;  // sample_rate * channels * bits / 8, exact
};

// Parses a RIFF/WAVE byte stream. Sample values map to doubles via s/32768,
// so -32768 decodes to exactly -1.0. Throws DecodeError on malformed input
// and UnsupportedFormatError (naming the field) on stereo, non-16-bit, or
// compressed streams.
std::pair<AudioClip, PcmFormat> decode_wav(std::span<const std::uint8_t> bytes);

// Canonical 44-byte-header counterpart of decode_wav; samples are rounded to
// int16 with clamping at full scale.
std::vector<std::uint8_t> encode_wav(std::span<const double> samples,
                                     std::uint32_t sample_rate_hz);

}  // namespace speechfog

#endif  // SPEECHFOG_WAV_HPP
