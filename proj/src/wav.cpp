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

#include "speechfog/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "speechfog/errors.hpp"

namespace speechfog {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t off,
            const char* tag) {
  return std::memcmp(b.data() + off, tag, 4) == 0;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

std::pair<AudioClip, PcmFormat> decode_wav(
    std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") ||
      !tag_is(bytes, 8, "WAVE")) {
    throw DecodeError("not a RIFF/WAVE stream");
  }

  bool have_fmt = false;
  std::uint16_t audio_format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint32_t byte_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
  std::size_t data_off = 0;
  std::size_t data_len = 0;
  bool have_data = false;

  // Chunk walk; fmt must precede data for the data to be interpretable.
  std::size_t off = 12;
  while (off + 8 <= bytes.size()) {
    const std::uint32_t chunk_len = read_u32(bytes, off + 4);
    const std::size_t body = off + 8;
    if (tag_is(bytes, off, "fmt ")) {
      if (chunk_len < 16 || body + 16 > bytes.size()) {
        throw DecodeError("truncated fmt chunk");
      }
      audio_format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      sample_rate = read_u32(bytes, body + 4);
      byte_rate = read_u32(bytes, body + 8);
      block_align = read_u16(bytes, body + 12);
      bits = read_u16(bytes, body + 14);
      have_fmt = true;
    } else if (tag_is(bytes, off, "data")) {
      data_off = body;
      data_len = chunk_len;
      have_data = true;
      if (data_off + data_len > bytes.size()) {
        throw DecodeError("data chunk extends past end of stream");
      }
    }
    // Chunk bodies are word-aligned; odd sizes carry a pad byte.
    off = body + chunk_len + (chunk_len & 1);
  }

  if (!have_fmt) throw DecodeError("missing fmt chunk");
  if (!have_data) throw DecodeError("missing data chunk");

  if (audio_format != kFormatPcm) {
    throw UnsupportedFormatError("audio_format " +
                                 std::to_string(audio_format) +
                                 " (only linear PCM accepted)");
  }
  if (channels != 1) {
    throw UnsupportedFormatError("channels " + std::to_string(channels) +
                                 " (only mono accepted)");
  }
  if (bits != 16) {
    throw UnsupportedFormatError("bits_per_sample " + std::to_string(bits) +
                                 " (only 16-bit accepted)");
  }
  if (sample_rate == 0) throw DecodeError("sample_rate is zero");
  const std::uint32_t expected_byte_rate = sample_rate * 2;
  if (byte_rate != expected_byte_rate) {
    throw DecodeError("byte_rate " + std::to_string(byte_rate) +
                      " inconsistent with sample_rate (expected " +
                      std::to_string(expected_byte_rate) + ")");
  }
  if (block_align != 2) {
    throw DecodeError("block_align " + std::to_string(block_align) +
                      " inconsistent with 16-bit mono");
  }

  PcmFormat fmt;
  fmt.sample_rate_hz = sample_rate;
  fmt.bits_per_sample = bits;
  fmt.channels = channels;
  fmt.byte_rate = byte_rate;

  AudioClip clip;
  clip.sample_rate_hz = sample_rate;
  const std::size_t n = data_len / 2;
  clip.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::uint16_t>(
        bytes[data_off + 2 * i] | (bytes[data_off + 2 * i + 1] << 8));
    const auto s = static_cast<std::int16_t>(u);
    clip.samples[i] = static_cast<double>(s) / 32768.0;
  }
  return {std::move(clip), fmt};
}

std::vector<std::uint8_t> encode_wav(std::span<const double> samples,
                                     std::uint32_t sample_rate_hz) {
  const auto data_len = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_len);

  put_tag(out, "RIFF");
  put_u32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);  // mono
  put_u32(out, sample_rate_hz);
  put_u32(out, sample_rate_hz * 2);
  put_u16(out, 2);   // block align
  put_u16(out, 16);  // bits per sample
  put_tag(out, "data");
  put_u32(out, data_len);

  for (const double s : samples) {
    const long v = std::lround(s * 32768.0);
    const auto clamped =
        static_cast<std::int16_t>(std::clamp(v, -32768L, 32767L));
    put_u16(out, static_cast<std::uint16_t>(clamped));
  }
  return out;
}

}  // namespace speechfog
