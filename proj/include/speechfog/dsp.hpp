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

#ifndef SPEECHFOG_DSP_HPP
#define SPEECHFOG_DSP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace speechfog {

// Decoded mono PCM, amplitudes normalized to [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  std::uint32_t sample_rate_hz = 0;

  double duration_s() const {
    return sample_rate_hz == 0
               ? 0.0
               : static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

enum class WindowFn { kHann, kRectangular };

const char* window_fn_name(WindowFn w);
WindowFn window_fn_from_name(const std::string& name);

// Short-time analysis parameters. Window/hop are in milliseconds so one
// config applies across sample rates; per-clip sample counts are derived on
// use. fft_size must be a power of two at least as long as the window.
struct FrameConfig {
  double window_ms = 25.0;
  double hop_ms = 10.0;
  std::uint32_t fft_size = 2048;
  double silence_floor = 1e-6;  // mean-square threshold, ~ -60 dBFS
  WindowFn window = WindowFn::kHann;

  std::size_t window_samples(std::uint32_t sample_rate_hz) const;
  std::size_t hop_samples(std::uint32_t sample_rate_hz) const;

  // Rate-independent invariants (positive window/hop, hop <= window,
  // power-of-two fft_size, non-negative floor). Throws ConfigError.
  void validate_shape() const;

  // validate_shape plus the per-rate invariants (window at least two
  // samples, hop at least one, window fits in fft_size).
  void validate(std::uint32_t sample_rate_hz) const;
};

// One-sided magnitude spectrum of a single frame: fft_size/2 + 1 bins,
// bin k centered at k * bin_hz.
struct SpectrumFrame {
  std::vector<double> magnitudes;
  double bin_hz = 0.0;
};

struct Frame {
  std::size_t start = 0;               // sample index of the first sample
  std::span<const double> samples;     // window_samples long, borrowed
};

// Slices the clip into overlapping frames; frame m covers
// [m*hop, m*hop + window). A clip shorter than one window yields no frames.
// Frame count is floor((L - N) / H) + 1 otherwise.
std::vector<Frame> frame_signal(const AudioClip& clip, const FrameConfig& cfg);

// Fraction of adjacent sample pairs whose product is strictly negative,
// divided by N - 1. Exact zeros never count as crossings. Needs N >= 2.
double zero_crossing_rate(std::span<const double> frame);

// Mean of squared samples (frame-length invariant). Needs N >= 1.
double short_time_energy(std::span<const double> frame);

// Applies cfg.window, zero-pads to cfg.fft_size, and returns the one-sided
// magnitude spectrum. The frame must not be longer than fft_size.
SpectrumFrame magnitude_spectrum(std::span<const double> frame,
                                 const FrameConfig& cfg,
                                 std::uint32_t sample_rate_hz);

// Magnitude-weighted mean frequency in Hz. An all-zero spectrum returns 0;
// the caller is expected to flag such frames silent.
double spectral_centroid(const SpectrumFrame& spec);

// In-place radix-2 FFT over interleaved complex (re, im) pairs.
// n must be a power of two.
void fft_inplace(std::vector<double>& re, std::vector<double>& im);

}  // namespace speechfog

#endif  // SPEECHFOG_DSP_HPP
