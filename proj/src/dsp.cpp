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

#include "speechfog/dsp.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "speechfog/errors.hpp"

namespace speechfog {

namespace {

bool is_power_of_two(std::uint32_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

const char* window_fn_name(WindowFn w) {
  switch (w) {
    case WindowFn::kHann:
      return "hann";
    case WindowFn::kRectangular:
      return "rectangular";
  }
  return "hann";
}

WindowFn window_fn_from_name(const std::string& name) {
  if (name == "hann") return WindowFn::kHann;
  if (name == "rectangular" || name == "rect") return WindowFn::kRectangular;
  throw ConfigError("unknown window function: " + name);
}

std::size_t FrameConfig::window_samples(std::uint32_t sample_rate_hz) const {
  return static_cast<std::size_t>(window_ms * sample_rate_hz / 1000.0);
}

std::size_t FrameConfig::hop_samples(std::uint32_t sample_rate_hz) const {
  return static_cast<std::size_t>(hop_ms * sample_rate_hz / 1000.0);
}

void FrameConfig::validate_shape() const {
  if (!(window_ms > 0.0)) throw ConfigError("window_ms must be > 0");
  if (!(hop_ms > 0.0)) throw ConfigError("hop_ms must be > 0");
  if (hop_ms > window_ms) {
    throw ConfigError("hop_ms must not exceed window_ms");
  }
  if (!(silence_floor >= 0.0)) {
    throw ConfigError("silence_floor must be >= 0");
  }
  if (!is_power_of_two(fft_size)) {
    throw ConfigError("fft_size must be a power of two");
  }
}

void FrameConfig::validate(std::uint32_t sample_rate_hz) const {
  validate_shape();
  if (sample_rate_hz == 0) throw ConfigError("sample rate must be positive");
  const std::size_t n = window_samples(sample_rate_hz);
  if (n < 2) throw ConfigError("window shorter than two samples");
  if (n > fft_size) {
    throw ConfigError("fft_size smaller than the analysis window");
  }
  if (hop_samples(sample_rate_hz) == 0) {
    throw ConfigError("hop shorter than one sample");
  }
}

std::vector<Frame> frame_signal(const AudioClip& clip, const FrameConfig& cfg) {
  cfg.validate(clip.sample_rate_hz);
  const std::size_t n = cfg.window_samples(clip.sample_rate_hz);
  const std::size_t hop = cfg.hop_samples(clip.sample_rate_hz);
  const std::size_t total = clip.samples.size();

  std::vector<Frame> frames;
  if (total < n) return frames;

  const std::size_t count = (total - n) / hop + 1;
  frames.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    const std::size_t start = m * hop;
    frames.push_back(
        Frame{start, std::span<const double>(clip.samples).subspan(start, n)});
  }
  return frames;
}

double zero_crossing_rate(std::span<const double> frame) {
  if (frame.size() < 2) {
    throw DomainError("zero_crossing_rate needs at least two samples");
  }
  std::size_t crossings = 0;
  for (std::size_t i = 1; i < frame.size(); ++i) {
    if (frame[i - 1] * frame[i] < 0.0) ++crossings;
  }
  return static_cast<double>(crossings) / static_cast<double>(frame.size() - 1);
}

double short_time_energy(std::span<const double> frame) {
  if (frame.empty()) {
    throw DomainError("short_time_energy needs at least one sample");
  }
  double sum = 0.0;
  for (const double s : frame) sum += s * s;
  return sum / static_cast<double>(frame.size());
}

// Iterative Cooley-Tukey with bit-reversal permutation.
void fft_inplace(std::vector<double>& re, std::vector<double>& im) {
  const std::size_t n = re.size();
  if (n != im.size() || !is_power_of_two(static_cast<std::uint32_t>(n))) {
    throw DomainError("fft size must be a power of two");
  }

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const double wr = std::cos(ang);
    const double wi = std::sin(ang);
    for (std::size_t i = 0; i < n; i += len) {
      double cr = 1.0;
      double ci = 0.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::size_t a = i + k;
        const std::size_t b = i + k + len / 2;
        const double tr = re[b] * cr - im[b] * ci;
        const double ti = re[b] * ci + im[b] * cr;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
        const double ncr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = ncr;
      }
    }
  }
}

SpectrumFrame magnitude_spectrum(std::span<const double> frame,
                                 const FrameConfig& cfg,
                                 std::uint32_t sample_rate_hz) {
  if (!is_power_of_two(cfg.fft_size)) {
    throw ConfigError("fft_size must be a power of two");
  }
  if (frame.size() > cfg.fft_size) {
    throw ConfigError("frame longer than fft_size");
  }
  const std::size_t k = cfg.fft_size;
  const std::size_t n = frame.size();

  std::vector<double> re(k, 0.0);
  std::vector<double> im(k, 0.0);
  if (cfg.window == WindowFn::kHann && n > 1) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = 0.5 * (1.0 - std::cos(step * static_cast<double>(i)));
      re[i] = frame[i] * w;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) re[i] = frame[i];
  }

  fft_inplace(re, im);

  SpectrumFrame spec;
  spec.bin_hz = static_cast<double>(sample_rate_hz) / static_cast<double>(k);
  spec.magnitudes.resize(k / 2 + 1);
  for (std::size_t i = 0; i <= k / 2; ++i) {
    spec.magnitudes[i] = std::hypot(re[i], im[i]);
  }
  return spec;
}

double spectral_centroid(const SpectrumFrame& spec) {
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) {
    const double mag = spec.magnitudes[k];
    weighted += static_cast<double>(k) * spec.bin_hz * mag;
    total += mag;
  }
  if (total == 0.0) return 0.0;
  return weighted / total;
}

}  // namespace speechfog
