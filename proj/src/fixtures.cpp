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

#include "speechfog/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "speechfog/errors.hpp"
#include "speechfog/wav.hpp"

namespace speechfog {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Two-pole resonator y[n] = x[n] + 2 r cos(w) y[n-1] - r^2 y[n-2].
struct Resonator {
  double a1 = 0.0;
  double a2 = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;

  void tune(double freq_hz, double bandwidth_hz, double rate) {
    const double r = std::exp(-kPi * bandwidth_hz / rate);
    a1 = 2.0 * r * std::cos(2.0 * kPi * freq_hz / rate);
    a2 = -r * r;
  }

  double tick(double x) {
    const double y = x + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

}  // namespace

const std::vector<FixtureSpec>& benchmark_fixture_specs() {
  static const std::vector<FixtureSpec> specs = {
      {"S1", 6.24, 101}, {"S2", 6.18, 102}, {"S3", 5.62, 103},
      {"S4", 6.08, 104}, {"S5", 4.96, 105},
  };
  return specs;
}

AudioClip synthesize_speech_like(double duration_s,
                                 std::uint32_t sample_rate_hz,
                                 std::uint32_t seed) {
  if (!(duration_s > 0.0) || sample_rate_hz == 0) {
    throw DomainError("fixture duration and sample rate must be positive");
  }
  const double rate = static_cast<double>(sample_rate_hz);
  const auto n = static_cast<std::size_t>(std::llround(duration_s * rate));

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);

  // Per-clip voice parameters.
  const double f0_base = 95.0 + 70.0 * unit(rng);  // fundamental, Hz
  Resonator formant1, formant2, formant3;
  const double f1_base = 420.0 + 250.0 * unit(rng);
  const double f2_base = 1300.0 + 700.0 * unit(rng);
  const double f3_base = 2400.0 + 600.0 * unit(rng);

  // Syllabic gate: alternating voiced segments and pauses, with silence
  // held at both ends of the clip.
  const double edge_silence_s = 0.25;
  std::vector<double> gate(n, 0.0);
  {
    double t = edge_silence_s;
    const double t_end = duration_s - edge_silence_s;
    while (t < t_end) {
      const double seg = 0.14 + 0.24 * unit(rng);   // syllable length
      const double pause = 0.04 + 0.12 * unit(rng); // inter-syllable gap
      const double seg_end = std::min(t + seg, t_end);
      const auto i0 = static_cast<std::size_t>(t * rate);
      const auto i1 =
          std::min(n, static_cast<std::size_t>(seg_end * rate));
      const double ramp = 0.02 * rate;  // 20 ms raised-cosine edges
      for (std::size_t i = i0; i < i1; ++i) {
        const double into = static_cast<double>(i - i0);
        const double from_end = static_cast<double>(i1 - 1 - i);
        double g = 1.0;
        if (into < ramp) g *= 0.5 - 0.5 * std::cos(kPi * into / ramp);
        if (from_end < ramp) {
          g *= 0.5 - 0.5 * std::cos(kPi * from_end / ramp);
        }
        gate[i] = g;
      }
      t = seg_end + pause;
    }
  }

  std::vector<double> samples(n, 0.0);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;

    // Slow vibrato and formant drift make every syllable spectrally alive.
    const double f0 = f0_base * (1.0 + 0.03 * std::sin(2.0 * kPi * 5.0 * t));
    const double drift = std::sin(2.0 * kPi * 0.31 * t);
    formant1.tune(f1_base * (1.0 + 0.12 * drift), 80.0, rate);
    formant2.tune(f2_base * (1.0 - 0.08 * drift), 110.0, rate);
    formant3.tune(f3_base, 160.0, rate);

    phase += f0 / rate;
    if (phase >= 1.0) phase -= 1.0;
    // Soft glottal pulse: narrow peak once per cycle.
    const double pulse = std::pow(std::max(0.0, std::cos(kPi * phase)), 8.0);
    const double breath = 0.18 * noise(rng);
    const double excitation = (pulse + breath) * gate[i];

    const double voiced = formant1.tick(excitation) +
                          0.7 * formant2.tick(excitation) +
                          0.4 * formant3.tick(excitation);
    // Unvoiced sibilance bursts ride on the gate edges.
    const double hiss = 0.05 * noise(rng) * gate[i];
    samples[i] = voiced + hiss;
  }

  double peak = 0.0;
  for (double s : samples) peak = std::max(peak, std::abs(s));
  if (peak > 0.0) {
    const double scale = 0.6 / peak;
    for (double& s : samples) s *= scale;
  }

  AudioClip clip;
  clip.samples = std::move(samples);
  clip.sample_rate_hz = sample_rate_hz;
  return clip;
}

std::vector<std::filesystem::path> write_benchmark_fixtures(
    const std::filesystem::path& dir, std::uint32_t sample_rate_hz) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& spec : benchmark_fixture_specs()) {
    const AudioClip clip =
        synthesize_speech_like(spec.duration_s, sample_rate_hz, spec.seed);
    const std::vector<std::uint8_t> bytes =
        encode_wav(clip.samples, clip.sample_rate_hz);
    const auto path = dir / (spec.label + ".wav");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IngestError("cannot write fixture " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) {
      throw IngestError("failed writing fixture " + path.string());
    }
    paths.push_back(path);
  }
  return paths;
}

}  // namespace speechfog
