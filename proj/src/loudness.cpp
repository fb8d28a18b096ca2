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

#include "speechfog/loudness.hpp"

#include <cmath>
#include <numbers>

#include "speechfog/errors.hpp"

namespace speechfog {

void LoudnessParams::validate() const {
  if (!(compress_exponent > 0.0 && compress_exponent < 1.0)) {
    throw ConfigError("compress_exponent must be in (0, 1)");
  }
  if (n_bark_bands < 1) throw ConfigError("n_bark_bands must be >= 1");
  if (reference_energy.has_value() && !(*reference_energy > 0.0)) {
    throw ConfigError("reference_energy must be > 0");
  }
}

double hz_to_bark(double f_hz) {
  if (f_hz < 0.0) throw DomainError("frequency must be >= 0");
  const double r = f_hz / 7500.0;
  return 13.0 * std::atan(0.00076 * f_hz) + 3.5 * std::atan(r * r);
}

std::vector<double> bark_band_energies(const SpectrumFrame& spec,
                                       const ResolvedLoudnessParams& params) {
  std::vector<double> bands(static_cast<std::size_t>(params.n_bark_bands),
                            0.0);
  for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) {
    const double z = hz_to_bark(static_cast<double>(k) * spec.bin_hz);
    const auto b = static_cast<std::size_t>(z);
    if (b >= bands.size()) continue;  // above the Bark ceiling
    const double mag = spec.magnitudes[k];
    bands[b] += mag * mag;
  }
  return bands;
}

std::vector<double> specific_loudness(const std::vector<double>& band_energies,
                                      const ResolvedLoudnessParams& params) {
  std::vector<double> specific(band_energies.size(), 0.0);
  for (std::size_t b = 0; b < band_energies.size(); ++b) {
    const double e = band_energies[b];
    if (e > 0.0) {
      specific[b] = std::pow(e / params.reference_energy,
                             params.compress_exponent);
    }
  }
  return specific;
}

double total_loudness_sone(const std::vector<double>& specific) {
  double total = 0.0;
  for (const double n : specific) total += n;  // unit Bark band width
  return total;
}

double loudness_level_phon(double n_sone) {
  if (n_sone < kLoudnessFloorSone) return kLoudnessFloorPhon;
  return 40.0 + 10.0 * std::log2(n_sone);
}

double calibrate_reference_energy(const FrameConfig& cfg,
                                  std::uint32_t sample_rate_hz,
                                  const LoudnessParams& params) {
  cfg.validate(sample_rate_hz);
  params.validate();

  // One analysis window of a full-scale 1 kHz sine, processed exactly like a
  // real frame.
  const std::size_t n = cfg.window_samples(sample_rate_hz);
  std::vector<double> tone(n);
  const double step =
      2.0 * std::numbers::pi * 1000.0 / static_cast<double>(sample_rate_hz);
  for (std::size_t i = 0; i < n; ++i) {
    tone[i] = std::sin(step * static_cast<double>(i));
  }
  const SpectrumFrame spec = magnitude_spectrum(tone, cfg, sample_rate_hz);

  ResolvedLoudnessParams probe{params.calibration_db_spl, params.n_bark_bands,
                               params.compress_exponent, 1.0};
  const std::vector<double> bands = bark_band_energies(spec, probe);
  const auto anchor_band = static_cast<std::size_t>(hz_to_bark(1000.0));
  if (anchor_band >= bands.size() || bands[anchor_band] <= 0.0) {
    throw ConfigError("calibration tone fell outside the Bark bands");
  }

  // The full-scale sine sits at calibration_db_spl; scale its band energy
  // down to the 40-dB point, which by definition carries 1 unit of specific
  // loudness.
  const double db_down = params.calibration_db_spl - 40.0;
  return bands[anchor_band] * std::pow(10.0, -db_down / 10.0);
}

ResolvedLoudnessParams resolve_loudness(const LoudnessParams& params,
                                        const FrameConfig& cfg,
                                        std::uint32_t sample_rate_hz) {
  params.validate();
  const double ref =
      params.reference_energy.has_value()
          ? *params.reference_energy
          : calibrate_reference_energy(cfg, sample_rate_hz, params);
  return ResolvedLoudnessParams{params.calibration_db_spl, params.n_bark_bands,
                                params.compress_exponent, ref};
}

}  // namespace speechfog
