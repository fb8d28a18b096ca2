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

#ifndef SPEECHFOG_LOUDNESS_HPP
#define SPEECHFOG_LOUDNESS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "speechfog/dsp.hpp"

namespace speechfog {

// Simplified Bark-band loudness model:
//   - critical-band decomposition over unit-width Bark bands,
//   - per-band compressive power law N'_b = (E_b / E_ref)^alpha,
//   - total loudness as the rectangle-rule Bark integral (unit band width),
//   - sone -> phon via the 1-sone = 40-phon anchor and +10 phon per doubling.
// Threshold-in-quiet and spectral masking are deliberately not modeled.
struct LoudnessParams {
  double calibration_db_spl = 94.0;  // SPL assigned to a full-scale sine
  int n_bark_bands = 24;
  double compress_exponent = 0.23;
  // Band energy that maps to 1 unit of specific loudness. When unset it is
  // derived from the calibration anchor for the frame config and sample rate
  // in use (see calibrate_reference_energy).
  std::optional<double> reference_energy;

  void validate() const;  // throws ConfigError
};

// LoudnessParams with reference_energy resolved to a concrete value > 0.
struct ResolvedLoudnessParams {
  double calibration_db_spl;
  int n_bark_bands;
  double compress_exponent;
  double reference_energy;
};

// Critical-band rate for frequency f >= 0:
//   z(f) = 13 atan(0.00076 f) + 3.5 atan((f / 7500)^2)
// Monotone in f. Throws DomainError for negative f.
double hz_to_bark(double f_hz);

// Sums |X_k|^2 into unit-width Bark bands: band b collects the bins whose
// critical-band rate falls in [b, b+1). Bins at or above n_bark_bands Bark
// are dropped; everything below is partitioned without loss.
std::vector<double> bark_band_energies(const SpectrumFrame& spec,
                                       const ResolvedLoudnessParams& params);

// N'_b = (E_b / reference_energy)^compress_exponent, with N'_b = 0 for
// E_b = 0 so silence stays exactly silent.
std::vector<double> specific_loudness(const std::vector<double>& band_energies,
                                      const ResolvedLoudnessParams& params);

// Rectangle-rule integral over unit-width bands: sum of N'_b.
double total_loudness_sone(const std::vector<double>& specific);

// 40 + 10 log2(N) for N >= 1/64 sone; quieter values clamp to the floor of
// -20 phon so silence stays finite.
double loudness_level_phon(double n_sone);

constexpr double kLoudnessFloorSone = 1.0 / 64.0;
constexpr double kLoudnessFloorPhon = -20.0;

// Anchors the model: a full-scale sine at 1 kHz is defined to sit at
// calibration_db_spl, and the 40-dB point of that scale maps to 1 unit of
// specific loudness in the 1-kHz band. The returned energy depends only on
// the frame config and sample rate, never on clip content.
double calibrate_reference_energy(const FrameConfig& cfg,
                                  std::uint32_t sample_rate_hz,
                                  const LoudnessParams& params);

// Returns params with reference_energy filled in (calibrating if needed).
ResolvedLoudnessParams resolve_loudness(const LoudnessParams& params,
                                        const FrameConfig& cfg,
                                        std::uint32_t sample_rate_hz);

}  // namespace speechfog

#endif  // SPEECHFOG_LOUDNESS_HPP
