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
#include <numeric>
#include <random>

#include <doctest.h>

#include "speechfog/errors.hpp"
#include "support/helpers.hpp"

namespace speechfog {
namespace {

ResolvedLoudnessParams resolved_with_ref(double reference_energy) {
  ResolvedLoudnessParams p;
  p.calibration_db_spl = 94.0;
  p.n_bark_bands = 24;
  p.compress_exponent = 0.23;
  p.reference_energy = reference_energy;
  return p;
}

TEST_CASE("critical-band rate hits known anchor points") {
  // Reference values computed from the closed form with independent tooling.
  CHECK(hz_to_bark(0.0) == 0.0);
  CHECK(hz_to_bark(100.0) ==
        doctest::Approx(0.9867265581717046).epsilon(1e-12));
  CHECK(hz_to_bark(500.0) ==
        doctest::Approx(4.73646658243365).epsilon(1e-12));
  CHECK(hz_to_bark(1000.0) ==
        doctest::Approx(8.510531510721993).epsilon(1e-12));
  CHECK(hz_to_bark(4000.0) ==
        doctest::Approx(17.258916587789276).epsilon(1e-12));
  CHECK(hz_to_bark(22050.0) ==
        doctest::Approx(24.740177670804755).epsilon(1e-12));
  CHECK_THROWS_AS(hz_to_bark(-1.0), DomainError);
}

TEST_CASE("critical-band rate is monotone") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> freq(0.0, 22050.0);
  for (int trial = 0; trial < 200; ++trial) {
    double a = freq(rng);
    double b = freq(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    CHECK(hz_to_bark(a) < hz_to_bark(b));
  }
}

TEST_CASE("bark partition conserves power below the ceiling") {
  const auto params = resolved_with_ref(1.0);

  SUBCASE("integer magnitudes partition exactly") {
    // With small-integer magnitudes every |X|^2 is exactly representable,
    // so the partition must conserve the sum bit for bit (bands are summed
    // in bin order, matching left-to-right addition).
    SpectrumFrame spec;
    spec.bin_hz = 50.0;  // top bin 50*256 = 12.8 kHz, under the 24-Bark edge
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> mag(0, 12);
    spec.magnitudes.resize(257);
    for (auto& m : spec.magnitudes) m = static_cast<double>(mag(rng));

    const auto bands = bark_band_energies(spec, params);
    REQUIRE(bands.size() == 24);

    double direct = 0.0;
    for (double m : spec.magnitudes) direct += m * m;
    // Integer sums up to ~257*144 fit exactly in a double, so both
    // accumulation orders give the identical value.
    const double partitioned =
        std::accumulate(bands.begin(), bands.end(), 0.0);
    CHECK(partitioned == direct);
  }

  SUBCASE("random magnitudes partition within 1e-12 relative") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> mag(0.0, 3.0);
    SpectrumFrame spec;
    spec.bin_hz = 40.0;
    spec.magnitudes.resize(300);  // top bin 11.96 kHz
    for (auto& m : spec.magnitudes) m = mag(rng);

    const auto bands = bark_band_energies(spec, params);
    double direct = 0.0;
    for (double m : spec.magnitudes) direct += m * m;
    const double partitioned =
        std::accumulate(bands.begin(), bands.end(), 0.0);
    CHECK(partitioned == doctest::Approx(direct).epsilon(1e-12));
  }

  SUBCASE("bins at or above the band ceiling are dropped") {
    SpectrumFrame spec;
    spec.bin_hz = 16000.0;  // bin 1 sits at 16 kHz, beyond 24 Bark
    spec.magnitudes = {0.0, 5.0};
    const auto bands = bark_band_energies(spec, params);
    CHECK(std::accumulate(bands.begin(), bands.end(), 0.0) == 0.0);
  }
}

TEST_CASE("tenfold band energy multiplies specific loudness by 10^0.23") {
  const auto params = resolved_with_ref(0.01);
  std::vector<double> energies = {0.5, 2.0, 1e-4, 7.3};
  std::vector<double> scaled = energies;
  for (auto& e : scaled) e *= 10.0;

  const auto base = specific_loudness(energies, params);
  const auto boosted = specific_loudness(scaled, params);
  const double want_ratio = std::pow(10.0, 0.23);
  for (std::size_t b = 0; b < base.size(); ++b) {
    REQUIRE(base[b] > 0.0);
    CHECK(boosted[b] / base[b] ==
          doctest::Approx(want_ratio).epsilon(1e-6));
  }
}

TEST_CASE("zero band energy gives exactly zero specific loudness") {
  const auto params = resolved_with_ref(0.5);
  const auto specific = specific_loudness({0.0, 1.0, 0.0}, params);
  CHECK(specific[0] == 0.0);
  CHECK(specific[1] > 0.0);
  CHECK(specific[2] == 0.0);
}

TEST_CASE("doubling sone adds exactly ten phon") {
  for (double sone : {1.0, 0.5, 3.7, 16.0}) {
    CHECK(loudness_level_phon(2.0 * sone) - loudness_level_phon(sone) ==
          doctest::Approx(10.0).epsilon(1e-12));
  }
  CHECK(loudness_level_phon(1.0) == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(loudness_level_phon(2.0) == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(loudness_level_phon(4.0) == doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("loudness level clamps at the floor") {
  CHECK(loudness_level_phon(0.0) == kLoudnessFloorPhon);
  CHECK(loudness_level_phon(kLoudnessFloorSone / 2.0) == kLoudnessFloorPhon);
  // The clamp is continuous: the floor sone maps to the floor phon.
  CHECK(loudness_level_phon(kLoudnessFloorSone) ==
        doctest::Approx(kLoudnessFloorPhon).epsilon(1e-12));
}

TEST_CASE("total loudness is monotone in every band energy") {
  const auto params = resolved_with_ref(0.02);
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> mag(0.0, 2.0);
  std::vector<double> energies(24);
  for (auto& e : energies) e = mag(rng);

  const double base = total_loudness_sone(specific_loudness(energies, params));
  for (std::size_t b = 0; b < energies.size(); ++b) {
    auto bumped = energies;
    bumped[b] += 0.5;
    const double grown =
        total_loudness_sone(specific_loudness(bumped, params));
    CHECK(grown > base);
  }
}

TEST_CASE("amplitude gain shifts unclamped phon by 4.6 log2 g") {
  // Scaling a waveform by g scales every band energy by g^2, every band's
  // specific loudness by (g^2)^0.23, the total by the same factor, and the
  // level by 10 log2(g^0.46) = 4.6 log2(g).
  const auto params = resolved_with_ref(1e-4);
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::vector<double> energies(24);
  for (auto& e : energies) e = mag(rng);

  for (double g : {0.5, 0.25, 2.0}) {
    auto scaled = energies;
    for (auto& e : scaled) e *= g * g;

    const double base_phon =
        loudness_level_phon(total_loudness_sone(specific_loudness(energies, params)));
    const double scaled_phon =
        loudness_level_phon(total_loudness_sone(specific_loudness(scaled, params)));
    REQUIRE(base_phon > kLoudnessFloorPhon);
    REQUIRE(scaled_phon > kLoudnessFloorPhon);
    CHECK(scaled_phon - base_phon ==
          doctest::Approx(4.6 * std::log2(g)).epsilon(1e-6));
  }
}

TEST_CASE("sine calibration anchors the reference energy") {
  FrameConfig cfg;
  LoudnessParams params;  // reference_energy unset: auto-calibrate

  const double ref = calibrate_reference_energy(cfg, 44100, params);
  CHECK(ref > 0.0);
  // Deterministic: same inputs, same anchor.
  CHECK(calibrate_reference_energy(cfg, 44100, params) == ref);

  const auto resolved = resolve_loudness(params, cfg, 44100);
  CHECK(resolved.reference_energy == ref);

  // A full-scale 1 kHz sine was pinned to 94 dB SPL, and the reference is
  // its 1 kHz-band energy backed off by 54 dB, so the band's specific
  // loudness must come out at (10^5.4)^0.23.
  const std::size_t n = cfg.window_samples(44100);
  const auto sine = test::make_sine(1000.0, 44100.0, n);
  const auto spec = magnitude_spectrum(sine, cfg, 44100);
  const auto bands = bark_band_energies(spec, resolved);
  const auto specific = specific_loudness(bands, resolved);

  const auto band_1khz = static_cast<std::size_t>(hz_to_bark(1000.0));
  REQUIRE(band_1khz == 8);
  CHECK(specific[band_1khz] ==
        doctest::Approx(std::pow(10.0, 5.4 * 0.23)).epsilon(1e-9));

  // Backing the sine off to 40 dB SPL (54 dB below full scale) lands the
  // band at one unit of specific loudness: the calibration definition.
  const double g = std::pow(10.0, -54.0 / 20.0);
  const auto quiet = test::make_sine(1000.0, 44100.0, n, g);
  const auto quiet_spec = magnitude_spectrum(quiet, cfg, 44100);
  const auto quiet_bands = bark_band_energies(quiet_spec, resolved);
  const auto quiet_specific = specific_loudness(quiet_bands, resolved);
  CHECK(quiet_specific[band_1khz] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("an explicit reference energy bypasses calibration") {
  FrameConfig cfg;
  LoudnessParams params;
  params.reference_energy = 0.125;
  const auto resolved = resolve_loudness(params, cfg, 8000);
  CHECK(resolved.reference_energy == 0.125);
}

TEST_CASE("loudness params are validated") {
  LoudnessParams bad_exponent;
  bad_exponent.compress_exponent = 1.5;
  CHECK_THROWS_AS(bad_exponent.validate(), ConfigError);

  LoudnessParams bad_bands;
  bad_bands.n_bark_bands = 0;
  CHECK_THROWS_AS(bad_bands.validate(), ConfigError);

  LoudnessParams bad_ref;
  bad_ref.reference_energy = -1.0;
  CHECK_THROWS_AS(bad_ref.validate(), ConfigError);

  CHECK_NOTHROW(LoudnessParams{}.validate());
}

}  // namespace
}  // namespace speechfog
