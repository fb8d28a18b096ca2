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

#ifndef SPEECHFOG_TESTS_SUPPORT_HELPERS_HPP
#define SPEECHFOG_TESTS_SUPPORT_HELPERS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace speechfog::test {

inline constexpr double kPi = 3.14159265358979323846;

// ---- Reference implementations, deliberately the slow/obvious versions ----

// Counts strict sign flips between adjacent samples without multiplying,
// so it cannot share a rounding path with the implementation under test.
inline double oracle_zcr(std::span<const double> frame) {
  std::size_t flips = 0;
  for (std::size_t i = 1; i < frame.size(); ++i) {
    const bool neg_pos = frame[i - 1] < 0.0 && frame[i] > 0.0;
    const bool pos_neg = frame[i - 1] > 0.0 && frame[i] < 0.0;
    if (neg_pos || pos_neg) ++flips;
  }
  return static_cast<double>(flips) /
         static_cast<double>(frame.size() - 1);
}

inline double oracle_ste(std::span<const double> frame) {
  double acc = 0.0;
  for (double s : frame) acc += s * s;
  return acc / static_cast<double>(frame.size());
}

// O(N^2) DFT over an already windowed and zero-padded buffer; returns the
// one-sided magnitudes (fft_size/2 + 1 bins).
inline std::vector<double> oracle_dft_magnitudes(
    const std::vector<double>& padded) {
  const std::size_t n = padded.size();
  std::vector<double> mags(n / 2 + 1, 0.0);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double angle =
          -2.0 * kPi * static_cast<double>(k) * static_cast<double>(i) /
          static_cast<double>(n);
      acc += padded[i] * std::complex<double>(std::cos(angle),
                                              std::sin(angle));
    }
    mags[k] = std::abs(acc);
  }
  return mags;
}

inline std::vector<double> hann_window(std::span<const double> frame) {
  const std::size_t n = frame.size();
  std::vector<double> out(frame.begin(), frame.end());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] *= 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) /
                                    static_cast<double>(n - 1)));
  }
  return out;
}

inline std::vector<double> zero_pad(std::vector<double> v, std::size_t n) {
  v.resize(n, 0.0);
  return v;
}

inline double oracle_centroid(const std::vector<double>& mags,
                              double bin_hz) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    num += static_cast<double>(k) * bin_hz * mags[k];
    den += mags[k];
  }
  return den == 0.0 ? 0.0 : num / den;
}

// ---- Signal synthesis ----

inline std::vector<double> make_sine(double freq_hz, double rate_hz,
                                     std::size_t n, double amplitude = 1.0,
                                     double phase = 0.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = amplitude * std::sin(2.0 * kPi * freq_hz *
                                    static_cast<double>(i) / rate_hz +
                                phase);
  }
  return v;
}

inline std::vector<double> make_noise(std::mt19937& rng, std::size_t n,
                                      double amplitude = 1.0) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> v(n);
  for (auto& s : v) s = dist(rng);
  return v;
}

// ---- Filesystem scratch space ----

class TempDir {
 public:
  TempDir() {
    auto pattern = (std::filesystem::temp_directory_path() /
                    "speechfog-test-XXXXXX")
                       .string();
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    if (::mkdtemp(buf.data()) == nullptr) {
      throw std::runtime_error("mkdtemp failed");
    }
    path_ = buf.data();
  }

  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace speechfog::test

#endif  // SPEECHFOG_TESTS_SUPPORT_HELPERS_HPP
