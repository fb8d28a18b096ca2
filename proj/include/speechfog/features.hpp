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

#ifndef SPEECHFOG_FEATURES_HPP
#define SPEECHFOG_FEATURES_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "speechfog/dsp.hpp"
#include "speechfog/loudness.hpp"

namespace speechfog {

// Per-frame feature contours. All per-frame vectors have identical length;
// frame_times_s are frame centers, strictly increasing by hop.
struct FeatureSeries {
  std::vector<double> frame_times_s;
  std::vector<double> zcr;            // crossings per sample pair, [0, 1]
  std::vector<double> ste;            // mean-square energy, dimensionless
  std::vector<double> sc_hz;          // spectral centroid
  std::vector<double> loudness_sone;
  std::vector<double> loudness_phon;
  std::vector<bool> silent_flags;     // ste below the configured floor
  double duration_s = 0.0;            // source clip duration

  std::size_t frame_count() const { return zcr.size(); }
};

// Per-file averages over non-silent frames. If every frame is silent the
// means fall back to all frames and all_frames_silent marks the summary.
struct FeatureSummary {
  double mean_zcr = 0.0;
  double mean_sc_hz = 0.0;
  double mean_ste = 0.0;
  double mean_loudness_phon = 0.0;
  std::size_t frame_count = 0;
  double duration_s = 0.0;
  bool all_frames_silent = false;
};

// Runs the full short-time chain over the clip: framing, ZCR and energy on
// the raw samples, windowed magnitude spectrum feeding centroid and the
// loudness model. An empty frame sequence yields an empty, valid series.
// Every produced value is a finite double.
FeatureSeries extract_features(const AudioClip& clip, const FrameConfig& cfg,
                               const LoudnessParams& params);

// Arithmetic means per the silent-frame rule above. Throws DomainError on an
// empty series.
FeatureSummary summarize_features(const FeatureSeries& series);

}  // namespace speechfog

#endif  // SPEECHFOG_FEATURES_HPP
