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

#include "speechfog/features.hpp"

#include "speechfog/errors.hpp"

namespace speechfog {

FeatureSeries extract_features(const AudioClip& clip, const FrameConfig& cfg,
                               const LoudnessParams& params) {
  const std::vector<Frame> frames = frame_signal(clip, cfg);
  const ResolvedLoudnessParams loud =
      resolve_loudness(params, cfg, clip.sample_rate_hz);

  FeatureSeries series;
  series.duration_s = clip.duration_s();
  const std::size_t count = frames.size();
  series.frame_times_s.reserve(count);
  series.zcr.reserve(count);
  series.ste.reserve(count);
  series.sc_hz.reserve(count);
  series.loudness_sone.reserve(count);
  series.loudness_phon.reserve(count);
  series.silent_flags.reserve(count);

  const double rate = static_cast<double>(clip.sample_rate_hz);
  const double half_window =
      static_cast<double>(cfg.window_samples(clip.sample_rate_hz)) / 2.0;

  for (const Frame& frame : frames) {
    // ZCR and energy act on the raw samples; only the spectral path is
    // windowed.
    const double zcr = zero_crossing_rate(frame.samples);
    const double ste = short_time_energy(frame.samples);
    const SpectrumFrame spec =
        magnitude_spectrum(frame.samples, cfg, clip.sample_rate_hz);
    const double sc = spectral_centroid(spec);
    const std::vector<double> bands = bark_band_energies(spec, loud);
    const double sone = total_loudness_sone(specific_loudness(bands, loud));

    series.frame_times_s.push_back(
        (static_cast<double>(frame.start) + half_window) / rate);
    series.zcr.push_back(zcr);
    series.ste.push_back(ste);
    series.sc_hz.push_back(sc);
    series.loudness_sone.push_back(sone);
    series.loudness_phon.push_back(loudness_level_phon(sone));
    series.silent_flags.push_back(ste < cfg.silence_floor);
  }
  return series;
}

FeatureSummary summarize_features(const FeatureSeries& series) {
  const std::size_t count = series.frame_count();
  if (count == 0) throw DomainError("cannot summarize an empty series");

  std::size_t voiced = 0;
  for (const bool silent : series.silent_flags) {
    if (!silent) ++voiced;
  }

  FeatureSummary summary;
  summary.frame_count = count;
  summary.duration_s = series.duration_s;
  summary.all_frames_silent = voiced == 0;

  // Means over non-silent frames; an all-silent file falls back to all
  // frames so the summary stays defined.
  const bool use_all = summary.all_frames_silent;
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!use_all && series.silent_flags[i]) continue;
    summary.mean_zcr += series.zcr[i];
    summary.mean_sc_hz += series.sc_hz[i];
    summary.mean_ste += series.ste[i];
    summary.mean_loudness_phon += series.loudness_phon[i];
    ++used;
  }
  summary.mean_zcr /= static_cast<double>(used);
  summary.mean_sc_hz /= static_cast<double>(used);
  summary.mean_ste /= static_cast<double>(used);
  summary.mean_loudness_phon /= static_cast<double>(used);
  return summary;
}

}  // namespace speechfog
