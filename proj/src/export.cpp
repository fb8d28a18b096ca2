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

#include "speechfog/export.hpp"

#include <charconv>
#include <sstream>

#include "speechfog/errors.hpp"
#include "speechfog/file_id.hpp"
#include "speechfog/wav.hpp"

namespace speechfog {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw ExportError("failed to format a double");
  }
  return std::string(buf, ptr);
}

std::string series_csv(const FeatureSeries& series) {
  std::ostringstream out;
  out << "time_s,loudness_phon,sc_hz,zcr,ste\n";
  for (std::size_t i = 0; i < series.frame_count(); ++i) {
    out << format_double(series.frame_times_s[i]) << ','
        << format_double(series.loudness_phon[i]) << ','
        << format_double(series.sc_hz[i]) << ','
        << format_double(series.zcr[i]) << ','
        << format_double(series.ste[i]) << '\n';
  }
  return out.str();
}

std::string summary_csv(
    const std::vector<std::pair<std::string, FeatureSummary>>& summaries) {
  std::ostringstream out;
  out << "file,mean_zcr,mean_sc_hz,mean_ste,mean_loudness_phon,frame_count,"
         "duration_s\n";
  for (const auto& [label, s] : summaries) {
    out << label << ',' << format_double(s.mean_zcr) << ','
        << format_double(s.mean_sc_hz) << ',' << format_double(s.mean_ste)
        << ',' << format_double(s.mean_loudness_phon) << ',' << s.frame_count
        << ',' << format_double(s.duration_s) << '\n';
  }
  return out.str();
}

FeatureSeries series_for_record(
    const FeatureRecord& record,
    const std::optional<std::filesystem::path>& raw_file) {
  if (record.series) {
    return *record.series;
  }
  if (!raw_file) {
    throw ExportError("record " + record.record_id +
                      " was persisted without a series and no raw file was "
                      "given to recompute it from");
  }

  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file_bytes(*raw_file);
  } catch (const std::exception& e) {
    throw ExportError("raw file for record " + record.record_id +
                      " is unavailable: " + e.what());
  }
  const AudioClip clip = decode_wav(bytes).first;

  // Recompute under the record's own snapshot so the contours are the ones
  // the stored summary came from, even if the live config moved on.
  const ConfigSnapshot& snap = record.config_snapshot;
  LoudnessParams loudness;
  loudness.calibration_db_spl = snap.calibration_db_spl;
  loudness.n_bark_bands = snap.n_bark_bands;
  loudness.compress_exponent = snap.compress_exponent;
  loudness.reference_energy = snap.reference_energy;
  return extract_features(clip, snap.frame, loudness);
}

}  // namespace speechfog
