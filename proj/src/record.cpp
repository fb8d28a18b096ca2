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

#include "speechfog/record.hpp"

#include "speechfog/errors.hpp"

namespace speechfog {

using nlohmann::json;

const char* sync_state_name(SyncState s) {
  switch (s) {
    case SyncState::kPending:
      return "pending";
    case SyncState::kSynced:
      return "synced";
    case SyncState::kDeadLetter:
      return "dead_letter";
  }
  return "pending";
}

json summary_to_json(const FeatureSummary& s) {
  return json{{"mean_zcr", s.mean_zcr},
              {"mean_sc_hz", s.mean_sc_hz},
              {"mean_ste", s.mean_ste},
              {"mean_loudness_phon", s.mean_loudness_phon},
              {"frame_count", s.frame_count},
              {"duration_s", s.duration_s},
              {"all_frames_silent", s.all_frames_silent}};
}

FeatureSummary summary_from_json(const json& j) {
  FeatureSummary s;
  s.mean_zcr = j.at("mean_zcr").get<double>();
  s.mean_sc_hz = j.at("mean_sc_hz").get<double>();
  s.mean_ste = j.at("mean_ste").get<double>();
  s.mean_loudness_phon = j.at("mean_loudness_phon").get<double>();
  s.frame_count = j.at("frame_count").get<std::size_t>();
  s.duration_s = j.at("duration_s").get<double>();
  s.all_frames_silent = j.at("all_frames_silent").get<bool>();
  return s;
}

json series_to_json(const FeatureSeries& s) {
  return json{{"frame_times_s", s.frame_times_s},
              {"zcr", s.zcr},
              {"ste", s.ste},
              {"sc_hz", s.sc_hz},
              {"loudness_sone", s.loudness_sone},
              {"loudness_phon", s.loudness_phon},
              {"silent_flags", s.silent_flags},
              {"duration_s", s.duration_s}};
}

FeatureSeries series_from_json(const json& j) {
  FeatureSeries s;
  s.frame_times_s = j.at("frame_times_s").get<std::vector<double>>();
  s.zcr = j.at("zcr").get<std::vector<double>>();
  s.ste = j.at("ste").get<std::vector<double>>();
  s.sc_hz = j.at("sc_hz").get<std::vector<double>>();
  s.loudness_sone = j.at("loudness_sone").get<std::vector<double>>();
  s.loudness_phon = j.at("loudness_phon").get<std::vector<double>>();
  s.silent_flags = j.at("silent_flags").get<std::vector<bool>>();
  s.duration_s = j.at("duration_s").get<double>();
  return s;
}

json config_snapshot_to_json(const ConfigSnapshot& c) {
  return json{{"frame",
               {{"window_ms", c.frame.window_ms},
                {"hop_ms", c.frame.hop_ms},
                {"fft_size", c.frame.fft_size},
                {"silence_floor", c.frame.silence_floor},
                {"window", window_fn_name(c.frame.window)}}},
              {"loudness",
               {{"calibration_db_spl", c.calibration_db_spl},
                {"n_bark_bands", c.n_bark_bands},
                {"compress_exponent", c.compress_exponent},
                {"reference_energy", c.reference_energy}}}};
}

ConfigSnapshot config_snapshot_from_json(const json& j) {
  ConfigSnapshot c;
  const json& f = j.at("frame");
  c.frame.window_ms = f.at("window_ms").get<double>();
  c.frame.hop_ms = f.at("hop_ms").get<double>();
  c.frame.fft_size = f.at("fft_size").get<std::uint32_t>();
  c.frame.silence_floor = f.at("silence_floor").get<double>();
  c.frame.window = window_fn_from_name(f.at("window").get<std::string>());
  const json& l = j.at("loudness");
  c.calibration_db_spl = l.at("calibration_db_spl").get<double>();
  c.n_bark_bands = l.at("n_bark_bands").get<int>();
  c.compress_exponent = l.at("compress_exponent").get<double>();
  c.reference_energy = l.at("reference_energy").get<double>();
  return c;
}

json record_to_json(const FeatureRecord& r, bool include_series) {
  json j{{"schema_version", kSchemaVersion},
         {"record_id", r.record_id},
         {"source_name", r.source_name},
         {"captured_at", format_utc_ms(r.captured_at)},
         {"processed_at", format_utc_ms(r.processed_at)},
         {"duration_s", r.duration_s},
         {"size_bytes", r.size_bytes},
         {"processing_time_s", r.processing_time_s},
         {"config_snapshot", config_snapshot_to_json(r.config_snapshot)},
         {"summary", summary_to_json(r.summary)}};
  if (!r.task_label.empty()) j["task_label"] = r.task_label;
  const bool with_series = include_series && r.series.has_value();
  j["series_included"] = with_series;
  if (with_series) j["series"] = series_to_json(*r.series);
  return j;
}

FeatureRecord record_from_json(const json& j) {
  FeatureRecord r;
  r.record_id = j.at("record_id").get<std::string>();
  r.source_name = j.at("source_name").get<std::string>();
  if (j.contains("task_label")) {
    r.task_label = j.at("task_label").get<std::string>();
  }
  r.captured_at = parse_utc_ms(j.at("captured_at").get<std::string>());
  r.processed_at = parse_utc_ms(j.at("processed_at").get<std::string>());
  r.duration_s = j.at("duration_s").get<double>();
  r.size_bytes = j.at("size_bytes").get<std::uint64_t>();
  r.processing_time_s = j.at("processing_time_s").get<double>();
  r.config_snapshot = config_snapshot_from_json(j.at("config_snapshot"));
  r.summary = summary_from_json(j.at("summary"));
  r.series_included = j.at("series_included").get<bool>();
  if (r.series_included && j.contains("series")) {
    r.series = series_from_json(j.at("series"));
  }
  return r;
}

}  // namespace speechfog
