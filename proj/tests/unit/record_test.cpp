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

#include <doctest.h>

#include "speechfog/errors.hpp"

namespace speechfog {
namespace {

FeatureRecord sample_record() {
  FeatureRecord r;
  r.record_id = "0123abcd";
  r.source_name = "S1.wav";
  r.task_label = "S1";
  r.captured_at = parse_utc_ms("2026-08-14T08:00:00.000Z");
  r.processed_at = parse_utc_ms("2026-08-14T08:00:01.500Z");
  r.duration_s = 6.24;
  r.size_bytes = 550412;
  r.processing_time_s = 0.1234567890123;
  r.config_snapshot.frame = FrameConfig{};
  r.config_snapshot.calibration_db_spl = 94.0;
  r.config_snapshot.n_bark_bands = 24;
  r.config_snapshot.compress_exponent = 0.23;
  r.config_snapshot.reference_energy = 3.0517578125e-07;
  r.summary.mean_zcr = 0.04537;
  r.summary.mean_sc_hz = 1000.25;
  r.summary.mean_ste = 0.1250001;
  r.summary.mean_loudness_phon = 61.7;
  r.summary.frame_count = 622;
  r.summary.duration_s = 6.24;

  FeatureSeries series;
  series.frame_times_s = {0.0125, 0.0225};
  series.zcr = {0.1, 0.2};
  series.ste = {0.01, 0.02};
  series.sc_hz = {900.0, 1100.0};
  series.loudness_sone = {1.0, 2.0};
  series.loudness_phon = {40.0, 50.0};
  series.silent_flags = {false, true};
  series.duration_s = 6.24;
  r.series = std::move(series);
  r.series_included = true;
  return r;
}

TEST_CASE("records round-trip through json with exact doubles") {
  const FeatureRecord original = sample_record();
  const auto j = record_to_json(original, /*include_series=*/true);
  const FeatureRecord back = record_from_json(j);

  CHECK(back.record_id == original.record_id);
  CHECK(back.source_name == original.source_name);
  CHECK(back.task_label == original.task_label);
  CHECK(back.captured_at == original.captured_at);
  CHECK(back.processed_at == original.processed_at);
  CHECK(back.duration_s == original.duration_s);
  CHECK(back.size_bytes == original.size_bytes);
  // Bit-exact: doubles must survive serialization unchanged.
  CHECK(back.processing_time_s == original.processing_time_s);
  CHECK(back.config_snapshot.reference_energy ==
        original.config_snapshot.reference_energy);
  CHECK(back.summary.mean_zcr == original.summary.mean_zcr);
  CHECK(back.summary.mean_sc_hz == original.summary.mean_sc_hz);
  CHECK(back.summary.frame_count == original.summary.frame_count);

  REQUIRE(back.series.has_value());
  CHECK(back.series_included);
  CHECK(back.series->zcr == original.series->zcr);
  CHECK(back.series->silent_flags == original.series->silent_flags);
  CHECK(back.series->frame_times_s == original.series->frame_times_s);
}

TEST_CASE("series are stripped from the wire form on request") {
  const FeatureRecord original = sample_record();
  const auto j = record_to_json(original, /*include_series=*/false);
  CHECK_FALSE(j.contains("series"));
  CHECK(j.at("series_included").get<bool>() == false);

  const FeatureRecord back = record_from_json(j);
  CHECK_FALSE(back.series.has_value());
  CHECK_FALSE(back.series_included);
  // The summary still travels.
  CHECK(back.summary.mean_zcr == original.summary.mean_zcr);
}

TEST_CASE("empty task labels are omitted, not serialized as empty") {
  FeatureRecord r = sample_record();
  r.task_label.clear();
  const auto j = record_to_json(r, false);
  CHECK_FALSE(j.contains("task_label"));
  CHECK(record_from_json(j).task_label.empty());
}

TEST_CASE("schema version travels with every record") {
  const auto j = record_to_json(sample_record(), false);
  CHECK(j.at("schema_version").get<int>() == kSchemaVersion);
}

TEST_CASE("sync state is index-owned and never rides in the record body") {
  FeatureRecord r = sample_record();
  r.sync_state = SyncState::kSynced;
  const auto j = record_to_json(r, false);
  CHECK_FALSE(j.contains("sync_state"));
  // Deserialized records start out pending until the index says otherwise.
  CHECK(record_from_json(j).sync_state == SyncState::kPending);
}

TEST_CASE("sync states have stable names") {
  CHECK(sync_state_name(SyncState::kPending) == std::string("pending"));
  CHECK(sync_state_name(SyncState::kSynced) == std::string("synced"));
  CHECK(sync_state_name(SyncState::kDeadLetter) ==
        std::string("dead_letter"));
}

TEST_CASE("malformed record documents are rejected") {
  CHECK_THROWS_AS((void)record_from_json(nlohmann::json::object()),
                  nlohmann::json::exception);
}

}  // namespace
}  // namespace speechfog
