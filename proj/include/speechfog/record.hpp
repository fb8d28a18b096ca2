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

#ifndef SPEECHFOG_RECORD_HPP
#define SPEECHFOG_RECORD_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "speechfog/dsp.hpp"
#include "speechfog/features.hpp"
#include "speechfog/loudness.hpp"
#include "speechfog/timeutil.hpp"

namespace speechfog {

// Wire/disk schema version for records and sync envelopes.
constexpr int kSchemaVersion = 1;

enum class SyncState { kPending, kSynced, kDeadLetter };

const char* sync_state_name(SyncState s);

// Exact analysis parameters a record was produced with. reference_energy is
// always the resolved value so the record is reproducible even when the
// gateway runs with auto-calibration.
struct ConfigSnapshot {
  FrameConfig frame;
  double calibration_db_spl = 0.0;
  int n_bark_bands = 0;
  double compress_exponent = 0.0;
  double reference_energy = 0.0;
};

// The persisted, sync-able unit: one processed speech file.
struct FeatureRecord {
  std::string record_id;  // content hash of the source file
  std::string source_name;
  std::string task_label;  // optional, e.g. "S1"
  UtcTime captured_at{};
  UtcTime processed_at{};
  double duration_s = 0.0;
  std::uint64_t size_bytes = 0;
  double processing_time_s = 0.0;
  ConfigSnapshot config_snapshot;
  FeatureSummary summary;
  bool series_included = false;
  std::optional<FeatureSeries> series;
  SyncState sync_state = SyncState::kPending;  // held in the store index
};

// Serialization round-trips doubles exactly. sync_state travels in the store
// index, not in the record body, so a stale copy can never shadow the index.
nlohmann::json record_to_json(const FeatureRecord& r, bool include_series);
FeatureRecord record_from_json(const nlohmann::json& j);

nlohmann::json summary_to_json(const FeatureSummary& s);
FeatureSummary summary_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const FeatureSeries& s);
FeatureSeries series_from_json(const nlohmann::json& j);

nlohmann::json config_snapshot_to_json(const ConfigSnapshot& c);
ConfigSnapshot config_snapshot_from_json(const nlohmann::json& j);

}  // namespace speechfog

#endif  // SPEECHFOG_RECORD_HPP
