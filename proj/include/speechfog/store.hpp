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

#ifndef SPEECHFOG_STORE_HPP
#define SPEECHFOG_STORE_HPP

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "speechfog/record.hpp"

namespace speechfog {

// Durable local store for feature records.
//
// Layout under the data directory:
//   records.ndjson   — append-only, one JSON record per line
//   sync_state.log   — append-only "<state> <record_id>" transition lines
//   quarantine.log   — raw lines salvaged from a corrupt records tail
//
// A record exists once it has been appended and fsynced; its state starts
// pending and moves monotonically to synced or dead_letter through the index
// log. Every method is safe to call from multiple threads; there is a single
// serialized writer internally.
class RecordStore {
 public:
  explicit RecordStore(const std::filesystem::path& data_dir);
  ~RecordStore();

  RecordStore(const RecordStore&) = delete;
  RecordStore& operator=(const RecordStore&) = delete;

  // Appends durably and returns the stored record. Persisting an id that is
  // already stored is an idempotent no-op returning the existing copy.
  FeatureRecord persist(const FeatureRecord& record);

  // Pending records, oldest first, up to limit.
  std::vector<FeatureRecord> load_pending(std::size_t limit) const;

  struct MarkResult {
    std::vector<std::string> applied;
    std::vector<std::string> unchanged;  // already in a terminal state
    std::vector<std::string> unknown;
  };

  // pending -> synced / dead_letter. Transitions are durable before the call
  // returns; terminal states never move backwards. Unknown ids are reported
  // while the rest still apply.
  MarkResult mark_synced(const std::vector<std::string>& record_ids);
  MarkResult mark_dead_letter(const std::vector<std::string>& record_ids);

  bool contains(const std::string& record_id) const;
  std::optional<FeatureRecord> find(const std::string& record_id) const;
  std::optional<SyncState> state_of(const std::string& record_id) const;

  std::size_t record_count() const;
  std::size_t count_in_state(SyncState s) const;

  const std::filesystem::path& records_path() const { return records_path_; }
  const std::filesystem::path& quarantine_path() const {
    return quarantine_path_;
  }

 private:
  void recover_records();
  void recover_states();
  void append_durable(int fd, const std::string& line,
                      const std::filesystem::path& path);
  MarkResult mark(const std::vector<std::string>& ids, SyncState target);

  std::filesystem::path records_path_;
  std::filesystem::path state_path_;
  std::filesystem::path quarantine_path_;
  int records_fd_ = -1;
  int state_fd_ = -1;

  mutable std::mutex mutex_;
  std::vector<FeatureRecord> records_;  // append order == processed order
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, SyncState> states_;
};

}  // namespace speechfog

#endif  // SPEECHFOG_STORE_HPP
