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

#ifndef SPEECHFOG_SYNC_HPP
#define SPEECHFOG_SYNC_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "speechfog/record.hpp"
#include "speechfog/store.hpp"

namespace speechfog {

// One upload batch. Records are summaries-only unless include_series is set;
// every enclosed record is pending at send time.
struct SyncEnvelope {
  std::string gateway_id;
  int schema_version = kSchemaVersion;
  std::vector<FeatureRecord> records;
  UtcTime sent_at{};
  bool include_series = false;
};

nlohmann::json envelope_to_json(const SyncEnvelope& envelope);

// Exponential backoff with jitter: delay(k) = min(base * factor^(k-1), cap)
// stretched by a uniform factor in [1 - jitter, 1 + jitter].
struct BackoffPolicy {
  double base_s = 1.0;
  double factor = 2.0;
  double cap_s = 300.0;
  double jitter = 0.2;

  double delay_s(int attempt, std::mt19937& rng) const;
};

enum class SyncStatus {
  kSuccess,    // 2xx with an ack
  kTransient,  // network error or 5xx; retry later
  kPermanent,  // schema-level rejection; dead-letter, never drop silently
};

struct SyncResult {
  SyncStatus status = SyncStatus::kTransient;
  std::vector<std::string> accepted;  // record_ids acked by the endpoint
  std::string detail;
};

class CloudClient {
 public:
  virtual ~CloudClient() = default;
  virtual SyncResult post(const SyncEnvelope& envelope) = 0;
};

// POSTs envelopes as JSON to a cloud URL ("http://host:port/path"). An
// optional bearer token is passed through as-is.
class HttpCloudClient : public CloudClient {
 public:
  explicit HttpCloudClient(const std::string& url,
                           const std::string& bearer_token = "");
  SyncResult post(const SyncEnvelope& envelope) override;

 private:
  std::string base_;
  std::string path_;
  std::string bearer_token_;
};

struct SyncSettings {
  std::string gateway_id = "gateway";
  std::size_t max_batch = 16;
  double interval_s = 5.0;
  bool include_series = false;
  BackoffPolicy backoff;
  unsigned rng_seed = std::random_device{}();
};

// Drains pending records from the store into the cloud endpoint. Delivery is
// at-least-once; the content-hash record_id lets the server dedupe, so the
// end-to-end effect is exactly-once per record.
class SyncWorker {
 public:
  SyncWorker(RecordStore& store, CloudClient& client, SyncSettings settings);
  ~SyncWorker();

  // One cycle: load a batch, send it, apply the outcome. Returns nullopt
  // when nothing was pending.
  std::optional<SyncResult> run_once();

  void start();
  void stop();

  std::uint64_t batches_attempted() const { return batches_attempted_; }
  int consecutive_failures() const { return consecutive_failures_; }

 private:
  void loop();

  RecordStore& store_;
  CloudClient& client_;
  SyncSettings settings_;
  std::mt19937 rng_;

  std::thread thread_;
  std::mutex wake_mutex_;
  std::condition_variable wake_cv_;
  std::atomic<bool> stopping_{false};
  std::atomic<std::uint64_t> batches_attempted_{0};
  std::atomic<int> consecutive_failures_{0};
};

}  // namespace speechfog

#endif  // SPEECHFOG_SYNC_HPP
