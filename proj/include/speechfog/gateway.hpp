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

#ifndef SPEECHFOG_GATEWAY_HPP
#define SPEECHFOG_GATEWAY_HPP

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "speechfog/config.hpp"
#include "speechfog/inbox.hpp"
#include "speechfog/record.hpp"
#include "speechfog/store.hpp"
#include "speechfog/sync.hpp"

namespace httplib {
class Server;
}

namespace speechfog {

struct HealthStatus {
  double uptime_s = 0.0;
  std::uint64_t files_processed = 0;
  std::uint64_t files_rejected = 0;
  std::size_t records_pending = 0;
  std::size_t records_synced = 0;
  std::size_t records_dead_letter = 0;
  std::string last_error;
  std::string gateway_id;
};

nlohmann::json health_to_json(const HealthStatus& h);

struct ProcessOutcome {
  bool ok = false;
  bool duplicate = false;  // content already in the store; no new record
  FeatureRecord record;    // valid when ok
  std::string error;       // reject reason when !ok
};

// Ties the pipeline together: inbox events in, durable feature records out,
// plus background sync and runtime reconfiguration. Thread-safe.
class Gateway {
 public:
  explicit Gateway(GatewayConfig cfg);
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  // Decode -> extract -> summarize -> persist for one settled inbox event.
  // Failures move the file to <data_dir>/rejects next to a .reason.txt and
  // never throw; processing continues with the next file.
  ProcessOutcome process_event(const InboxEvent& event);

  // Hashes the file and runs process_event. Content already in the store
  // reports duplicate=true and leaves the store untouched.
  ProcessOutcome process_path(const std::filesystem::path& path);

  // One watcher round against the inbox (settle rule applies).
  std::vector<InboxEvent> poll_inbox();

  // Current config (copy) and serialized remote updates. apply_update
  // validates first and only then swaps the running config; subsequent
  // files use the new parameters, in-flight files keep their snapshot.
  GatewayConfig config() const;
  GatewayConfig apply_update(const ConfigUpdate& update);

  HealthStatus health() const;
  RecordStore& store() { return store_; }
  const std::filesystem::path& rejects_dir() const { return rejects_dir_; }

  // Background mode: watcher thread + worker pool (+ sync worker when a
  // cloud URL is configured). stop() is idempotent and joins everything.
  void start();
  void stop();

  // Blocks until the store holds content for every current inbox event or
  // the deadline passes; used by one-shot CLI flows and tests.
  bool drain_inbox(double timeout_s);

 private:
  void watcher_loop();
  void worker_loop();
  void note_error(const std::string& message);
  void reject_file(const std::filesystem::path& path,
                   const std::string& reason);

  mutable std::mutex config_mutex_;
  GatewayConfig cfg_;

  RecordStore store_;
  std::filesystem::path rejects_dir_;

  std::unique_ptr<HttpCloudClient> cloud_client_;
  std::unique_ptr<SyncWorker> sync_worker_;

  std::atomic<std::uint64_t> processed_{0};
  std::atomic<std::uint64_t> rejected_{0};
  std::atomic<int> in_flight_{0};
  mutable std::mutex error_mutex_;
  std::string last_error_;
  UtcTime started_at_;
  std::chrono::steady_clock::time_point steady_started_;

  std::mutex queue_mutex_;
  std::condition_variable queue_cv_;
  std::deque<InboxEvent> queue_;
  std::atomic<bool> stopping_{false};
  std::thread watcher_thread_;
  std::vector<std::thread> worker_threads_;
  std::unique_ptr<InboxWatcher> watcher_;
};

// Admin endpoint: GET /config, PUT /config (partial update), GET /health.
// Updates are applied atomically in arrival order.
class AdminServer {
 public:
  AdminServer(Gateway& gateway, std::string host, int port);
  ~AdminServer();

  AdminServer(const AdminServer&) = delete;
  AdminServer& operator=(const AdminServer&) = delete;

  // Binds and serves on a background thread; throws ConfigError when the
  // address is taken. Returns the bound port (useful with port 0).
  int start();
  void stop();

  std::string base_url() const;

 private:
  Gateway& gateway_;
  std::string host_;
  int port_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace speechfog

#endif  // SPEECHFOG_GATEWAY_HPP
