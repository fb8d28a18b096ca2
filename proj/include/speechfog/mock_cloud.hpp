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

#ifndef SPEECHFOG_MOCK_CLOUD_HPP
#define SPEECHFOG_MOCK_CLOUD_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace speechfog {

inline constexpr const char* kUploadPath = "/v1/records";

// Fault knobs for exercising the retry path. Counted faults are deterministic;
// probabilistic ones draw from a seeded RNG.
struct MockCloudFaults {
  int fail_first = 0;         // respond 500 to the first N requests (no commit)
  double drop_ack_prob = 0.0; // commit the batch, then pretend the ack was lost
  int max_delay_ms = 0;       // random per-request delay in [0, max]
  bool reject_schema = false; // respond 400 to everything
  unsigned rng_seed = 1;
};

// In-process stand-in for the cloud ingestion endpoint. Accepts envelope
// POSTs on kUploadPath, dedupes records by record_id, and acks the ids it
// committed, so a retried batch never produces a duplicate.
class MockCloudServer {
 public:
  explicit MockCloudServer(MockCloudFaults faults = {});
  ~MockCloudServer();

  MockCloudServer(const MockCloudServer&) = delete;
  MockCloudServer& operator=(const MockCloudServer&) = delete;

  // Binds and serves on a background thread. port == 0 picks a free port.
  // Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();

  std::string url() const;  // full upload URL, e.g. http://127.0.0.1:49152/v1/records

  std::size_t committed_count() const;
  bool has_record(const std::string& record_id) const;
  std::vector<std::string> committed_ids() const;
  std::uint64_t request_count() const;
  std::uint64_t duplicate_count() const;  // re-sent ids absorbed by dedupe

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;

  mutable std::mutex mutex_;
  MockCloudFaults faults_;
  std::mt19937 rng_;
  std::set<std::string> committed_;
  std::uint64_t requests_ = 0;
  std::uint64_t duplicates_ = 0;
};

}  // namespace speechfog

#endif  // SPEECHFOG_MOCK_CLOUD_HPP
