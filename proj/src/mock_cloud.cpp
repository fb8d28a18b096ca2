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

#include "speechfog/mock_cloud.hpp"

#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "speechfog/errors.hpp"
#include "speechfog/record.hpp"

namespace speechfog {

using nlohmann::json;

MockCloudServer::MockCloudServer(MockCloudFaults faults)
    : server_(std::make_unique<httplib::Server>()),
      faults_(faults),
      rng_(faults.rng_seed) {
  server_->Post(kUploadPath, [this](const httplib::Request& req,
                                    httplib::Response& res) {
    int delay_ms = 0;
    bool fail_plain = false;
    bool drop_ack = false;
    bool reject = false;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      ++requests_;
      reject = faults_.reject_schema;
      if (faults_.fail_first > 0) {
        --faults_.fail_first;
        fail_plain = true;
      }
      if (faults_.max_delay_ms > 0) {
        delay_ms = std::uniform_int_distribution<int>(
            0, faults_.max_delay_ms)(rng_);
      }
      if (faults_.drop_ack_prob > 0.0) {
        drop_ack = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) <
                   faults_.drop_ack_prob;
      }
    }
    if (delay_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
    }
    if (fail_plain) {
      res.status = 500;
      res.set_content(R"({"error":"injected failure"})", "application/json");
      return;
    }

    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      res.set_content(R"({"error":"invalid json"})", "application/json");
      return;
    }
    if (reject || !body.contains("schema_version") ||
        body["schema_version"].get<int>() != kSchemaVersion) {
      res.status = 400;
      res.set_content(R"({"error":"unsupported schema_version"})",
                      "application/json");
      return;
    }

    json accepted = json::array();
    {
      std::lock_guard<std::mutex> lock(mutex_);
      for (const auto& rec : body.value("records", json::array())) {
        const std::string id = rec.at("record_id").get<std::string>();
        if (!committed_.insert(id).second) {
          ++duplicates_;
        }
        accepted.push_back(id);
      }
    }

    if (drop_ack) {
      // The commit above stands; the client sees a failure and retries, and
      // the dedupe set absorbs the duplicate delivery.
      res.status = 500;
      res.set_content(R"({"error":"injected ack loss"})", "application/json");
      return;
    }
    res.status = 200;
    res.set_content(json{{"accepted", accepted}}.dump(), "application/json");
  });
}

MockCloudServer::~MockCloudServer() { stop(); }

int MockCloudServer::start(const std::string& host, int port) {
  host_ = host;
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    if (!server_->bind_to_port(host, port)) {
      throw ConfigError("mock cloud failed to bind " + host + ":" +
                        std::to_string(port));
    }
    port_ = port;
  }
  if (port_ <= 0) {
    throw ConfigError("mock cloud failed to bind on " + host);
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void MockCloudServer::stop() {
  if (server_) {
    server_->stop();
  }
  if (thread_.joinable()) {
    thread_.join();
  }
}

std::string MockCloudServer::url() const {
  return "http://" + host_ + ":" + std::to_string(port_) + kUploadPath;
}

std::size_t MockCloudServer::committed_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return committed_.size();
}

bool MockCloudServer::has_record(const std::string& record_id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return committed_.count(record_id) > 0;
}

std::vector<std::string> MockCloudServer::committed_ids() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return {committed_.begin(), committed_.end()};
}

std::uint64_t MockCloudServer::request_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return requests_;
}

std::uint64_t MockCloudServer::duplicate_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return duplicates_;
}

}  // namespace speechfog
