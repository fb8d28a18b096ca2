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

#include "speechfog/sync.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <httplib.h>

#include "speechfog/errors.hpp"

namespace speechfog {

using nlohmann::json;

json envelope_to_json(const SyncEnvelope& envelope) {
  json records = json::array();
  for (const auto& rec : envelope.records) {
    records.push_back(record_to_json(rec, envelope.include_series));
  }
  return json{
      {"gateway_id", envelope.gateway_id},
      {"schema_version", envelope.schema_version},
      {"sent_at", format_utc_ms(envelope.sent_at)},
      {"records", std::move(records)},
  };
}

double BackoffPolicy::delay_s(int attempt, std::mt19937& rng) const {
  if (attempt < 1) attempt = 1;
  double nominal = base_s * std::pow(factor, attempt - 1);
  nominal = std::min(nominal, cap_s);
  std::uniform_real_distribution<double> stretch(1.0 - jitter, 1.0 + jitter);
  return nominal * stretch(rng);
}

namespace {

// Splits "http://host:port/some/path" into client base and request path.
void split_url(const std::string& url, std::string& base, std::string& path) {
  auto scheme_end = url.find("://");
  auto path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) {
    base = url;
    path = "/";
  } else {
    base = url.substr(0, path_start);
    path = url.substr(path_start);
  }
}

}  // namespace

HttpCloudClient::HttpCloudClient(const std::string& url,
                                 const std::string& bearer_token)
    : bearer_token_(bearer_token) {
  if (url.empty()) {
    throw ConfigError("cloud url must not be empty");
  }
  split_url(url, base_, path_);
}

SyncResult HttpCloudClient::post(const SyncEnvelope& envelope) {
  httplib::Client client(base_);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(30, 0);
  if (!bearer_token_.empty()) {
    client.set_bearer_token_auth(bearer_token_);
  }

  const std::string body = envelope_to_json(envelope).dump();
  auto res = client.Post(path_, body, "application/json");

  SyncResult result;
  if (!res) {
    result.status = SyncStatus::kTransient;
    result.detail = "connection failed: " + httplib::to_string(res.error());
    return result;
  }
  if (res->status >= 200 && res->status < 300) {
    try {
      auto ack = json::parse(res->body);
      for (const auto& id : ack.at("accepted")) {
        result.accepted.push_back(id.get<std::string>());
      }
      result.status = SyncStatus::kSuccess;
    } catch (const json::exception& e) {
      // A 2xx without a parseable ack gives no proof of receipt; keep the
      // records pending and try again.
      result.status = SyncStatus::kTransient;
      result.detail = std::string("malformed ack: ") + e.what();
    }
    return result;
  }
  if (res->status >= 400 && res->status < 500) {
    result.status = SyncStatus::kPermanent;
    result.detail = "rejected with status " + std::to_string(res->status) +
                    ": " + res->body;
    return result;
  }
  result.status = SyncStatus::kTransient;
  result.detail = "server error " + std::to_string(res->status);
  return result;
}

SyncWorker::SyncWorker(RecordStore& store, CloudClient& client,
                       SyncSettings settings)
    : store_(store),
      client_(client),
      settings_(std::move(settings)),
      rng_(settings_.rng_seed) {}

SyncWorker::~SyncWorker() { stop(); }

std::optional<SyncResult> SyncWorker::run_once() {
  auto batch = store_.load_pending(settings_.max_batch);
  if (batch.empty()) {
    return std::nullopt;
  }

  SyncEnvelope envelope;
  envelope.gateway_id = settings_.gateway_id;
  envelope.records = std::move(batch);
  envelope.sent_at = utc_now();
  envelope.include_series = settings_.include_series;

  ++batches_attempted_;
  SyncResult result = client_.post(envelope);

  switch (result.status) {
    case SyncStatus::kSuccess: {
      store_.mark_synced(result.accepted);
      consecutive_failures_ = 0;
      break;
    }
    case SyncStatus::kPermanent: {
      std::vector<std::string> ids;
      ids.reserve(envelope.records.size());
      for (const auto& rec : envelope.records) ids.push_back(rec.record_id);
      store_.mark_dead_letter(ids);
      consecutive_failures_ = 0;
      break;
    }
    case SyncStatus::kTransient: {
      // Leave the batch pending; the caller schedules the retry.
      ++consecutive_failures_;
      break;
    }
  }
  return result;
}

void SyncWorker::start() {
  if (thread_.joinable()) return;
  stopping_ = false;
  thread_ = std::thread([this] { loop(); });
}

void SyncWorker::stop() {
  stopping_ = true;
  wake_cv_.notify_all();
  if (thread_.joinable()) {
    thread_.join();
  }
}

void SyncWorker::loop() {
  while (!stopping_) {
    auto result = run_once();

    double wait_s = settings_.interval_s;
    if (result && result->status == SyncStatus::kTransient) {
      wait_s = settings_.backoff.delay_s(consecutive_failures_, rng_);
    } else if (result && result->status == SyncStatus::kSuccess &&
               !result->accepted.empty() &&
               store_.count_in_state(SyncState::kPending) > 0) {
      // Keep draining a backlog instead of sleeping between batches.
      continue;
    }

    std::unique_lock<std::mutex> lock(wake_mutex_);
    wake_cv_.wait_for(lock, std::chrono::duration<double>(wait_s),
                      [this] { return stopping_.load(); });
  }
}

}  // namespace speechfog
