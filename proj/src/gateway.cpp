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

#include "speechfog/gateway.hpp"

#include <sys/stat.h>

#include <chrono>
#include <fstream>
#include <system_error>

#include <httplib.h>

#include "speechfog/errors.hpp"
#include "speechfog/features.hpp"
#include "speechfog/file_id.hpp"
#include "speechfog/wav.hpp"

namespace speechfog {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Steady = std::chrono::steady_clock;

UtcTime file_mtime(const fs::path& path) {
  struct stat st {};
  if (::stat(path.c_str(), &st) != 0) {
    return utc_now();
  }
  return UtcTime{std::chrono::duration_cast<UtcTime::duration>(
      std::chrono::seconds(st.st_mtim.tv_sec) +
      std::chrono::nanoseconds(st.st_mtim.tv_nsec))};
}

}  // namespace

json health_to_json(const HealthStatus& h) {
  return json{{"status", "ok"},
              {"uptime_s", h.uptime_s},
              {"gateway_id", h.gateway_id},
              {"files_processed", h.files_processed},
              {"files_rejected", h.files_rejected},
              {"records_pending", h.records_pending},
              {"records_synced", h.records_synced},
              {"records_dead_letter", h.records_dead_letter},
              {"last_error", h.last_error}};
}

Gateway::Gateway(GatewayConfig cfg)
    : cfg_(std::move(cfg)),
      store_((cfg_.validate(), cfg_.data_dir)),
      rejects_dir_(cfg_.data_dir / "rejects"),
      started_at_(utc_now()) {
  fs::create_directories(rejects_dir_);
  steady_started_ = Steady::now();
}

Gateway::~Gateway() { stop(); }

GatewayConfig Gateway::config() const {
  std::lock_guard<std::mutex> lock(config_mutex_);
  return cfg_;
}

GatewayConfig Gateway::apply_update(const ConfigUpdate& update) {
  std::lock_guard<std::mutex> lock(config_mutex_);
  GatewayConfig merged = apply_config_update(cfg_, update);
  cfg_ = merged;
  return merged;
}

void Gateway::note_error(const std::string& message) {
  std::lock_guard<std::mutex> lock(error_mutex_);
  last_error_ = message;
}

void Gateway::reject_file(const fs::path& path, const std::string& reason) {
  std::error_code ec;
  fs::create_directories(rejects_dir_, ec);

  fs::path target = rejects_dir_ / path.filename();
  for (int i = 2; fs::exists(target, ec) && i < 1000; ++i) {
    target = rejects_dir_ /
             (path.stem().string() + "-" + std::to_string(i) +
              path.extension().string());
  }

  fs::rename(path, target, ec);
  if (ec) {
    // Cross-device moves fall back to copy + remove.
    ec.clear();
    fs::copy_file(path, target, fs::copy_options::overwrite_existing, ec);
    if (!ec) fs::remove(path, ec);
  }

  std::error_code reason_ec;
  const fs::path reason_path = target.string() + ".reason.txt";
  try {
    std::ofstream out(reason_path, std::ios::trunc);
    out << reason << "\n";
  } catch (...) {
    // Losing the reason note must not take down the pipeline.
  }
}

ProcessOutcome Gateway::process_event(const InboxEvent& event) {
  ProcessOutcome out;

  if (auto existing = store_.find(event.file_id)) {
    out.ok = true;
    out.duplicate = true;
    out.record = *existing;
    return out;
  }

  FrameConfig frame;
  LoudnessParams loudness;
  bool keep_series = false;
  {
    std::lock_guard<std::mutex> lock(config_mutex_);
    frame = cfg_.frame;
    loudness = cfg_.loudness;
    keep_series = cfg_.sync_series;
  }

  try {
    const std::vector<std::uint8_t> bytes = read_file_bytes(event.path);
    const UtcTime captured_at = file_mtime(event.path);

    const auto t0 = Steady::now();
    const AudioClip clip = decode_wav(bytes).first;
    const ResolvedLoudnessParams resolved =
        resolve_loudness(loudness, frame, clip.sample_rate_hz);
    FeatureSeries series = extract_features(clip, frame, loudness);
    const FeatureSummary summary = summarize_features(series);
    const auto t1 = Steady::now();

    FeatureRecord rec;
    rec.record_id = event.file_id;
    rec.source_name = event.path.filename().string();
    rec.task_label = event.path.stem().string();
    rec.captured_at = captured_at;
    rec.processed_at = utc_now();
    rec.duration_s = clip.duration_s();
    rec.size_bytes = bytes.size();
    rec.processing_time_s =
        std::chrono::duration<double>(t1 - t0).count();
    rec.config_snapshot =
        ConfigSnapshot{frame, resolved.calibration_db_spl,
                       resolved.n_bark_bands, resolved.compress_exponent,
                       resolved.reference_energy};
    rec.summary = summary;
    rec.series_included = keep_series;
    if (keep_series) {
      rec.series = std::move(series);
    }

    out.record = store_.persist(rec);
    out.ok = true;
    ++processed_;
    return out;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    ++rejected_;
    note_error(event.path.filename().string() + ": " + e.what());
    reject_file(event.path, e.what());
    return out;
  }
}

ProcessOutcome Gateway::process_path(const fs::path& path) {
  InboxEvent event;
  event.path = path;
  event.observed_at = utc_now();
  try {
    const auto bytes = read_file_bytes(path);
    event.file_id = compute_file_id(bytes);
    event.size_bytes = bytes.size();
  } catch (const std::exception& e) {
    ProcessOutcome out;
    out.error = e.what();
    ++rejected_;
    note_error(path.filename().string() + ": " + e.what());
    return out;
  }
  return process_event(event);
}

std::vector<InboxEvent> Gateway::poll_inbox() {
  std::lock_guard<std::mutex> lock(queue_mutex_);
  if (!watcher_) {
    watcher_ = std::make_unique<InboxWatcher>(
        config().inbox_dir,
        [this](const std::string& id) { return store_.contains(id); });
  }
  return watcher_->poll_once();
}

HealthStatus Gateway::health() const {
  HealthStatus h;
  h.uptime_s =
      std::chrono::duration<double>(Steady::now() - steady_started_).count();
  h.files_processed = processed_;
  h.files_rejected = rejected_;
  h.records_pending = store_.count_in_state(SyncState::kPending);
  h.records_synced = store_.count_in_state(SyncState::kSynced);
  h.records_dead_letter = store_.count_in_state(SyncState::kDeadLetter);
  {
    std::lock_guard<std::mutex> lock(error_mutex_);
    h.last_error = last_error_;
  }
  {
    std::lock_guard<std::mutex> lock(config_mutex_);
    h.gateway_id = cfg_.gateway_id;
  }
  return h;
}

void Gateway::start() {
  if (watcher_thread_.joinable()) return;
  stopping_ = false;

  const GatewayConfig cfg = config();
  if (!cfg.cloud_url.empty()) {
    cloud_client_ =
        std::make_unique<HttpCloudClient>(cfg.cloud_url, cfg.cloud_token);
    SyncSettings settings;
    settings.gateway_id = cfg.gateway_id;
    settings.max_batch = static_cast<std::size_t>(cfg.max_batch);
    settings.interval_s = cfg.sync_interval_s;
    settings.include_series = cfg.sync_series;
    settings.backoff = cfg.backoff;
    sync_worker_ = std::make_unique<SyncWorker>(store_, *cloud_client_,
                                                settings);
    sync_worker_->start();
  }

  watcher_thread_ = std::thread([this] { watcher_loop(); });
  const int workers = std::max(1, cfg.workers);
  worker_threads_.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) {
    worker_threads_.emplace_back([this] { worker_loop(); });
  }
}

void Gateway::stop() {
  stopping_ = true;
  queue_cv_.notify_all();
  if (watcher_thread_.joinable()) watcher_thread_.join();
  for (auto& t : worker_threads_) {
    if (t.joinable()) t.join();
  }
  worker_threads_.clear();
  if (sync_worker_) {
    sync_worker_->stop();
    sync_worker_.reset();
  }
}

void Gateway::watcher_loop() {
  InboxWatcher watcher(config().inbox_dir, [this](const std::string& id) {
    return store_.contains(id);
  });

  while (!stopping_) {
    std::vector<InboxEvent> events;
    try {
      events = watcher.poll_once();
    } catch (const std::exception& e) {
      // Keep polling: the inbox may reappear (unmounted share, slow mkdir).
      note_error(e.what());
    }

    if (!events.empty()) {
      std::lock_guard<std::mutex> lock(queue_mutex_);
      for (auto& e : events) queue_.push_back(std::move(e));
    }
    queue_cv_.notify_all();

    std::unique_lock<std::mutex> lock(queue_mutex_);
    queue_cv_.wait_for(
        lock, std::chrono::milliseconds(config().poll_interval_ms),
        [this] { return stopping_.load(); });
  }
}

void Gateway::worker_loop() {
  while (true) {
    InboxEvent event;
    {
      std::unique_lock<std::mutex> lock(queue_mutex_);
      queue_cv_.wait(lock,
                     [this] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) {
        if (stopping_) return;
        continue;
      }
      event = std::move(queue_.front());
      queue_.pop_front();
      ++in_flight_;
    }
    process_event(event);
    --in_flight_;
  }
}

bool Gateway::drain_inbox(double timeout_s) {
  const auto deadline =
      Steady::now() + std::chrono::duration<double>(timeout_s);
  const fs::path inbox = config().inbox_dir;
  while (Steady::now() < deadline) {
    bool queue_empty;
    {
      std::lock_guard<std::mutex> lock(queue_mutex_);
      queue_empty = queue_.empty();
    }
    bool inbox_empty = true;
    try {
      inbox_empty = scan_inbox(inbox, [this](const std::string& id) {
                      return store_.contains(id);
                    }).empty();
    } catch (const std::exception&) {
      inbox_empty = false;
    }
    if (queue_empty && inbox_empty && in_flight_ == 0) {
      return true;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(25));
  }
  return false;
}

AdminServer::AdminServer(Gateway& gateway, std::string host, int port)
    : gateway_(gateway),
      host_(std::move(host)),
      port_(port),
      server_(std::make_unique<httplib::Server>()) {
  server_->Get("/config", [this](const httplib::Request&,
                                 httplib::Response& res) {
    res.set_content(config_to_json(gateway_.config()).dump(2),
                    "application/json");
  });

  server_->Put("/config", [this](const httplib::Request& req,
                                 httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", std::string("invalid JSON: ") + e.what()}}
                          .dump(),
                      "application/json");
      return;
    }
    ConfigUpdate update;
    update.fields = body;
    if (body.is_object() && body.contains("update_id") &&
        body["update_id"].is_string()) {
      update.update_id = body["update_id"].get<std::string>();
    }
    update.received_at = utc_now();
    try {
      GatewayConfig merged = gateway_.apply_update(update);
      res.set_content(config_to_json(merged).dump(2), "application/json");
    } catch (const ConfigError& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  });

  server_->Get("/health", [this](const httplib::Request&,
                                 httplib::Response& res) {
    res.set_content(health_to_json(gateway_.health()).dump(2),
                    "application/json");
  });
}

AdminServer::~AdminServer() { stop(); }

int AdminServer::start() {
  if (port_ == 0) {
    port_ = server_->bind_to_any_port(host_);
    if (port_ <= 0) {
      throw ConfigError("admin endpoint failed to bind on " + host_);
    }
  } else if (!server_->bind_to_port(host_, port_)) {
    throw ConfigError("admin endpoint failed to bind " + host_ + ":" +
                      std::to_string(port_));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void AdminServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string AdminServer::base_url() const {
  return "http://" + host_ + ":" + std::to_string(port_);
}

}  // namespace speechfog
