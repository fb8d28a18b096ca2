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

#ifndef SPEECHFOG_CONFIG_HPP
#define SPEECHFOG_CONFIG_HPP

#include <filesystem>
#include <functional>
#include <string>

#include <json.hpp>

#include "speechfog/dsp.hpp"
#include "speechfog/loudness.hpp"
#include "speechfog/sync.hpp"
#include "speechfog/timeutil.hpp"

namespace speechfog {

// Environment variables use this prefix, e.g. FIT_INBOX_DIR, FIT_WINDOW_MS.
inline constexpr const char* kEnvPrefix = "FIT_";

// Full gateway configuration. Precedence: defaults < config file <
// environment < command-line flags; remote updates then apply on top of the
// running config.
struct GatewayConfig {
  std::filesystem::path inbox_dir = "inbox";
  std::filesystem::path data_dir = "data";
  std::string cloud_url;  // empty disables sync
  std::string cloud_token;
  double sync_interval_s = 5.0;
  int poll_interval_ms = 500;
  int max_batch = 16;
  bool sync_series = false;
  std::string admin_bind = "127.0.0.1:8088";
  int workers = 1;
  std::string gateway_id = "speechfog-gateway";
  FrameConfig frame;
  LoudnessParams loudness;
  BackoffPolicy backoff;

  // Throws ConfigError on any violated constraint.
  void validate() const;
};

// A partial configuration document received over the admin endpoint.
struct ConfigUpdate {
  nlohmann::json fields = nlohmann::json::object();
  std::string update_id;
  UtcTime received_at{};
};

nlohmann::json config_to_json(const GatewayConfig& cfg);

// Overlays the known keys present in `j` onto `base`. Unknown keys and
// type mismatches throw ConfigError. Does not validate the result.
GatewayConfig config_from_json(const nlohmann::json& j,
                               GatewayConfig base = {});

// Reads, overlays onto defaults, and returns (unvalidated, so later layers
// can still fix an incomplete file).
GatewayConfig load_config_file(const std::filesystem::path& path);

void save_config_file(const GatewayConfig& cfg,
                      const std::filesystem::path& path);

using EnvLookup = std::function<const char*(const char*)>;

// Applies FIT_* environment overrides. The lookup is injectable for tests.
void apply_env_overrides(GatewayConfig& cfg, const EnvLookup& getenv_fn);
void apply_env_overrides(GatewayConfig& cfg);

// Merges a partial update onto `current` and validates the result. Throws
// ConfigError without side effects when the update is malformed or the merged
// config is invalid; an empty update returns `current` unchanged.
GatewayConfig apply_config_update(const GatewayConfig& current,
                                  const ConfigUpdate& update);

// Splits "host:port"; throws ConfigError when malformed.
void parse_bind_address(const std::string& bind, std::string& host, int& port);

}  // namespace speechfog

#endif  // SPEECHFOG_CONFIG_HPP
