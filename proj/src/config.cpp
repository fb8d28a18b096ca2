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

#include "speechfog/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "speechfog/errors.hpp"

namespace speechfog {

using nlohmann::json;

void GatewayConfig::validate() const {
  if (inbox_dir.empty()) throw ConfigError("inbox_dir must not be empty");
  if (data_dir.empty()) throw ConfigError("data_dir must not be empty");
  const auto inbox_norm =
      std::filesystem::absolute(inbox_dir).lexically_normal();
  const auto data_norm = std::filesystem::absolute(data_dir).lexically_normal();
  if (inbox_norm == data_norm) {
    throw ConfigError("inbox_dir and data_dir must be distinct paths");
  }
  if (!(sync_interval_s > 0.0)) {
    throw ConfigError("sync_interval_s must be > 0");
  }
  if (poll_interval_ms <= 0) {
    throw ConfigError("poll_interval_ms must be > 0");
  }
  if (max_batch < 1) throw ConfigError("max_batch must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (gateway_id.empty()) throw ConfigError("gateway_id must not be empty");
  if (!(backoff.base_s > 0.0)) throw ConfigError("backoff base_s must be > 0");
  if (!(backoff.factor >= 1.0)) {
    throw ConfigError("backoff factor must be >= 1");
  }
  if (backoff.cap_s < backoff.base_s) {
    throw ConfigError("backoff cap_s must be >= base_s");
  }
  if (!(backoff.jitter >= 0.0 && backoff.jitter < 1.0)) {
    throw ConfigError("backoff jitter must be in [0, 1)");
  }

  std::string host;
  int port = 0;
  parse_bind_address(admin_bind, host, port);

  frame.validate_shape();
  loudness.validate();
}

namespace {

// Typed field extraction with errors that name the offending key.
double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) {
    throw ConfigError("config field '" + key + "' must be a number");
  }
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) {
    throw ConfigError("config field '" + key + "' must be an integer");
  }
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) {
    throw ConfigError("config field '" + key + "' must be a boolean");
  }
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) {
    throw ConfigError("config field '" + key + "' must be a string");
  }
  return j.get<std::string>();
}

void merge_frame(FrameConfig& frame, const json& j) {
  if (!j.is_object()) throw ConfigError("config field 'frame' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "window_ms") {
      frame.window_ms = get_number(value, "frame.window_ms");
    } else if (key == "hop_ms") {
      frame.hop_ms = get_number(value, "frame.hop_ms");
    } else if (key == "fft_size") {
      frame.fft_size = static_cast<std::uint32_t>(get_int(value, "frame.fft_size"));
    } else if (key == "silence_floor") {
      frame.silence_floor = get_number(value, "frame.silence_floor");
    } else if (key == "window") {
      frame.window = window_fn_from_name(get_string(value, "frame.window"));
    } else {
      throw ConfigError("unknown config field 'frame." + key + "'");
    }
  }
}

void merge_loudness(LoudnessParams& loudness, const json& j) {
  if (!j.is_object()) {
    throw ConfigError("config field 'loudness' must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "calibration_db_spl") {
      loudness.calibration_db_spl =
          get_number(value, "loudness.calibration_db_spl");
    } else if (key == "n_bark_bands") {
      loudness.n_bark_bands =
          static_cast<std::size_t>(get_int(value, "loudness.n_bark_bands"));
    } else if (key == "compress_exponent") {
      loudness.compress_exponent =
          get_number(value, "loudness.compress_exponent");
    } else if (key == "reference_energy") {
      // null or 0 selects automatic sine calibration.
      if (value.is_null()) {
        loudness.reference_energy.reset();
      } else {
        double v = get_number(value, "loudness.reference_energy");
        if (v == 0.0) {
          loudness.reference_energy.reset();
        } else {
          loudness.reference_energy = v;
        }
      }
    } else {
      throw ConfigError("unknown config field 'loudness." + key + "'");
    }
  }
}

void merge_backoff(BackoffPolicy& backoff, const json& j) {
  if (!j.is_object()) {
    throw ConfigError("config field 'backoff' must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "base_s") {
      backoff.base_s = get_number(value, "backoff.base_s");
    } else if (key == "factor") {
      backoff.factor = get_number(value, "backoff.factor");
    } else if (key == "cap_s") {
      backoff.cap_s = get_number(value, "backoff.cap_s");
    } else if (key == "jitter") {
      backoff.jitter = get_number(value, "backoff.jitter");
    } else {
      throw ConfigError("unknown config field 'backoff." + key + "'");
    }
  }
}

}  // namespace

json config_to_json(const GatewayConfig& cfg) {
  json frame{{"window_ms", cfg.frame.window_ms},
             {"hop_ms", cfg.frame.hop_ms},
             {"fft_size", cfg.frame.fft_size},
             {"silence_floor", cfg.frame.silence_floor},
             {"window", window_fn_name(cfg.frame.window)}};
  json loudness{{"calibration_db_spl", cfg.loudness.calibration_db_spl},
                {"n_bark_bands", cfg.loudness.n_bark_bands},
                {"compress_exponent", cfg.loudness.compress_exponent}};
  if (cfg.loudness.reference_energy) {
    loudness["reference_energy"] = *cfg.loudness.reference_energy;
  } else {
    loudness["reference_energy"] = nullptr;
  }
  json backoff{{"base_s", cfg.backoff.base_s},
               {"factor", cfg.backoff.factor},
               {"cap_s", cfg.backoff.cap_s},
               {"jitter", cfg.backoff.jitter}};
  return json{{"inbox_dir", cfg.inbox_dir.string()},
              {"data_dir", cfg.data_dir.string()},
              {"cloud_url", cfg.cloud_url},
              {"cloud_token", cfg.cloud_token},
              {"sync_interval_s", cfg.sync_interval_s},
              {"poll_interval_ms", cfg.poll_interval_ms},
              {"max_batch", cfg.max_batch},
              {"sync_series", cfg.sync_series},
              {"admin_bind", cfg.admin_bind},
              {"workers", cfg.workers},
              {"gateway_id", cfg.gateway_id},
              {"frame", std::move(frame)},
              {"loudness", std::move(loudness)},
              {"backoff", std::move(backoff)}};
}

GatewayConfig config_from_json(const json& j, GatewayConfig base) {
  if (!j.is_object()) throw ConfigError("config document must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "inbox_dir") {
      base.inbox_dir = get_string(value, key);
    } else if (key == "data_dir") {
      base.data_dir = get_string(value, key);
    } else if (key == "cloud_url") {
      base.cloud_url = get_string(value, key);
    } else if (key == "cloud_token") {
      base.cloud_token = get_string(value, key);
    } else if (key == "sync_interval_s") {
      base.sync_interval_s = get_number(value, key);
    } else if (key == "poll_interval_ms") {
      base.poll_interval_ms = get_int(value, key);
    } else if (key == "max_batch") {
      base.max_batch = get_int(value, key);
    } else if (key == "sync_series") {
      base.sync_series = get_bool(value, key);
    } else if (key == "admin_bind") {
      base.admin_bind = get_string(value, key);
    } else if (key == "workers") {
      base.workers = get_int(value, key);
    } else if (key == "gateway_id") {
      base.gateway_id = get_string(value, key);
    } else if (key == "frame") {
      merge_frame(base.frame, value);
    } else if (key == "loudness") {
      merge_loudness(base.loudness, value);
    } else if (key == "backoff") {
      merge_backoff(base.backoff, value);
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return base;
}

GatewayConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() +
                      " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void save_config_file(const GatewayConfig& cfg,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot write config file " + path.string());
  }
  out << config_to_json(cfg).dump(2) << "\n";
  if (!out.flush()) {
    throw ConfigError("failed writing config file " + path.string());
  }
}

namespace {

double parse_env_double(const std::string& name, const char* text) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(text, &end);
  if (errno != 0 || end == text || *end != '\0') {
    throw ConfigError(name + " is not a valid number: '" + text + "'");
  }
  return v;
}

int parse_env_int(const std::string& name, const char* text) {
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(text, &end, 10);
  if (errno != 0 || end == text || *end != '\0') {
    throw ConfigError(name + " is not a valid integer: '" + text + "'");
  }
  return static_cast<int>(v);
}

bool parse_env_bool(const std::string& name, const char* text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "1" || lower == "true" || lower == "yes" || lower == "on") {
    return true;
  }
  if (lower == "0" || lower == "false" || lower == "no" || lower == "off") {
    return false;
  }
  throw ConfigError(name + " is not a valid boolean: '" + text + "'");
}

}  // namespace

void apply_env_overrides(GatewayConfig& cfg, const EnvLookup& getenv_fn) {
  auto with = [&](const char* suffix, auto&& apply) {
    const std::string name = std::string(kEnvPrefix) + suffix;
    if (const char* value = getenv_fn(name.c_str())) {
      apply(name, value);
    }
  };

  with("INBOX_DIR", [&](const std::string&, const char* v) { cfg.inbox_dir = v; });
  with("DATA_DIR", [&](const std::string&, const char* v) { cfg.data_dir = v; });
  with("CLOUD_URL", [&](const std::string&, const char* v) { cfg.cloud_url = v; });
  with("CLOUD_TOKEN",
       [&](const std::string&, const char* v) { cfg.cloud_token = v; });
  with("SYNC_INTERVAL_S", [&](const std::string& n, const char* v) {
    cfg.sync_interval_s = parse_env_double(n, v);
  });
  with("POLL_INTERVAL_MS", [&](const std::string& n, const char* v) {
    cfg.poll_interval_ms = parse_env_int(n, v);
  });
  with("MAX_BATCH", [&](const std::string& n, const char* v) {
    cfg.max_batch = parse_env_int(n, v);
  });
  with("SYNC_SERIES", [&](const std::string& n, const char* v) {
    cfg.sync_series = parse_env_bool(n, v);
  });
  with("ADMIN_BIND",
       [&](const std::string&, const char* v) { cfg.admin_bind = v; });
  with("WORKERS", [&](const std::string& n, const char* v) {
    cfg.workers = parse_env_int(n, v);
  });
  with("GATEWAY_ID",
       [&](const std::string&, const char* v) { cfg.gateway_id = v; });
  with("WINDOW_MS", [&](const std::string& n, const char* v) {
    cfg.frame.window_ms = parse_env_double(n, v);
  });
  with("HOP_MS", [&](const std::string& n, const char* v) {
    cfg.frame.hop_ms = parse_env_double(n, v);
  });
  with("FFT_SIZE", [&](const std::string& n, const char* v) {
    cfg.frame.fft_size = static_cast<std::uint32_t>(parse_env_int(n, v));
  });
  with("SILENCE_FLOOR", [&](const std::string& n, const char* v) {
    cfg.frame.silence_floor = parse_env_double(n, v);
  });
  with("WINDOW_FN", [&](const std::string&, const char* v) {
    cfg.frame.window = window_fn_from_name(v);
  });
  with("CALIBRATION_DB_SPL", [&](const std::string& n, const char* v) {
    cfg.loudness.calibration_db_spl = parse_env_double(n, v);
  });
  with("N_BARK_BANDS", [&](const std::string& n, const char* v) {
    cfg.loudness.n_bark_bands =
        static_cast<std::size_t>(parse_env_int(n, v));
  });
  with("COMPRESS_EXPONENT", [&](const std::string& n, const char* v) {
    cfg.loudness.compress_exponent = parse_env_double(n, v);
  });
  with("REFERENCE_ENERGY", [&](const std::string& n, const char* v) {
    double e = parse_env_double(n, v);
    if (e == 0.0) {
      cfg.loudness.reference_energy.reset();
    } else {
      cfg.loudness.reference_energy = e;
    }
  });
}

void apply_env_overrides(GatewayConfig& cfg) {
  apply_env_overrides(cfg,
                      [](const char* name) { return std::getenv(name); });
}

GatewayConfig apply_config_update(const GatewayConfig& current,
                                  const ConfigUpdate& update) {
  json fields = update.fields;
  if (!fields.is_object()) {
    throw ConfigError("config update must be a JSON object");
  }
  fields.erase("update_id");  // envelope metadata, not a config key
  GatewayConfig merged = config_from_json(fields, current);
  merged.validate();
  return merged;
}

void parse_bind_address(const std::string& bind, std::string& host,
                        int& port) {
  auto colon = bind.rfind(':');
  if (colon == std::string::npos || colon == 0 ||
      colon + 1 >= bind.size()) {
    throw ConfigError("bind address must look like host:port, got '" + bind +
                      "'");
  }
  host = bind.substr(0, colon);
  const std::string port_text = bind.substr(colon + 1);
  port = parse_env_int("port in '" + bind + "'", port_text.c_str());
  if (port < 1 || port > 65535) {
    throw ConfigError("port out of range in '" + bind + "'");
  }
}

}  // namespace speechfog
