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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "speechfog/bench.hpp"
#include "speechfog/config.hpp"
#include "speechfog/errors.hpp"
#include "speechfog/export.hpp"
#include "speechfog/features.hpp"
#include "speechfog/file_id.hpp"
#include "speechfog/fixtures.hpp"
#include "speechfog/gateway.hpp"
#include "speechfog/mock_cloud.hpp"
#include "speechfog/wav.hpp"

namespace {

using namespace speechfog;
namespace fs = std::filesystem;

std::atomic<bool> g_interrupted{false};

void handle_signal(int) { g_interrupted = true; }

void install_signal_handlers() {
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
}

void wait_for_interrupt() {
  while (!g_interrupted) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
}

struct GlobalFlags {
  std::string config_path;
  std::string inbox;
  std::string data_dir;
  std::string cloud_url;
};

// Precedence: defaults < config file < FIT_* environment < flags.
GatewayConfig resolve_config(const GlobalFlags& flags) {
  GatewayConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = load_config_file(flags.config_path);
  }
  apply_env_overrides(cfg);
  if (!flags.inbox.empty()) cfg.inbox_dir = flags.inbox;
  if (!flags.data_dir.empty()) cfg.data_dir = flags.data_dir;
  if (!flags.cloud_url.empty()) cfg.cloud_url = flags.cloud_url;
  cfg.validate();
  return cfg;
}

std::vector<fs::path> sorted_paths(std::vector<std::string> raw) {
  std::sort(raw.begin(), raw.end());
  return {raw.begin(), raw.end()};
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (!path.parent_path().empty()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw ExportError("cannot write " + path.string());
  }
  out << text;
  if (!out.flush()) {
    throw ExportError("failed writing " + path.string());
  }
}

int cmd_process(const GatewayConfig& cfg,
                const std::vector<std::string>& raw_paths) {
  Gateway gateway(cfg);
  bool all_ok = true;
  for (const auto& path : sorted_paths(raw_paths)) {
    const ProcessOutcome outcome = gateway.process_path(path);
    if (outcome.ok && outcome.duplicate) {
      std::cout << path.filename().string()
                << ": duplicate of record " << outcome.record.record_id
                << ", skipped\n";
    } else if (outcome.ok) {
      const auto& r = outcome.record;
      std::cout << path.filename().string() << ": record "
                << r.record_id.substr(0, 12) << "  duration_s="
                << format_double(r.duration_s)
                << "  frames=" << r.summary.frame_count
                << "  mean_loudness_phon="
                << format_double(r.summary.mean_loudness_phon)
                << "  processing_time_s="
                << format_double(r.processing_time_s) << "\n";
    } else {
      all_ok = false;
      std::cerr << path.filename().string() << ": rejected: "
                << outcome.error << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_watch(const GatewayConfig& cfg, bool with_admin) {
  Gateway gateway(cfg);
  std::unique_ptr<AdminServer> admin;
  if (with_admin) {
    std::string host;
    int port = 0;
    parse_bind_address(cfg.admin_bind, host, port);
    admin = std::make_unique<AdminServer>(gateway, host, port);
    admin->start();
    std::cout << "admin endpoint on " << admin->base_url() << "\n";
  }
  gateway.start();
  std::cout << "watching " << cfg.inbox_dir.string() << " (data dir "
            << cfg.data_dir.string() << ", sync "
            << (cfg.cloud_url.empty() ? "disabled" : cfg.cloud_url)
            << ")\n";
  install_signal_handlers();
  wait_for_interrupt();
  std::cout << "shutting down\n";
  gateway.stop();
  if (admin) admin->stop();
  const HealthStatus h = gateway.health();
  std::cout << "processed=" << h.files_processed
            << " rejected=" << h.files_rejected
            << " pending=" << h.records_pending
            << " synced=" << h.records_synced << "\n";
  return 0;
}

int cmd_bench(const GatewayConfig& cfg,
              const std::vector<std::string>& raw_paths, int repeats,
              std::string out_path) {
  const BenchReport report = run_bench(sorted_paths(raw_paths), cfg, repeats);
  std::cout << bench_table(report);
  for (const auto& s : report.skipped) {
    std::cerr << "skipped " << s << "\n";
  }
  if (out_path.empty()) {
    out_path = (cfg.data_dir / "bench.json").string();
  }
  write_text_file(out_path, bench_to_json(report).dump(2) + "\n");
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_export(const GatewayConfig& cfg, const std::string& mode,
               const std::vector<std::string>& raw_paths,
               const std::string& record_id, const std::string& raw_file,
               const std::string& out_path) {
  std::string csv;

  if (!record_id.empty()) {
    RecordStore store(cfg.data_dir);
    auto record = store.find(record_id);
    if (!record) {
      throw ExportError("no record with id " + record_id);
    }
    if (mode == "series") {
      std::optional<fs::path> raw;
      if (!raw_file.empty()) raw = raw_file;
      csv = series_csv(series_for_record(*record, raw));
    } else {
      csv = summary_csv({{record->source_name, record->summary}});
    }
  } else {
    const auto paths = sorted_paths(raw_paths);
    if (paths.empty()) {
      throw ExportError("export needs --record or at least one file");
    }
    if (mode == "series") {
      if (paths.size() != 1) {
        throw ExportError("series export takes exactly one file");
      }
      const AudioClip clip =
          decode_wav(read_file_bytes(paths.front())).first;
      csv = series_csv(extract_features(clip, cfg.frame, cfg.loudness));
    } else {
      std::vector<std::pair<std::string, FeatureSummary>> summaries;
      for (const auto& path : paths) {
        const AudioClip clip = decode_wav(read_file_bytes(path)).first;
        const FeatureSeries series =
            extract_features(clip, cfg.frame, cfg.loudness);
        summaries.emplace_back(path.filename().string(),
                               summarize_features(series));
      }
      csv = summary_csv(summaries);
    }
  }

  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(out_path, csv);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_make_fixtures(const std::string& out_dir, int rate) {
  const auto paths = write_benchmark_fixtures(
      out_dir, static_cast<std::uint32_t>(rate));
  for (const auto& p : paths) {
    std::cout << p.string() << "\n";
  }
  return 0;
}

int cmd_mock_cloud(const std::string& bind, int fail_first,
                   double drop_ack_prob, int max_delay_ms) {
  std::string host;
  int port = 0;
  parse_bind_address(bind, host, port);
  MockCloudFaults faults;
  faults.fail_first = fail_first;
  faults.drop_ack_prob = drop_ack_prob;
  faults.max_delay_ms = max_delay_ms;
  MockCloudServer server(faults);
  server.start(host, port);
  std::cout << "mock cloud on " << server.url() << "\n";
  install_signal_handlers();
  wait_for_interrupt();
  server.stop();
  std::cout << "committed " << server.committed_count() << " records ("
            << server.duplicate_count() << " duplicate deliveries absorbed)"
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "speechfog: fog gateway for clinical speech feature extraction"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file");
  app.add_option("--inbox", flags.inbox, "inbox directory override");
  app.add_option("--data-dir", flags.data_dir, "data directory override");
  app.add_option("--cloud-url", flags.cloud_url, "cloud endpoint override");

  auto* process =
      app.add_subcommand("process", "Process WAV files into feature records");
  std::vector<std::string> process_paths;
  process->add_option("paths", process_paths, "WAV files")
      ->required()
      ->expected(-1);

  auto* watch = app.add_subcommand(
      "watch", "Watch the inbox and process new files until interrupted");

  auto* serve = app.add_subcommand(
      "serve", "Watch the inbox and expose the admin endpoint");

  auto* bench = app.add_subcommand(
      "bench", "Time the extraction pipeline over files (median of repeats)");
  std::vector<std::string> bench_paths;
  int repeats = 3;
  std::string bench_out;
  bench->add_option("paths", bench_paths, "WAV files")
      ->required()
      ->expected(-1);
  bench->add_option("--repeats", repeats, "timing repetitions per file")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out,
                    "structured report path (default <data-dir>/bench.json)");

  auto* exp = app.add_subcommand("export", "Export plot-ready CSV data");
  std::string export_mode = "series";
  std::vector<std::string> export_paths;
  std::string export_record;
  std::string export_raw_file;
  std::string export_out;
  exp->add_option("--mode", export_mode, "series or summary")
      ->check(CLI::IsMember({"series", "summary"}));
  exp->add_option("paths", export_paths, "WAV files to process on the fly");
  exp->add_option("--record", export_record, "persisted record id");
  exp->add_option("--raw-file", export_raw_file,
                  "source WAV for a record stored without its series");
  exp->add_option("--out", export_out, "output path (default stdout)");

  auto* mk = app.add_subcommand("make-fixtures",
                                "Synthesize the benchmark WAV set");
  std::string fixtures_dir = "fixtures";
  int fixtures_rate = 44100;
  mk->add_option("--out-dir", fixtures_dir, "output directory");
  mk->add_option("--rate", fixtures_rate, "sample rate in Hz")
      ->check(CLI::PositiveNumber);

  auto* mock = app.add_subcommand(
      "mock-cloud", "Run a local stand-in for the cloud endpoint");
  std::string mock_bind = "127.0.0.1:9090";
  int mock_fail_first = 0;
  double mock_drop_ack = 0.0;
  int mock_max_delay = 0;
  mock->add_option("--bind", mock_bind, "host:port to listen on");
  mock->add_option("--fail-first", mock_fail_first,
                   "respond 500 to the first N requests");
  mock->add_option("--drop-ack-prob", mock_drop_ack,
                   "probability of losing an ack after commit");
  mock->add_option("--max-delay-ms", mock_max_delay,
                   "random ack delay upper bound");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mk) {
      return cmd_make_fixtures(fixtures_dir, fixtures_rate);
    }
    if (*mock) {
      return cmd_mock_cloud(mock_bind, mock_fail_first, mock_drop_ack,
                            mock_max_delay);
    }

    const GatewayConfig cfg = resolve_config(flags);
    if (*process) return cmd_process(cfg, process_paths);
    if (*watch) return cmd_watch(cfg, /*with_admin=*/false);
    if (*serve) return cmd_watch(cfg, /*with_admin=*/true);
    if (*bench) return cmd_bench(cfg, bench_paths, repeats, bench_out);
    if (*exp) {
      return cmd_export(cfg, export_mode, export_paths, export_record,
                        export_raw_file, export_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
