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

#include "speechfog/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "speechfog/errors.hpp"
#include "speechfog/features.hpp"
#include "speechfog/file_id.hpp"
#include "speechfog/wav.hpp"

namespace speechfog {

using nlohmann::json;

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string format_cell(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

}  // namespace

BenchReport run_bench(const std::vector<std::filesystem::path>& paths,
                      const GatewayConfig& cfg, int repeats) {
  if (repeats < 1) {
    throw BenchError("repeats must be >= 1");
  }
  BenchReport report;
  report.repeats = repeats;

  for (const auto& path : paths) {
    std::vector<std::uint8_t> bytes;
    try {
      bytes = read_file_bytes(path);
      // Fail fast on undecodable input before burning repeats on it.
      (void)decode_wav(bytes);
    } catch (const std::exception& e) {
      report.skipped.push_back(path.string() + ": " + e.what());
      continue;
    }

    std::vector<double> timings;
    timings.reserve(static_cast<std::size_t>(repeats));
    double duration_s = 0.0;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const AudioClip clip = decode_wav(bytes).first;
      const FeatureSeries series =
          extract_features(clip, cfg.frame, cfg.loudness);
      (void)summarize_features(series);
      const auto t1 = std::chrono::steady_clock::now();
      timings.push_back(std::chrono::duration<double>(t1 - t0).count());
      duration_s = clip.duration_s();
    }
    if (!(duration_s > 0.0)) {
      report.skipped.push_back(path.string() + ": zero-length audio");
      continue;
    }

    BenchRow row;
    row.task_label = path.stem().string();
    row.processing_time_s = median(std::move(timings));
    row.file_duration_s = duration_s;
    row.size_kb = static_cast<double>(bytes.size()) / 1000.0;
    row.size_kib = static_cast<double>(bytes.size()) / 1024.0;
    row.realtime_factor = row.processing_time_s / row.file_duration_s;
    report.rows.push_back(std::move(row));
  }

  if (report.rows.empty()) {
    std::string detail;
    for (const auto& s : report.skipped) detail += "\n  " + s;
    throw BenchError("no valid files to benchmark" + detail);
  }
  return report;
}

std::string bench_table(const BenchReport& report) {
  // Columns mirror BenchRow; sizes shown in both units only when they
  // disagree by more than rounding.
  bool show_kib = false;
  for (const auto& row : report.rows) {
    if (std::abs(row.size_kb - row.size_kib) > 0.5) show_kib = true;
  }

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"task", "processing_time_s",
                                     "file_duration_s", "size_kb"};
  if (show_kib) header.push_back("size_kib");
  header.push_back("realtime_factor");
  cells.push_back(header);

  for (const auto& row : report.rows) {
    std::vector<std::string> line = {
        row.task_label, format_cell(row.processing_time_s, 4),
        format_cell(row.file_duration_s, 2), format_cell(row.size_kb, 1)};
    if (show_kib) line.push_back(format_cell(row.size_kib, 1));
    line.push_back(format_cell(row.realtime_factor, 4));
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      widths[c] = std::max(widths[c], line[c].size());
    }
  }

  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << "  ";
      out << line[c];
      if (c + 1 < line.size()) {
        out << std::string(widths[c] - line[c].size(), ' ');
      }
    }
    out << "\n";
  }
  return out.str();
}

json bench_to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"task", row.task_label},
           {"processing_time_s", row.processing_time_s},
           {"file_duration_s", row.file_duration_s},
           {"size_kb", row.size_kb},
           {"realtime_factor", row.realtime_factor}};
    if (std::abs(row.size_kb - row.size_kib) > 0.5) {
      r["size_kib"] = row.size_kib;
    }
    rows.push_back(std::move(r));
  }
  return json{{"repeats", report.repeats},
              {"rows", std::move(rows)},
              {"skipped", report.skipped}};
}

}  // namespace speechfog
