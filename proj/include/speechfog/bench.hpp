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

#ifndef SPEECHFOG_BENCH_HPP
#define SPEECHFOG_BENCH_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "speechfog/config.hpp"

namespace speechfog {

// One benchmark line: per-file median processing time next to the file's
// intrinsic duration and size.
struct BenchRow {
  std::string task_label;
  double processing_time_s = 0.0;  // median over repeats
  double file_duration_s = 0.0;
  double size_kb = 0.0;            // 1000-byte kB
  double size_kib = 0.0;           // 1024-byte KiB, reported when it diverges
  double realtime_factor = 0.0;    // processing_time_s / file_duration_s
};

struct BenchReport {
  std::vector<BenchRow> rows;
  int repeats = 0;
  std::vector<std::string> skipped;  // "path: reason" for undecodable files
};

// Reads each file once, then times decode -> extract -> summarize `repeats`
// times (sequentially, to keep timings comparable) and reports the median.
// Undecodable files are collected in `skipped`; throws BenchError when no
// file survives.
BenchReport run_bench(const std::vector<std::filesystem::path>& paths,
                      const GatewayConfig& cfg, int repeats = 3);

// Aligned, human-readable table.
std::string bench_table(const BenchReport& report);

// Machine-readable counterpart. Every row carries task, processing_time_s,
// file_duration_s, size_kb, and realtime_factor; size_kib appears only when
// it differs from size_kb by more than rounding (> 0.5).
nlohmann::json bench_to_json(const BenchReport& report);

}  // namespace speechfog

#endif  // SPEECHFOG_BENCH_HPP
