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

#ifndef SPEECHFOG_EXPORT_HPP
#define SPEECHFOG_EXPORT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speechfog/features.hpp"
#include "speechfog/record.hpp"

namespace speechfog {

// Shortest decimal form that parses back to the identical double, so
// exported data round-trips bit-for-bit.
std::string format_double(double value);

// Per-frame contours, one CSV row per frame:
//   time_s,loudness_phon,sc_hz,zcr,ste
std::string series_csv(const FeatureSeries& series);

// Per-file averages, one CSV row per file:
//   file,mean_zcr,mean_sc_hz,mean_ste,mean_loudness_phon,frame_count,duration_s
std::string summary_csv(
    const std::vector<std::pair<std::string, FeatureSummary>>& summaries);

// Series for a persisted record: the stored series when present, otherwise
// recomputed from raw_file under the record's config snapshot (so the result
// matches what was summarized at processing time). Throws ExportError when
// neither source is available.
FeatureSeries series_for_record(
    const FeatureRecord& record,
    const std::optional<std::filesystem::path>& raw_file);

}  // namespace speechfog

#endif  // SPEECHFOG_EXPORT_HPP
