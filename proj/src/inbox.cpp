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

#include "speechfog/inbox.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "speechfog/errors.hpp"
#include "speechfog/file_id.hpp"

namespace speechfog {

namespace fs = std::filesystem;

namespace {

bool has_wav_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}

// Sorted list of candidate (filename, size) pairs in dir.
std::vector<std::pair<std::string, std::uint64_t>> list_wav_files(
    const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IngestError("inbox directory missing or unreadable: " +
                      dir.string());
  }
  std::vector<std::pair<std::string, std::uint64_t>> found;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (ec) break;
    if (!entry.is_regular_file(ec) || ec) continue;
    if (!has_wav_extension(entry.path())) continue;
    const auto size = entry.file_size(ec);
    if (ec) continue;
    found.emplace_back(entry.path().filename().string(), size);
  }
  if (ec) {
    throw IngestError("inbox directory unreadable: " + dir.string() + ": " +
                      ec.message());
  }
  std::sort(found.begin(), found.end());
  return found;
}

InboxEvent make_event(const fs::path& dir, const std::string& name,
                      std::uint64_t size, std::string id) {
  InboxEvent ev;
  ev.path = dir / name;
  ev.file_id = std::move(id);
  ev.observed_at = utc_now();
  ev.size_bytes = size;
  return ev;
}

}  // namespace

std::vector<InboxEvent> scan_inbox(const fs::path& dir,
                                   const ProcessedPredicate& processed) {
  std::vector<InboxEvent> events;
  for (const auto& [name, size] : list_wav_files(dir)) {
    std::string id = compute_file_id(read_file_bytes(dir / name));
    if (processed && processed(id)) continue;
    events.push_back(make_event(dir, name, size, std::move(id)));
  }
  return events;
}

InboxWatcher::InboxWatcher(fs::path dir, ProcessedPredicate processed)
    : dir_(std::move(dir)), processed_(std::move(processed)) {}

std::vector<InboxEvent> InboxWatcher::poll_once() {
  const auto current = list_wav_files(dir_);

  std::vector<InboxEvent> events;
  std::map<std::string, std::uint64_t> next_sizes;
  for (const auto& [name, size] : current) {
    next_sizes.emplace(name, size);

    const auto prev = sizes_.find(name);
    const bool stable = prev != sizes_.end() && prev->second == size;
    if (!stable) {
      // New or still growing; content under this name is no longer settled.
      settled_ids_.erase(name);
      continue;
    }
    if (auto settled = settled_ids_.find(name); settled != settled_ids_.end()) {
      continue;  // unchanged since emission
    }

    std::string id = compute_file_id(read_file_bytes(dir_ / name));
    settled_ids_.emplace(name, id);
    if (processed_ && processed_(id)) continue;
    if (!emitted_ids_.insert(id).second) continue;  // at-most-once per id
    events.push_back(make_event(dir_, name, size, std::move(id)));
  }

  sizes_ = std::move(next_sizes);
  return events;
}

}  // namespace speechfog
