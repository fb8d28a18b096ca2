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

#ifndef SPEECHFOG_INBOX_HPP
#define SPEECHFOG_INBOX_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "speechfog/timeutil.hpp"

namespace speechfog {

struct InboxEvent {
  std::filesystem::path path;
  std::string file_id;  // content hash, hex
  UtcTime observed_at;
  std::uint64_t size_bytes = 0;
};

// True when a file_id has already been turned into a persisted record.
using ProcessedPredicate = std::function<bool(const std::string&)>;

// One-shot scan: regular *.wav files (case-insensitive extension),
// non-recursive, sorted lexicographically by filename, already-processed
// content excluded. Throws IngestError if the directory is missing.
std::vector<InboxEvent> scan_inbox(const std::filesystem::path& dir,
                                   const ProcessedPredicate& processed);

// Polling watcher with a settle rule: a file is announced only once its size
// is unchanged across two consecutive polls, so half-transferred files are
// never picked up. No file_id is emitted twice within a watch session.
class InboxWatcher {
 public:
  InboxWatcher(std::filesystem::path dir, ProcessedPredicate processed);

  // Runs one poll round and returns the newly settled events in
  // lexicographic filename order. Throws IngestError if the directory
  // vanished.
  std::vector<InboxEvent> poll_once();

 private:
  std::filesystem::path dir_;
  ProcessedPredicate processed_;
  std::map<std::string, std::uint64_t> sizes_;      // filename -> last size
  std::map<std::string, std::string> settled_ids_;  // filename -> emitted id
  std::unordered_set<std::string> emitted_ids_;
};

}  // namespace speechfog

#endif  // SPEECHFOG_INBOX_HPP
