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

#include "speechfog/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "speechfog/errors.hpp"

namespace speechfog {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int open_append(const fs::path& path) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
  if (fd < 0) {
    throw PersistenceError("cannot open " + path.string() + ": " +
                           std::strerror(errno));
  }
  return fd;
}

void write_all(int fd, const std::string& data, const fs::path& path) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw PersistenceError("write to " + path.string() + " failed: " +
                             std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string read_whole_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void replace_file_atomically(const fs::path& path,
                             const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) {
    throw PersistenceError("cannot rewrite " + path.string() + ": " +
                           std::strerror(errno));
  }
  write_all(fd, contents, tmp);
  ::fsync(fd);
  ::close(fd);
  fs::rename(tmp, path);
}

}  // namespace

RecordStore::RecordStore(const fs::path& data_dir) {
  std::error_code ec;
  fs::create_directories(data_dir, ec);
  records_path_ = data_dir / "records.ndjson";
  state_path_ = data_dir / "sync_state.log";
  quarantine_path_ = data_dir / "quarantine.log";

  recover_records();
  recover_states();

  records_fd_ = open_append(records_path_);
  state_fd_ = open_append(state_path_);
}

RecordStore::~RecordStore() {
  if (records_fd_ >= 0) ::close(records_fd_);
  if (state_fd_ >= 0) ::close(state_fd_);
}

void RecordStore::recover_records() {
  const std::string raw = read_whole_file(records_path_);
  if (raw.empty()) return;

  std::vector<std::string> bad;
  std::string good;
  good.reserve(raw.size());

  std::size_t pos = 0;
  while (pos < raw.size()) {
    const std::size_t nl = raw.find('\n', pos);
    const bool torn = nl == std::string::npos;  // no terminator: partial write
    const std::string line =
        raw.substr(pos, torn ? std::string::npos : nl - pos);
    pos = torn ? raw.size() : nl + 1;
    if (line.empty()) continue;

    bool ok = !torn;
    if (ok) {
      try {
        FeatureRecord rec = record_from_json(json::parse(line));
        if (by_id_.count(rec.record_id) == 0) {
          by_id_.emplace(rec.record_id, records_.size());
          states_.emplace(rec.record_id, SyncState::kPending);
          records_.push_back(std::move(rec));
          good += line;
          good += '\n';
        }
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) bad.push_back(line);
  }

  if (bad.empty()) return;

  // Salvage the unreadable lines to the side file, then compact the log so
  // they are not re-quarantined on the next open.
  const int qfd = open_append(quarantine_path_);
  for (const std::string& line : bad) write_all(qfd, line + "\n", quarantine_path_);
  ::fsync(qfd);
  ::close(qfd);
  replace_file_atomically(records_path_, good);
}

void RecordStore::recover_states() {
  std::ifstream in(state_path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos) continue;
    const std::string state = line.substr(0, sp);
    const std::string id = line.substr(sp + 1);
    const auto it = states_.find(id);
    if (it == states_.end()) continue;  // record quarantined or foreign line
    if (state == "synced") {
      it->second = SyncState::kSynced;
    } else if (state == "dead_letter") {
      // synced is terminal; never move a record back out of it
      if (it->second != SyncState::kSynced) it->second = SyncState::kDeadLetter;
    }
  }
}

void RecordStore::append_durable(int fd, const std::string& line,
                                 const fs::path& path) {
  write_all(fd, line, path);
  if (::fsync(fd) != 0) {
    throw PersistenceError("fsync of " + path.string() + " failed: " +
                           std::strerror(errno));
  }
}

FeatureRecord RecordStore::persist(const FeatureRecord& record) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (const auto it = by_id_.find(record.record_id); it != by_id_.end()) {
    return records_[it->second];  // idempotent re-persist
  }

  const std::string line =
      record_to_json(record, record.series_included).dump() + "\n";
  append_durable(records_fd_, line, records_path_);

  // In-memory index is updated only after the bytes are durable, so a failed
  // append never leaves a half-visible record.
  by_id_.emplace(record.record_id, records_.size());
  states_.emplace(record.record_id, SyncState::kPending);
  records_.push_back(record);
  return record;
}

std::vector<FeatureRecord> RecordStore::load_pending(std::size_t limit) const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<FeatureRecord> pending;
  for (const FeatureRecord& rec : records_) {
    if (pending.size() >= limit) break;
    if (states_.at(rec.record_id) == SyncState::kPending) {
      pending.push_back(rec);
    }
  }
  return pending;
}

RecordStore::MarkResult RecordStore::mark(const std::vector<std::string>& ids,
                                          SyncState target) {
  std::lock_guard<std::mutex> lock(mutex_);
  MarkResult result;
  std::string lines;
  std::vector<std::string> to_apply;
  for (const std::string& id : ids) {
    const auto it = states_.find(id);
    if (it == states_.end()) {
      result.unknown.push_back(id);
      continue;
    }
    if (it->second != SyncState::kPending) {
      result.unchanged.push_back(id);
      continue;
    }
    lines += sync_state_name(target);
    lines += ' ';
    lines += id;
    lines += '\n';
    to_apply.push_back(id);
  }
  if (!to_apply.empty()) {
    append_durable(state_fd_, lines, state_path_);
    for (const std::string& id : to_apply) {
      states_[id] = target;
      result.applied.push_back(id);
    }
  }
  return result;
}

RecordStore::MarkResult RecordStore::mark_synced(
    const std::vector<std::string>& record_ids) {
  return mark(record_ids, SyncState::kSynced);
}

RecordStore::MarkResult RecordStore::mark_dead_letter(
    const std::vector<std::string>& record_ids) {
  return mark(record_ids, SyncState::kDeadLetter);
}

bool RecordStore::contains(const std::string& record_id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return by_id_.count(record_id) != 0;
}

std::optional<FeatureRecord> RecordStore::find(
    const std::string& record_id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = by_id_.find(record_id);
  if (it == by_id_.end()) return std::nullopt;
  return records_[it->second];
}

std::optional<SyncState> RecordStore::state_of(
    const std::string& record_id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = states_.find(record_id);
  if (it == states_.end()) return std::nullopt;
  return it->second;
}

std::size_t RecordStore::record_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return records_.size();
}

std::size_t RecordStore::count_in_state(SyncState s) const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::size_t count = 0;
  for (const auto& [id, state] : states_) {
    if (state == s) ++count;
  }
  return count;
}

}  // namespace speechfog
