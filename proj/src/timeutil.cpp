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

#include "speechfog/timeutil.hpp"

#include <cinttypes>
#include <cstdio>
#include <ctime>

#include "speechfog/errors.hpp"

namespace speechfog {

std::string format_utc_ms(UtcTime t) {
  using namespace std::chrono;
  const auto ms = duration_cast<milliseconds>(t.time_since_epoch());
  const auto secs = ms.count() / 1000;
  const auto frac = ms.count() % 1000;

  std::time_t tt = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(frac));
  return buf;
}

UtcTime parse_utc_ms(const std::string& s) {
  int year = 0, mon = 0, day = 0, hour = 0, min = 0, sec = 0, ms = 0;
  char z = 0;
  const int got = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3d%c",
                              &year, &mon, &day, &hour, &min, &sec, &ms, &z);
  if (got != 8 || z != 'Z') {
    throw Error("malformed UTC timestamp: " + s);
  }
  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = mon - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = min;
  tm.tm_sec = sec;
  const std::time_t tt = timegm(&tm);
  return UtcTime{std::chrono::seconds(tt) + std::chrono::milliseconds(ms)};
}

UtcTime utc_now() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now());
}

}  // namespace speechfog
