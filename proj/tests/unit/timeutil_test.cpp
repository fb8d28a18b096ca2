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

#include <chrono>

#include <doctest.h>

#include "speechfog/errors.hpp"

namespace speechfog {
namespace {

TEST_CASE("utc timestamps format to millisecond iso-8601") {
  const UtcTime epoch{};
  CHECK(format_utc_ms(epoch) == "1970-01-01T00:00:00.000Z");

  const UtcTime t = epoch + std::chrono::milliseconds(1755163860123LL);
  CHECK(format_utc_ms(t) == "2025-08-14T09:31:00.123Z");
}

TEST_CASE("format and parse round-trip at millisecond precision") {
  const UtcTime now = utc_now();
  CHECK(parse_utc_ms(format_utc_ms(now)) == now);

  const std::string fixed = "2026-02-28T23:59:59.999Z";
  CHECK(format_utc_ms(parse_utc_ms(fixed)) == fixed);
}

TEST_CASE("garbage timestamps are rejected") {
  CHECK_THROWS_AS((void)parse_utc_ms("not a time"), Error);
  CHECK_THROWS_AS((void)parse_utc_ms("2026-02-28"), Error);
  CHECK_THROWS_AS((void)parse_utc_ms(""), Error);
}

}  // namespace
}  // namespace speechfog
