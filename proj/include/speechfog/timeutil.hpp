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

#ifndef SPEECHFOG_TIMEUTIL_HPP
#define SPEECHFOG_TIMEUTIL_HPP

#include <chrono>
#include <string>

namespace speechfog {

using UtcTime = std::chrono::system_clock::time_point;

// "2026-08-14T08:31:00.123Z" — UTC, millisecond precision.
std::string format_utc_ms(UtcTime t);

// Inverse of format_utc_ms. Throws Error on malformed input.
UtcTime parse_utc_ms(const std::string& s);

UtcTime utc_now();

}  // namespace speechfog

#endif  // SPEECHFOG_TIMEUTIL_HPP
