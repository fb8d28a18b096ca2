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

#ifndef SPEECHFOG_ERRORS_HPP
#define SPEECHFOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace speechfog {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid analysis or gateway configuration (hop > window, bad FFT size, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Degenerate or out-of-domain input to a DSP primitive.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed byte stream where a RIFF/WAVE file was expected.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Structurally valid WAV that uses an encoding we do not accept.
// The message names the offending field.
class UnsupportedFormatError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

// Inbox directory missing, unreadable, or vanished mid-watch.
class IngestError : public Error {
 public:
  using Error::Error;
};

// Local record store could not be read or durably written.
class PersistenceError : public Error {
 public:
  using Error::Error;
};

class ExportError : public Error {
 public:
  using Error::Error;
};

class BenchError : public Error {
 public:
  using Error::Error;
};

}  // namespace speechfog

#endif  // SPEECHFOG_ERRORS_HPP
