// Copyright 2026 The retrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RETRACE_COMMON_ERROR_H_
#define RETRACE_COMMON_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace retrace {

// Base of every error raised by the library. CLI entry points catch this and
// map it to a non-zero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (empty candidate set, bad id...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A configuration or data file is missing or unreadable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Network failure that survived the retry budget.
class TransportError : public Error {
 public:
  using Error::Error;
};

// A response or file could not be decoded. `index` is the offending record.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t index)
      : Error(what + " (record " + std::to_string(index) + ")"), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Name not present in a lookup table.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Optimistic write against a stale version.
class ConflictError : public Error {
 public:
  ConflictError(const std::string& what, long current_version)
      : Error(what), current_version_(current_version) {}
  long current_version() const { return current_version_; }

 private:
  long current_version_;
};

// Non-finite value produced during iterative estimation.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, int iteration)
      : Error(what + " at iteration " + std::to_string(iteration)),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// Number-of-topics selection could not pick a value.
class SelectionError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage is missing an upstream artifact.
class DependencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace retrace

#endif  // RETRACE_COMMON_ERROR_H_
