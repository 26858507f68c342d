// Copyright 2026 The adiabatic-pointer Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adiabatic {

/// Every failure the library reports carries one of these kinds. The CLI maps
/// each kind to a stable process exit code (see `exit_code`).
enum class ErrorKind {
  InvalidState,
  GridTooNarrow,
  BranchOverlap,
  OutOfWindow,
  NonConverged,
  DegenerateSystem,
  MissingContext,
  UnknownKind,
  DatasetCorrupt,
  DivisionByZero,
  ParseError,
  ValidationError,
  IoError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::GridTooNarrow: return "GridTooNarrow";
    case ErrorKind::BranchOverlap: return "BranchOverlap";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::NonConverged: return "NonConverged";
    case ErrorKind::DegenerateSystem: return "DegenerateSystem";
    case ErrorKind::MissingContext: return "MissingContext";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::DatasetCorrupt: return "DatasetCorrupt";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Exit codes are part of the CLI contract; never renumber.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return 2;
    case ErrorKind::ValidationError: return 3;
    case ErrorKind::GridTooNarrow: return 4;
    case ErrorKind::BranchOverlap: return 5;
    case ErrorKind::OutOfWindow: return 6;
    case ErrorKind::NonConverged: return 7;
    case ErrorKind::DegenerateSystem: return 8;
    case ErrorKind::MissingContext: return 9;
    case ErrorKind::UnknownKind: return 10;
    case ErrorKind::DatasetCorrupt: return 11;
    case ErrorKind::DivisionByZero: return 12;
    case ErrorKind::IoError: return 13;
    case ErrorKind::InvalidState: return 14;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace adiabatic
