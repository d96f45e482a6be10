// Copyright 2026 The miabench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIABENCH_ERRORS_H_
#define MIABENCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace miabench {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration (maps to CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input whose contents violate an invariant (shapes, ranges).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation is undefined for the given arguments (empty class, zero
// direction, dimension mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace miabench

#endif  // MIABENCH_ERRORS_H_
