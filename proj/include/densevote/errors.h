// Copyright 2026 The densevote Authors
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

#ifndef DENSEVOTE_ERRORS_H_
#define DENSEVOTE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace densevote {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid parameter values (c <= 1, T out of range, infeasible blocks, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A precondition on the arguments was violated (index out of range, graph too
// large for an exhaustive search, nothing to peel, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace densevote

#endif  // DENSEVOTE_ERRORS_H_
