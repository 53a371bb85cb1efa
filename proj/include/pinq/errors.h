// Copyright 2026 The Authors.
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

#ifndef PINQ_ERRORS_H_
#define PINQ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace pinq {

// An argument lies outside the domain an operation accepts (bad index,
// negative weight, malformed family, ...).
class InputDomainError : public std::invalid_argument {
 public:
  explicit InputDomainError(const std::string& what)
      : std::invalid_argument(what) {}
};

// The operation is well-formed but not defined for this kind of object, e.g.
// rank queries on a matching environment.
class UnsupportedOperationError : public std::logic_error {
 public:
  explicit UnsupportedOperationError(const std::string& what)
      : std::logic_error(what) {}
};

// Configuration could not be honored (unknown algorithm, env/algorithm
// mismatch, missing sample budget).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pinq

#endif  // PINQ_ERRORS_H_
