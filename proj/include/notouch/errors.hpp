// Copyright 2026 The notouch Authors
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

#ifndef NOTOUCH_ERRORS_HPP
#define NOTOUCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace notouch {

/// Raised when a caller breaks a documented precondition (shape, range,
/// particle number, Pauli exclusion, ...).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string &what) : std::invalid_argument(what) {}
};

/// Raised for parameter values at which a quantity is undefined, e.g. the
/// balancing amplitude at delta = 0 or delta = 1.
class DegenerateParameter : public std::domain_error {
 public:
  explicit DegenerateParameter(const std::string &what) : std::domain_error(what) {}
};

/// The brute-force oracle refuses instances beyond its cost guard rather
/// than approximating.
class OracleRefused : public std::length_error {
 public:
  explicit OracleRefused(const std::string &what) : std::length_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw ContractViolation(message);
    }
}

}  // namespace detail

}  // namespace notouch

#endif  // NOTOUCH_ERRORS_HPP
