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

#ifndef PROBGREEDY_ERRORS_HPP_
#define PROBGREEDY_ERRORS_HPP_

#include <cstdio>
#include <stdexcept>
#include <string>

namespace probgreedy {

// A caller broke an operation's precondition (e.g. element already in set).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An argument is outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inputs are individually valid but do not fit together (lengths, shapes).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive routine refused to run because the search space is too big.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, double requested, double cap)
      : std::runtime_error(what + ": requested " + format(requested) +
                           " exceeds cap " + format(cap)),
        requested_(requested),
        cap_(cap) {}

  double requested() const { return requested_; }
  double cap() const { return cap_; }

 private:
  static std::string format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
  }

  double requested_;
  double cap_;
};

}  // namespace probgreedy

#endif  // PROBGREEDY_ERRORS_HPP_
