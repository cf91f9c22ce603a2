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

#ifndef PROBGREEDY_OUTCOME_MASK_HPP_
#define PROBGREEDY_OUTCOME_MASK_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "probgreedy/errors.hpp"

namespace probgreedy {

// One realized delivery outcome per chain edge. Edge e carries the message
// from chain position e to position e + 1 (both zero-based).
class OutcomeMask {
 public:
  OutcomeMask() = default;
  explicit OutcomeMask(std::vector<bool> success) : success_(std::move(success)) {}

  static OutcomeMask uniform(int edges, bool delivered) {
    return OutcomeMask(std::vector<bool>(static_cast<std::size_t>(edges), delivered));
  }

  // Bit e of `bits` is the outcome of edge e.
  static OutcomeMask from_bits(std::uint64_t bits, int edges) {
    if (edges < 0 || edges > 64) throw DomainError("OutcomeMask: edge count must be in [0, 64]");
    std::vector<bool> s(static_cast<std::size_t>(edges));
    for (int e = 0; e < edges; ++e) s[e] = ((bits >> e) & 1u) != 0;
    return OutcomeMask(std::move(s));
  }

  // Parses "1011"; character k is edge k.
  static OutcomeMask parse(std::string_view text) {
    std::vector<bool> s;
    s.reserve(text.size());
    for (char c : text) {
      if (c == '1') {
        s.push_back(true);
      } else if (c == '0') {
        s.push_back(false);
      } else {
        throw DomainError("OutcomeMask: expected only '0'/'1' characters, got '" +
                          std::string(text) + "'");
      }
    }
    return OutcomeMask(std::move(s));
  }

  int size() const { return static_cast<int>(success_.size()); }
  bool operator[](int edge) const { return success_[static_cast<std::size_t>(edge)]; }
  void set(int edge, bool delivered) { success_[static_cast<std::size_t>(edge)] = delivered; }

  std::string to_string() const {
    std::string out;
    out.reserve(success_.size());
    for (bool b : success_) out.push_back(b ? '1' : '0');
    return out;
  }

  friend bool operator==(const OutcomeMask&, const OutcomeMask&) = default;

 private:
  std::vector<bool> success_;
};

// Clique number of the information graph induced by `mask` over a chain of
// mask.size() + 1 agents: the longest run of delivered edges, plus one.
inline int clique_number(const OutcomeMask& mask) {
  int best = 0;
  int run = 0;
  for (int e = 0; e < mask.size(); ++e) {
    run = mask[e] ? run + 1 : 0;
    if (run > best) best = run;
  }
  return best + 1;
}

}  // namespace probgreedy

#endif  // PROBGREEDY_OUTCOME_MASK_HPP_
