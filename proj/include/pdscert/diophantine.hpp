// Copyright 2026 The pdscert Authors
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

#ifndef PDSCERT_DIOPHANTINE_HPP
#define PDSCERT_DIOPHANTINE_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pdscert/errors.hpp"
#include "pdscert/numeric.hpp"

namespace pdscert {

/// Nonincreasing nonnegative tuples of fixed length with prescribed sum and
/// sum of squares.
struct CSystem {
  int length = 1;
  std::int64_t sum = 0;
  std::int64_t sum_of_squares = 0;

  CSystem() = default;
  CSystem(int length_, std::int64_t sum_, std::int64_t sum_of_squares_) : length(length_), sum(sum_), sum_of_squares(sum_of_squares_) {
    if (length < 1) throw PreconditionError("tuple length must be >= 1");
    if (sum < 0 || sum_of_squares < 0) throw PreconditionError("targets must be nonnegative");
  }

  /// Cauchy-Schwarz: L * S2 >= S1^2 is necessary for any real solution.
  bool satisfies_cauchy_schwarz() const { return static_cast<std::int64_t>(length) * sum_of_squares >= sum * sum; }

  friend bool operator==(const CSystem&, const CSystem&) = default;
};

using CTuple = std::vector<std::int64_t>;

/// Every solution, lexicographically descending.
inline std::vector<CTuple> enumerate_solutions(const CSystem& sys) {
  std::vector<CTuple> out;
  if (!sys.satisfies_cauchy_schwarz()) return out;
  // Sum of squares dominates sum for nonnegative integers.
  if (sys.sum_of_squares < sys.sum) return out;

  CTuple current(static_cast<std::size_t>(sys.length), 0);
  auto rec = [&](auto&& self, int pos, std::int64_t cap, std::int64_t rem_sum, std::int64_t rem_sq) -> void {
    const std::int64_t slots = sys.length - pos;
    if (slots == 0) {
      if (rem_sum == 0 && rem_sq == 0) out.push_back(current);
      return;
    }
    // The remaining slots can hold at most slots * cap, and need at least
    // rem_sum^2 / slots in squares.
    if (rem_sum > slots * cap) return;
    if (slots * rem_sq < rem_sum * rem_sum) return;
    const std::int64_t hi = std::min({cap, rem_sum, isqrt(rem_sq)});
    for (std::int64_t c = hi; c >= 0; --c) {
      // A nonincreasing tail with first entry c has sum at most slots * c.
      if (c * slots < rem_sum) break;
      current[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, c, rem_sum - c, rem_sq - c * c);
    }
    current[static_cast<std::size_t>(pos)] = 0;
  };
  rec(rec, 0, sys.sum, sys.sum, sys.sum_of_squares);
  return out;
}

/// "(5,3,2,...)"
inline std::string format_tuple(const CTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace pdscert

#endif  // PDSCERT_DIOPHANTINE_HPP
