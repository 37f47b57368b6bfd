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

#ifndef PDSCERT_NUMERIC_HPP
#define PDSCERT_NUMERIC_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace pdscert {

/// Floor of the square root of a nonnegative integer, exact for the whole
/// int64 range.
constexpr std::int64_t isqrt(std::int64_t n) {
  if (n < 2) return n < 0 ? 0 : n;
  // Newton iteration from an upper bound; monotone decreasing to the floor.
  std::uint64_t x = static_cast<std::uint64_t>(n);
  std::uint64_t y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + static_cast<std::uint64_t>(n) / x) / 2;
  }
  return static_cast<std::int64_t>(x);
}

/// The exact square root of n when n is a perfect square.
constexpr std::optional<std::int64_t> exact_sqrt(std::int64_t n) {
  if (n < 0) return std::nullopt;
  const std::int64_t r = isqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

constexpr bool is_perfect_square(std::int64_t n) { return exact_sqrt(n).has_value(); }

/// Floor division, rounding toward negative infinity.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Least nonnegative residue of a modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Prime factorisation as (prime, exponent) pairs, primes ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Euler's totient.
inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (const auto& [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

/// All partitions of n into positive parts, each in nonincreasing order,
/// listed in reverse lexicographic order.
inline std::vector<std::vector<int>> integer_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Gaussian binomial coefficient [n choose k]_q.
inline std::int64_t gaussian_binomial(int n, int k, std::int64_t q) {
  if (k < 0 || k > n) return 0;
  std::int64_t num = 1;
  std::int64_t den = 1;
  auto pow = [](std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  for (int i = 0; i < k; ++i) {
    num *= pow(q, n - i) - 1;
    den *= pow(q, i + 1) - 1;
  }
  return num / den;
}

}  // namespace pdscert

#endif  // PDSCERT_NUMERIC_HPP
