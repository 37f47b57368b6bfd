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

//! @file
//! Finite Abelian groups given as products of cyclic factors.
//!
//! A group is stored in primary-decomposed canonical form: every factor is a
//! prime power and factors are sorted by (prime, exponent). Elements are
//! exponent vectors, one residue per factor. The canonical total order on
//! elements is lexicographic on those vectors, which coincides with the
//! mixed-radix index order used by `GroupSpec::index_of`.

#ifndef PDSCERT_GROUP_HPP
#define PDSCERT_GROUP_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdscert/errors.hpp"
#include "pdscert/numeric.hpp"

namespace pdscert {

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int32_t> exponents) : exponents_(std::move(exponents)) {}

  const std::vector<std::int32_t>& exponents() const noexcept { return exponents_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  std::int32_t operator[](std::size_t i) const { return exponents_[i]; }

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  /// "(a1,...,an)"
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(exponents_[i]);
    }
    out += ')';
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << g.to_string(); }

 private:
  std::vector<std::int32_t> exponents_;
};

class GroupSpec {
 public:
  GroupSpec() : GroupSpec(std::vector<std::int64_t>{}) {}

  /// Any list of cyclic orders >= 2; they are split into prime powers and
  /// sorted. An empty list is the trivial group.
  explicit GroupSpec(const std::vector<std::int64_t>& cyclic_orders) {
    std::vector<std::pair<std::int64_t, std::int64_t>> keyed;  // (prime, prime power)
    for (std::int64_t n : cyclic_orders) {
      if (n < 2) throw StructuralError("cyclic factor order must be >= 2, got " + std::to_string(n));
      for (const auto& [p, e] : factorize(n)) {
        std::int64_t q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        keyed.emplace_back(p, q);
      }
    }
    std::sort(keyed.begin(), keyed.end());
    order_ = 1;
    for (const auto& [p, q] : keyed) {
      factors_.push_back(static_cast<std::int32_t>(q));
      primes_.push_back(static_cast<std::int32_t>(p));
      order_ *= q;
    }
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * factors_[i];
  }

  /// Parses `Zn^k` terms joined by `x`, e.g. "Z2^3xZ3^3". Whitespace is
  /// ignored and `Z`/`x` are case-insensitive.
  static GroupSpec parse(std::string_view text) {
    std::string s;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (s.empty()) throw ParseError("empty group notation");
    std::vector<std::int64_t> orders;
    std::size_t pos = 0;
    auto read_int = [&](const char* what) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos || pos - start > 9) {
        throw ParseError(std::string("expected ") + what + " at position " + std::to_string(start) + " in '" + std::string(text) + "'");
      }
      return std::stoll(s.substr(start, pos - start));
    };
    while (true) {
      if (pos >= s.size() || s[pos] != 'z') {
        throw ParseError("expected 'Z' at position " + std::to_string(pos) + " in '" + std::string(text) + "'");
      }
      ++pos;
      const std::int64_t n = read_int("cyclic order");
      std::int64_t k = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        k = read_int("exponent");
      }
      if (n < 2) throw ParseError("cyclic order must be >= 2 in '" + std::string(text) + "'");
      if (k < 1 || k > 64) throw ParseError("exponent out of range in '" + std::string(text) + "'");
      for (std::int64_t i = 0; i < k; ++i) orders.push_back(n);
      if (pos == s.size()) break;
      if (s[pos] != 'x') throw ParseError("expected 'x' at position " + std::to_string(pos) + " in '" + std::string(text) + "'");
      ++pos;
    }
    GroupSpec g(orders);
    if (g.order() > kMaxOrder) throw ParseError("group order " + std::to_string(g.order()) + " exceeds supported maximum");
    return g;
  }

  static constexpr std::int64_t kMaxOrder = 1 << 20;

  const std::vector<std::int32_t>& factors() const noexcept { return factors_; }
  /// Prime underlying each factor, aligned with `factors()`.
  const std::vector<std::int32_t>& factor_primes() const noexcept { return primes_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::int64_t order() const noexcept { return order_; }

  /// Distinct primes dividing the order, ascending.
  std::vector<std::int64_t> primes() const {
    std::vector<std::int64_t> out;
    for (std::int32_t p : primes_) {
      if (out.empty() || out.back() != p) out.push_back(p);
    }
    return out;
  }

  /// Orders of the cyclic factors of the Sylow-p part, ascending.
  std::vector<std::int64_t> sylow_factors(std::int64_t p) const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (primes_[i] == p) out.push_back(factors_[i]);
    }
    return out;
  }

  std::string notation() const {
    if (factors_.empty()) return "Z1";
    std::string out;
    for (std::size_t i = 0; i < factors_.size();) {
      std::size_t j = i;
      while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
      if (!out.empty()) out += 'x';
      out += 'Z' + std::to_string(factors_[i]);
      if (j - i > 1) out += '^' + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.factors_ == b.factors_; }

  bool contains(const GroupElement& g) const noexcept {
    if (g.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (g[i] < 0 || g[i] >= factors_[i]) return false;
    }
    return true;
  }

  /// Builds an element, reducing each entry modulo its factor.
  GroupElement element(const std::vector<std::int64_t>& exponents) const {
    if (exponents.size() != factors_.size()) {
      throw StructuralError("element has " + std::to_string(exponents.size()) + " entries, group " + notation() +
                            " has " + std::to_string(factors_.size()) + " factors");
    }
    std::vector<std::int32_t> e(exponents.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::int32_t>(mod(exponents[i], factors_[i]));
    return GroupElement(std::move(e));
  }

  /// Parses an element literal "(a1,...,an)"; entries must already be reduced.
  GroupElement parse_element(std::string_view text) const {
    std::string s;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("element literal must be parenthesised: '" + std::string(text) + "'");
    std::vector<std::int64_t> values;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw ParseError("empty entry in element literal '" + std::string(text) + "'");
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(item, &used);
      } catch (const std::exception&) {
        throw ParseError("non-integer entry '" + item + "' in element literal");
      }
      if (used != item.size()) throw ParseError("non-integer entry '" + item + "' in element literal");
      values.push_back(v);
    }
    return checked_element(values);
  }

  /// Like `element` but rejects entries outside [0, factor).
  GroupElement checked_element(const std::vector<std::int64_t>& values) const {
    if (values.size() != factors_.size()) {
      throw ParseError("element has " + std::to_string(values.size()) + " entries, expected " + std::to_string(factors_.size()) +
                       " for " + notation());
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 0 || values[i] >= factors_[i]) {
        throw ParseError("entry " + std::to_string(i) + " = " + std::to_string(values[i]) + " not in [0," + std::to_string(factors_[i]) + ")");
      }
    }
    return element(values);
  }

  GroupElement identity() const { return GroupElement(std::vector<std::int32_t>(factors_.size(), 0)); }

  GroupElement compose(const GroupElement& g, const GroupElement& h) const {
    require_member(g);
    require_member(h);
    std::vector<std::int32_t> e(factors_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = (g[i] + h[i]) % factors_[i];
    return GroupElement(std::move(e));
  }

  GroupElement inverse(const GroupElement& g) const {
    require_member(g);
    std::vector<std::int32_t> e(factors_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = (factors_[i] - g[i]) % factors_[i];
    return GroupElement(std::move(e));
  }

  /// g^s for any integer s, negative included.
  GroupElement power(const GroupElement& g, std::int64_t s) const {
    require_member(g);
    std::vector<std::int32_t> e(factors_.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::int64_t f = factors_[i];
      e[i] = static_cast<std::int32_t>(mod(static_cast<std::int64_t>(g[i]) * mod(s, f), f));
    }
    return GroupElement(std::move(e));
  }

  std::int64_t order_of(const GroupElement& g) const {
    require_member(g);
    std::int64_t result = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::int64_t f = factors_[i];
      result = std::lcm(result, f / std::gcd<std::int64_t>(g[i], f));
    }
    return result;
  }

  /// Mixed-radix index, first factor most significant.
  std::size_t index_of(const GroupElement& g) const {
    require_member(g);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) idx += static_cast<std::size_t>(g[i]) * strides_[i];
    return idx;
  }

  GroupElement element_at(std::size_t index) const {
    std::vector<std::int32_t> e(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      e[i] = static_cast<std::int32_t>(index / strides_[i]);
      index %= strides_[i];
    }
    return GroupElement(std::move(e));
  }

  /// All elements in canonical order.
  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) out.push_back(element_at(i));
    return out;
  }

 private:
  void require_member(const GroupElement& g) const {
    if (g.size() != factors_.size()) {
      throw StructuralError("element " + g.to_string() + " does not match factor count of " + notation());
    }
  }

  std::vector<std::int32_t> factors_;
  std::vector<std::int32_t> primes_;
  std::vector<std::size_t> strides_;
  std::int64_t order_ = 1;
};

/// A subgroup with an explicit sorted element list.
class Subgroup {
 public:
  /// Closure of `generators` under composition.
  static Subgroup generated_by(const GroupSpec& group, std::vector<GroupElement> generators) {
    std::set<GroupElement> seen{group.identity()};
    std::vector<GroupElement> frontier{group.identity()};
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (const auto& x : frontier) {
        for (const auto& g : generators) {
          GroupElement y = group.compose(x, g);
          if (seen.insert(y).second) next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
    return Subgroup(group, std::move(generators), {seen.begin(), seen.end()});
  }

  /// Wraps an explicit element list after verifying it is a subgroup.
  static Subgroup from_elements(const GroupSpec& group, std::vector<GroupElement> elements) {
    if (!is_subgroup(group, elements)) throw PreconditionError("element list is not a subgroup of " + group.notation());
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return Subgroup(group, elements, elements);
  }

  /// Explicit closure test: nonempty, contains e, closed under composition
  /// and inverse.
  static bool is_subgroup(const GroupSpec& group, std::vector<GroupElement> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty()) return false;
    auto has = [&](const GroupElement& x) { return std::binary_search(elements.begin(), elements.end(), x); };
    if (!has(group.identity())) return false;
    for (const auto& a : elements) {
      if (!group.contains(a)) return false;
      if (!has(group.inverse(a))) return false;
      for (const auto& b : elements) {
        if (!has(group.compose(a, b))) return false;
      }
    }
    return true;
  }

  const GroupSpec& group() const noexcept { return group_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::int64_t order() const noexcept { return static_cast<std::int64_t>(elements_.size()); }

  bool contains(const GroupElement& g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

  bool is_subset_of(const Subgroup& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.elements_ < b.elements_; }

 private:
  Subgroup(GroupSpec group, std::vector<GroupElement> generators, std::vector<GroupElement> elements)
      : group_(std::move(group)), generators_(std::move(generators)), elements_(std::move(elements)) {}

  GroupSpec group_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
};

/// Every element of order exactly n, in canonical order.
inline std::vector<GroupElement> elements_of_order(const GroupSpec& group, std::int64_t n) {
  if (n < 1) throw PreconditionError("element order must be >= 1");
  std::vector<GroupElement> out;
  for (auto& g : group.elements()) {
    if (group.order_of(g) == n) out.push_back(std::move(g));
  }
  return out;
}

/// All elements of p-power order.
inline Subgroup sylow_subgroup(const GroupSpec& group, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (group.order() % p != 0) {
    throw EmptySylowError(std::to_string(p) + " does not divide |" + group.notation() + "| = " + std::to_string(group.order()));
  }
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < group.rank(); ++i) {
    if (group.factor_primes()[i] != p) continue;
    std::vector<std::int64_t> e(group.rank(), 0);
    e[i] = 1;
    gens.push_back(group.element(e));
  }
  return Subgroup::generated_by(group, std::move(gens));
}

/// The complement of the Sylow-p part: every element of order coprime to p.
inline Subgroup hall_complement(const GroupSpec& group, std::int64_t p) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < group.rank(); ++i) {
    if (group.factor_primes()[i] == p) continue;
    std::vector<std::int64_t> e(group.rank(), 0);
    e[i] = 1;
    gens.push_back(group.element(e));
  }
  return Subgroup::generated_by(group, std::move(gens));
}

/// Rank of the Sylow-p part when it is elementary Abelian.
inline int elementary_rank(const GroupSpec& group, std::int64_t p) {
  const auto fs = group.sylow_factors(p);
  for (std::int64_t f : fs) {
    if (f != p) throw StructuralError("Sylow-" + std::to_string(p) + " part of " + group.notation() + " is not elementary Abelian");
  }
  return static_cast<int>(fs.size());
}

/// All subgroups isomorphic to Z_p^rank inside an elementary Abelian Sylow-p
/// part, found as row-reduced bases of rank-dimensional subspaces of GF(p)^r.
/// Sorted by element list.
inline std::vector<Subgroup> elementary_subgroups(const GroupSpec& group, std::int64_t p, int rank) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  const int r = elementary_rank(group, p);
  if (rank < 0 || rank > r) {
    throw PreconditionError("requested rank " + std::to_string(rank) + " exceeds Sylow-" + std::to_string(p) + " rank " + std::to_string(r));
  }
  std::vector<std::size_t> coords;  // factor positions of the Sylow-p part
  for (std::size_t i = 0; i < group.rank(); ++i) {
    if (group.factor_primes()[i] == p) coords.push_back(i);
  }

  std::vector<Subgroup> out;
  std::vector<int> pivots;
  // Free entries of row i live in non-pivot columns to the right of pivot i.
  auto emit_for_pivots = [&]() {
    std::vector<std::pair<int, int>> free_slots;
    for (int row = 0; row < rank; ++row) {
      for (int col = pivots[row] + 1; col < r; ++col) {
        if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) free_slots.emplace_back(row, col);
      }
    }
    std::vector<std::int64_t> digits(free_slots.size(), 0);
    while (true) {
      std::vector<std::vector<std::int64_t>> rows(rank, std::vector<std::int64_t>(r, 0));
      for (int row = 0; row < rank; ++row) rows[row][pivots[row]] = 1;
      for (std::size_t s = 0; s < free_slots.size(); ++s) rows[free_slots[s].first][free_slots[s].second] = digits[s];
      std::vector<GroupElement> gens;
      for (const auto& row : rows) {
        std::vector<std::int64_t> e(group.rank(), 0);
        for (int c = 0; c < r; ++c) e[coords[c]] = row[c];
        gens.push_back(group.element(e));
      }
      out.push_back(Subgroup::generated_by(group, std::move(gens)));
      std::size_t s = 0;
      while (s < digits.size() && ++digits[s] == p) digits[s++] = 0;
      if (s == digits.size()) break;
    }
  };
  auto choose = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pivots.size()) == rank) {
      emit_for_pivots();
      return;
    }
    for (int c = start; c < r; ++c) {
      pivots.push_back(c);
      self(self, c + 1);
      pivots.pop_back();
    }
  };
  choose(choose, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Internal direct product of two subgroups with trivial intersection.
inline Subgroup subgroup_product(const Subgroup& a, const Subgroup& b) {
  if (!(a.group() == b.group())) throw StructuralError("subgroups belong to different groups");
  const GroupSpec& group = a.group();
  for (const auto& x : a.elements()) {
    if (x != group.identity() && b.contains(x)) {
      throw PreconditionError("subgroups intersect nontrivially at " + x.to_string());
    }
  }
  std::vector<GroupElement> elements;
  elements.reserve(a.elements().size() * b.elements().size());
  for (const auto& x : a.elements()) {
    for (const auto& y : b.elements()) elements.push_back(group.compose(x, y));
  }
  std::vector<GroupElement> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  Subgroup product = Subgroup::generated_by(group, std::move(gens));
  std::sort(elements.begin(), elements.end());
  if (product.elements() != elements) throw IntegrityError("subgroup_product", "generator closure disagrees with elementwise product");
  return product;
}

/// Every Abelian group of order v up to isomorphism, one per choice of
/// partition of each prime exponent. Sylow types vary fastest for the
/// largest prime; each Sylow part is listed from cyclic to elementary.
inline std::vector<GroupSpec> abelian_groups_of_order(std::int64_t v) {
  if (v < 1) throw PreconditionError("group order must be positive");
  std::vector<std::vector<std::vector<std::int64_t>>> per_prime;
  for (const auto& [p, e] : factorize(v)) {
    std::vector<std::vector<std::int64_t>> options;
    for (const auto& part : integer_partitions(e)) {
      std::vector<std::int64_t> orders;
      for (int x : part) {
        std::int64_t q = 1;
        for (int i = 0; i < x; ++i) q *= p;
        orders.push_back(q);
      }
      options.push_back(std::move(orders));
    }
    per_prime.push_back(std::move(options));
  }
  std::vector<GroupSpec> out;
  std::vector<std::int64_t> current;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == per_prime.size()) {
      out.emplace_back(current);
      return;
    }
    for (const auto& opt : per_prime[i]) {
      const std::size_t mark = current.size();
      current.insert(current.end(), opt.begin(), opt.end());
      self(self, i + 1);
      current.resize(mark);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace pdscert

#endif  // PDSCERT_GROUP_HPP
