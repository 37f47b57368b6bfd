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
//! Partial difference sets: parameters, verification, and the classical
//! feasibility criteria for Abelian groups (Sylow exclusions, the subgroup
//! intersection formula, and the local multiplier orbits).

#ifndef PDSCERT_PDS_HPP
#define PDSCERT_PDS_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pdscert/errors.hpp"
#include "pdscert/group.hpp"
#include "pdscert/numeric.hpp"

namespace pdscert {

/// (v, k, lambda, mu) with the derived beta = lambda - mu and
/// Delta = beta^2 + 4(k - mu).
struct PdsParams {
  std::int64_t v = 0;
  std::int64_t k = 0;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;

  PdsParams() = default;
  PdsParams(std::int64_t v_, std::int64_t k_, std::int64_t lambda_, std::int64_t mu_) : v(v_), k(k_), lambda(lambda_), mu(mu_) {
    if (v < 1 || k < 0 || k >= v || lambda < 0 || mu < 0 || lambda > k || mu > k) {
      throw PreconditionError("invalid parameters " + to_string() + ": need 0 <= k < v and 0 <= lambda, mu <= k");
    }
  }

  /// "v,k,lambda,mu"
  static PdsParams parse(std::string_view text) {
    std::vector<std::int64_t> values;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      long long x = 0;
      try {
        x = std::stoll(item, &used);
      } catch (const std::exception&) {
        throw ParseError("parameter '" + item + "' is not an integer");
      }
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw ParseError("parameter '" + item + "' is not an integer");
      values.push_back(x);
    }
    if (values.size() != 4) throw ParseError("expected v,k,lambda,mu, got '" + s + "'");
    try {
      return PdsParams(values[0], values[1], values[2], values[3]);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }

  std::int64_t beta() const noexcept { return lambda - mu; }
  std::int64_t delta() const noexcept { return beta() * beta() + 4 * (k - mu); }
  std::optional<std::int64_t> sqrt_delta() const { return exact_sqrt(delta()); }

  std::string to_string() const {
    return std::to_string(v) + "," + std::to_string(k) + "," + std::to_string(lambda) + "," + std::to_string(mu);
  }

  friend bool operator==(const PdsParams&, const PdsParams&) = default;
};

/// A subset D of a group, kept sorted and duplicate-free.
class CandidateSet {
 public:
  explicit CandidateSet(GroupSpec group, std::vector<GroupElement> elements = {}) : group_(std::move(group)) {
    for (const auto& g : elements) {
      if (!group_.contains(g)) throw StructuralError("element " + g.to_string() + " is not in " + group_.notation());
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    elements_ = std::move(elements);
  }

  const GroupSpec& group() const noexcept { return group_; }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const GroupElement& g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

  bool contains_identity() const { return contains(group_.identity()); }

  bool is_inverse_closed() const {
    return std::all_of(elements_.begin(), elements_.end(), [&](const GroupElement& g) { return contains(group_.inverse(g)); });
  }

  friend bool operator==(const CandidateSet& a, const CandidateSet& b) { return a.group_ == b.group_ && a.elements_ == b.elements_; }

 private:
  GroupSpec group_;
  std::vector<GroupElement> elements_;
};

/// Counts of ordered pairs (g, h) in D x D, g != h, per difference g h^-1.
class DifferenceSpectrum {
 public:
  DifferenceSpectrum(GroupSpec group, std::vector<std::int64_t> counts) : group_(std::move(group)), counts_(std::move(counts)) {}

  std::int64_t count(const GroupElement& x) const { return counts_.at(group_.index_of(x)); }
  const std::vector<std::int64_t>& by_index() const noexcept { return counts_; }
  std::int64_t total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

  /// Nonzero entries keyed by element, canonical order.
  std::map<GroupElement, std::int64_t> as_map() const {
    std::map<GroupElement, std::int64_t> out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] != 0) out.emplace(group_.element_at(i), counts_[i]);
    }
    return out;
  }

 private:
  GroupSpec group_;
  std::vector<std::int64_t> counts_;
};

inline DifferenceSpectrum difference_spectrum(const CandidateSet& d) {
  const GroupSpec& group = d.group();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(group.order()), 0);
  const auto& xs = d.elements();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      ++counts[group.index_of(group.compose(xs[i], group.inverse(xs[j])))];
    }
  }
  return {group, std::move(counts)};
}

struct VerificationReport {
  bool passed = false;
  std::string reason;  // empty on success
  std::optional<GroupElement> first_violation;
  std::int64_t expected = 0;
  std::int64_t observed = 0;
};

/// Checks the defining counts of a (v,k,lambda,mu)-PDS. The first violation
/// in canonical element order is reported.
inline VerificationReport verify_pds(const CandidateSet& d, const PdsParams& p) {
  VerificationReport report;
  if (d.group().order() != p.v) {
    report.reason = "group order " + std::to_string(d.group().order()) + " != v = " + std::to_string(p.v);
    report.expected = p.v;
    report.observed = d.group().order();
    return report;
  }
  if (static_cast<std::int64_t>(d.size()) != p.k) {
    report.reason = "cardinality " + std::to_string(d.size()) + " != k = " + std::to_string(p.k);
    report.expected = p.k;
    report.observed = static_cast<std::int64_t>(d.size());
    return report;
  }
  const GroupSpec& group = d.group();
  const auto spectrum = difference_spectrum(d);
  for (std::size_t i = 1; i < static_cast<std::size_t>(group.order()); ++i) {
    const GroupElement x = group.element_at(i);
    const bool in_d = d.contains(x);
    const std::int64_t want = in_d ? p.lambda : p.mu;
    const std::int64_t got = spectrum.by_index()[i];
    if (got != want) {
      report.reason = "spectrum mismatch at " + x.to_string() + (in_d ? " (in D)" : " (not in D)") + ": " +
                      std::to_string(got) + " representations, expected " + std::to_string(want);
      report.first_violation = x;
      report.expected = want;
      report.observed = got;
      return report;
    }
  }
  report.passed = true;
  return report;
}

/// Inverse-closed and identity-free.
inline bool is_regular(const CandidateSet& d) { return !d.contains_identity() && d.is_inverse_closed(); }

/// D u {e} or G \ D is a subgroup (explicit closure check of both).
inline bool is_trivial(const CandidateSet& d) {
  const GroupSpec& group = d.group();
  std::vector<GroupElement> with_e = d.elements();
  if (!d.contains_identity()) with_e.push_back(group.identity());
  if (Subgroup::is_subgroup(group, with_e)) return true;
  std::vector<GroupElement> complement;
  for (auto& g : group.elements()) {
    if (!d.contains(g)) complement.push_back(std::move(g));
  }
  return Subgroup::is_subgroup(group, std::move(complement));
}

struct MaPrimeVerdict {
  std::int64_t prime = 0;
  std::vector<std::int64_t> sylow_factors;
  bool excluded = false;
  std::string reason;
};

struct MaExclusionReport {
  GroupSpec group;
  std::vector<MaPrimeVerdict> per_prime;

  bool excluded() const {
    return std::any_of(per_prime.begin(), per_prime.end(), [](const MaPrimeVerdict& v) { return v.excluded; });
  }
};

/// Sylow-based exclusions: no nontrivial PDS exists when some Sylow-p part
/// is cyclic and |G| != p, or is Z_{p^s} x Z_{p^t} with s != t.
inline MaExclusionReport ma_exclusion(const GroupSpec& group) {
  MaExclusionReport report{group, {}};
  for (std::int64_t p : group.primes()) {
    MaPrimeVerdict verdict;
    verdict.prime = p;
    verdict.sylow_factors = group.sylow_factors(p);
    const auto& fs = verdict.sylow_factors;
    if (fs.size() == 1 && group.order() != p) {
      verdict.excluded = true;
      verdict.reason = "cyclic Sylow-" + std::to_string(p) + " subgroup Z" + std::to_string(fs[0]) + " and |G| != " + std::to_string(p);
    } else if (fs.size() == 2 && fs[0] != fs[1]) {
      verdict.excluded = true;
      verdict.reason = "Sylow-" + std::to_string(p) + " subgroup Z" + std::to_string(fs[0]) + "xZ" + std::to_string(fs[1]) + " with unequal exponents";
    } else if (fs.size() == 1) {
      verdict.reason = "Sylow-" + std::to_string(p) + " subgroup is the whole group of prime order";
    } else {
      verdict.reason = "Sylow-" + std::to_string(p) + " subgroup has rank " + std::to_string(fs.size()) +
                       (fs.size() == 2 ? " with equal exponents" : "");
    }
    report.per_prime.push_back(std::move(verdict));
  }
  return report;
}

/// Intermediate values of the intersection-size formula for D n N.
struct MaIntersectionTrace {
  std::int64_t n = 0;
  std::int64_t sqrt_delta = 0;
  std::int64_t pi = 0;
  std::int64_t theta = 0;
  std::int64_t beta1 = 0;
  std::int64_t delta1 = 0;
  std::int64_t discriminant = 0;
  bool discriminant_is_square = false;
  /// Numerators n + beta1 -/+ sqrt(discriminant), when the root is exact.
  std::vector<std::int64_t> branch_numerators;
  /// Admissible |D n N|: nonnegative integers <= min(n, k), ascending.
  std::vector<std::int64_t> candidate_sizes;
};

/// Evaluates the intersection formula without checking its hypotheses
/// beyond Delta being a perfect square.
inline MaIntersectionTrace ma_intersection_formula(const PdsParams& p, std::int64_t n) {
  const auto root = p.sqrt_delta();
  if (!root) throw InapplicableError("Delta = " + std::to_string(p.delta()) + " is not a perfect square");
  if (n < 1) throw InapplicableError("subgroup order must be positive");
  MaIntersectionTrace t;
  t.n = n;
  t.sqrt_delta = *root;
  t.pi = std::gcd(n, *root);
  if (t.pi == 0) throw InapplicableError("pi = gcd(|N|, sqrt(Delta)) is zero");
  // (2 theta - 1) pi <= beta < (2 theta + 1) pi
  t.theta = floor_div(p.beta() + t.pi, 2 * t.pi);
  t.beta1 = p.beta() - 2 * t.theta * t.pi;
  t.delta1 = t.pi * t.pi;
  t.discriminant = (n + t.beta1) * (n + t.beta1) - (t.delta1 - t.beta1 * t.beta1) * (n - 1);
  const auto disc_root = exact_sqrt(t.discriminant);
  t.discriminant_is_square = disc_root.has_value();
  if (disc_root) {
    for (std::int64_t num : {n + t.beta1 - *disc_root, n + t.beta1 + *disc_root}) {
      t.branch_numerators.push_back(num);
      if (num < 0 || num % 2 != 0) continue;
      const std::int64_t size = num / 2;
      if (size <= std::min(n, p.k)) t.candidate_sizes.push_back(size);
    }
  }
  std::sort(t.candidate_sizes.begin(), t.candidate_sizes.end());
  t.candidate_sizes.erase(std::unique(t.candidate_sizes.begin(), t.candidate_sizes.end()), t.candidate_sizes.end());
  return t;
}

/// Possible |D n N| for a subgroup N of order n with gcd(n, v/n) = 1 and
/// v/n odd, when Delta is a perfect square.
inline MaIntersectionTrace ma_subgroup_intersection(const PdsParams& p, std::int64_t n) {
  if (!p.sqrt_delta()) throw InapplicableError("Delta = " + std::to_string(p.delta()) + " is not a perfect square");
  if (n < 1 || p.v % n != 0) throw InapplicableError("|N| = " + std::to_string(n) + " does not divide v = " + std::to_string(p.v));
  const std::int64_t index = p.v / n;
  if (std::gcd(n, index) != 1) throw InapplicableError("gcd(|N|, |G|/|N|) = " + std::to_string(std::gcd(n, index)) + " != 1");
  if (index % 2 == 0) throw InapplicableError("|G|/|N| = " + std::to_string(index) + " is not odd");
  return ma_intersection_formula(p, n);
}

/// {g^s : gcd(s, o(g)) = 1}, canonical order.
inline std::vector<GroupElement> lmt_orbit(const GroupSpec& group, const GroupElement& g) {
  const std::int64_t o = group.order_of(g);
  std::vector<GroupElement> out;
  for (std::int64_t s = 1; s <= o; ++s) {
    if (std::gcd(s, o) == 1) out.push_back(group.power(g, s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True when D is a union of multiplier orbits.
inline bool lmt_closed(const CandidateSet& d) {
  for (const auto& g : d.elements()) {
    for (const auto& h : lmt_orbit(d.group(), g)) {
      if (!d.contains(h)) return false;
    }
  }
  return true;
}

/// Partition of G into multiplier orbits, ordered by least element.
inline std::vector<std::vector<GroupElement>> lmt_orbits(const GroupSpec& group) {
  std::vector<bool> seen(static_cast<std::size_t>(group.order()), false);
  std::vector<std::vector<GroupElement>> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) continue;
    auto orbit = lmt_orbit(group, group.element_at(i));
    for (const auto& x : orbit) seen[group.index_of(x)] = true;
    out.push_back(std::move(orbit));
  }
  return out;
}

/// For each order-3 element g, the number of x in D with x^4 = g.
///
/// Supported groups: elementary Abelian 3-part of positive rank times an
/// elementary Abelian (possibly trivial) 2-part, so that x -> x^4 sends
/// every element of order 3 or 6 to an element of order 3.
inline std::map<GroupElement, std::int64_t> b_profile(const CandidateSet& d) {
  const GroupSpec& group = d.group();
  for (std::size_t i = 0; i < group.rank(); ++i) {
    const auto p = group.factor_primes()[i];
    if ((p != 2 && p != 3) || group.factors()[i] != p) {
      throw StructuralError("b_profile needs Z2^a x Z3^b, got " + group.notation());
    }
  }
  if (group.order() % 3 != 0) throw StructuralError("b_profile needs elements of order 3 in " + group.notation());
  std::map<GroupElement, std::int64_t> out;
  for (const auto& g : elements_of_order(group, 3)) out.emplace(g, 0);
  for (const auto& x : d.elements()) {
    const auto it = out.find(group.power(x, 4));
    if (it != out.end()) ++it->second;
  }
  return out;
}

}  // namespace pdscert

#endif  // PDSCERT_PDS_HPP
