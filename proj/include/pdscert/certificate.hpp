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
//! Nonexistence certificates for regular PDS in Z2^a x Z3^3.
//!
//! The pipeline:
//!   1. Delta must be a perfect square (multiplier orbits apply).
//!   2. Sylow exclusions leave a single Abelian group of order v.
//!   3. The intersection formula bounds n2 = |D n N|, N the Sylow-2 subgroup.
//!   4. For each n2, the fourth-power fibre sizes B_g pair up into C_j
//!      with fixed sum and sum of squares; all solutions are enumerated.
//!   5. Counting differences inside each L x N fixes m = |(L x N) n D|,
//!      hence the allowed block weights m' = (m - n2) / 2 of the 13-point
//!      plane whose point weights are the C_j.
//!   6. Every solution multiset is placed on the plane exhaustively; an
//!      empty search closes it. Multisets with an odd entry are also closed
//!      by the parity identity, recorded alongside the search.

#ifndef PDSCERT_CERTIFICATE_HPP
#define PDSCERT_CERTIFICATE_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdscert/design.hpp"
#include "pdscert/diophantine.hpp"
#include "pdscert/errors.hpp"
#include "pdscert/group.hpp"
#include "pdscert/pds.hpp"

namespace pdscert {

using Json = nlohmann::ordered_json;

enum class Verdict { kNonexistent, kInconclusive };

inline const char* to_string(Verdict v) { return v == Verdict::kNonexistent ? "NONEXISTENT" : "INCONCLUSIVE"; }

struct Stage {
  Stage() = default;
  Stage(std::string name_, Json inputs_, Json outputs_ = Json::object(), std::string verdict_ = {})
      : name(std::move(name_)), inputs(std::move(inputs_)), outputs(std::move(outputs_)), verdict(std::move(verdict_)) {}

  std::string name;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::string verdict;
};

struct MultisetOutcome {
  CTuple multiset;
  bool has_odd_entry = false;
  bool parity_identity_holds = false;
  bool parity_excluded = false;
  std::size_t assignments_found = 0;
  std::string excluded_by;  // "parity", "search", or empty when open

  bool closed() const { return assignments_found == 0; }
};

struct CaseBranch {
  std::int64_t n2 = 0;
  std::int64_t sum_b_b_minus_1 = 0;
  CSystem system;
  std::vector<std::int64_t> m_options;
  std::set<std::int64_t> allowed_weights;
  std::vector<MultisetOutcome> outcomes;

  bool closed() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const MultisetOutcome& o) { return o.closed(); });
  }
};

struct Certificate {
  PdsParams params;
  std::optional<GroupSpec> group;
  std::vector<Stage> stages;
  std::vector<CaseBranch> branches;
  Verdict overall = Verdict::kInconclusive;

  const Stage* stage(const std::string& name) const {
    for (const auto& s : stages) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  Json to_json() const {
    Json j;
    j["params"] = {{"v", params.v}, {"k", params.k}, {"lambda", params.lambda}, {"mu", params.mu}};
    j["group"] = group ? Json(group->notation()) : Json(nullptr);
    j["stages"] = Json::array();
    for (const auto& s : stages) {
      j["stages"].push_back({{"name", s.name}, {"inputs", s.inputs}, {"outputs", s.outputs}, {"verdict", s.verdict}});
    }
    j["overall"] = to_string(overall);
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

struct GroupIdentification {
  std::vector<MaExclusionReport> reports;
  std::vector<GroupSpec> survivors;
};

/// Runs the Sylow exclusions over every Abelian group of order v.
inline GroupIdentification identify_groups(std::int64_t v) {
  GroupIdentification out;
  for (const auto& g : abelian_groups_of_order(v)) {
    auto report = ma_exclusion(g);
    if (!report.excluded()) out.survivors.push_back(g);
    out.reports.push_back(std::move(report));
  }
  return out;
}

/// The unique Abelian group of order v surviving the Sylow exclusions.
inline GroupSpec group_identification(std::int64_t v) {
  const auto id = identify_groups(v);
  if (id.survivors.size() != 1) {
    throw IntegrityError("group_identification", std::to_string(id.survivors.size()) + " Abelian groups of order " + std::to_string(v) +
                                                     " survive the Sylow exclusions, expected exactly 1");
  }
  return id.survivors.front();
}

inline GroupSpec z2_cubed_z3_cubed() { return GroupSpec({2, 2, 2, 3, 3, 3}); }

/// Targets for sum C_j and sum C_j^2 when D has n2 elements of order 2.
///
/// The involutions of N are each represented mu or lambda times; pairs
/// inside N n D account for n2(n2 - 1) of those, and the rest come from
/// pairs with equal fourth power: sum B(B - 1). Pairing B_{2j-1} = B_{2j}
/// = C_j halves both sums.
inline CSystem c_system_targets(const PdsParams& p, std::int64_t n2, const GroupSpec& group, std::int64_t* sum_b_b_minus_1 = nullptr) {
  const Subgroup n = sylow_subgroup(group, 2);
  const std::int64_t involutions = n.order() - 1;
  const std::int64_t order3 = static_cast<std::int64_t>(elements_of_order(group, 3).size());
  if (n2 < 0 || n2 > involutions) throw IntegrityError("c_system_targets", "n2 = " + std::to_string(n2) + " outside [0, " + std::to_string(involutions) + "]");
  if ((p.k - n2) % 2 != 0) throw IntegrityError("c_system_targets", "k - n2 = " + std::to_string(p.k - n2) + " is odd");
  if (order3 % 2 != 0) throw IntegrityError("c_system_targets", "odd number of order-3 elements");
  const std::int64_t bb = p.lambda * n2 + p.mu * (involutions - n2) - n2 * (n2 - 1);
  if (bb < 0 || bb % 2 != 0) throw IntegrityError("c_system_targets", "sum B(B-1) = " + std::to_string(bb) + " is negative or odd");
  if (sum_b_b_minus_1) *sum_b_b_minus_1 = bb;
  const std::int64_t sum = (p.k - n2) / 2;
  return {static_cast<int>(order3 / 2), sum, bb / 2 + sum};
}

inline CSystem c_system_targets(const PdsParams& p, std::int64_t n2) { return c_system_targets(p, n2, z2_cubed_z3_cubed()); }

/// All m in [0, min(k, h - 1)] with k - m even solving
///   m(m-1) + (k-m)(k-m-2)/2 = lambda m + mu (h - 1 - m),
/// evaluated doubled so every term is an integer.
inline std::vector<std::int64_t> line_content_options(const PdsParams& p, std::int64_t h) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 0; m <= std::min(p.k, h - 1); ++m) {
    if ((p.k - m) % 2 != 0) continue;
    const std::int64_t lhs = 2 * m * (m - 1) + (p.k - m) * (p.k - m - 2);
    const std::int64_t rhs = 2 * p.lambda * m + 2 * p.mu * (h - 1 - m);
    if (lhs == rhs) out.push_back(m);
  }
  return out;
}

inline std::set<std::int64_t> allowed_line_weights(const std::vector<std::int64_t>& m_options, std::int64_t n2) {
  std::set<std::int64_t> out;
  for (std::int64_t m : m_options) {
    if (m < n2 || (m - n2) % 2 != 0) {
      throw IntegrityError("allowed_line_weights", "m = " + std::to_string(m) + " incompatible with n2 = " + std::to_string(n2));
    }
    out.insert((m - n2) / 2);
  }
  return out;
}

struct CertifyOptions {
  int jobs = 1;
  bool prune_automorphisms = false;
};

namespace detail {

inline Json trace_json(const MaIntersectionTrace& t) {
  return {{"n", t.n},
          {"sqrt_delta", t.sqrt_delta},
          {"pi", t.pi},
          {"theta", t.theta},
          {"beta1", t.beta1},
          {"delta1", t.delta1},
          {"discriminant", t.discriminant},
          {"discriminant_is_square", t.discriminant_is_square},
          {"branch_numerators", t.branch_numerators},
          {"candidate_sizes", t.candidate_sizes}};
}

inline Json set_json(const std::set<std::int64_t>& s) { return Json(std::vector<std::int64_t>(s.begin(), s.end())); }

// Structural facts the counting argument relies on, checked on the group.
inline Json fibre_structure(const GroupSpec& group) {
  const auto order3 = elements_of_order(group, 3);
  std::map<GroupElement, std::int64_t> fibre;
  bool fifth_power_pairs = true;
  for (const auto& x : group.elements()) {
    const auto o = group.order_of(x);
    if (o % 3 != 0) continue;
    const auto y = group.power(x, 4);
    if (group.order_of(y) != 3) throw IntegrityError("structure", "x^4 has order " + std::to_string(group.order_of(y)) + " for " + x.to_string());
    ++fibre[y];
    // x^5 lies in the fibre over y^2 and is in the multiplier orbit of x.
    const auto x5 = group.power(x, 5);
    if (group.power(x5, 4) != group.power(y, 2)) fifth_power_pairs = false;
  }
  std::set<std::int64_t> fibre_sizes;
  for (const auto& g : order3) fibre_sizes.insert(fibre[g]);
  std::map<std::int64_t, std::int64_t> orbit_sizes;
  for (const auto& orbit : lmt_orbits(group)) ++orbit_sizes[static_cast<std::int64_t>(orbit.size())];
  Json hist = Json::object();
  for (const auto& [size, count] : orbit_sizes) hist[std::to_string(size)] = count;
  const Subgroup n = sylow_subgroup(group, 2);
  return {{"sylow2_order", n.order()},
          {"involutions", static_cast<std::int64_t>(elements_of_order(group, 2).size())},
          {"order3_elements", static_cast<std::int64_t>(order3.size())},
          {"fourth_power_fibre_sizes", set_json(fibre_sizes)},
          {"fifth_power_pairs_fibres", fifth_power_pairs},
          {"c_length", static_cast<std::int64_t>(order3.size() / 2)},
          {"multiplier_orbit_sizes", hist}};
}

inline bool pipeline_shape_ok(const GroupSpec& g) {
  if (g.sylow_factors(2).empty()) return false;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const auto p = g.factor_primes()[i];
    if ((p != 2 && p != 3) || g.factors()[i] != p) return false;
  }
  return g.sylow_factors(3).size() == 3;
}

}  // namespace detail

/// Runs every stage and assembles the certificate. Parameters outside the
/// pipeline's hypotheses yield INCONCLUSIVE with the failing stage marked
/// "inapplicable"; internal inconsistencies throw IntegrityError.
inline Certificate certify(const PdsParams& p, const CertifyOptions& options = {}) {
  Certificate cert;
  cert.params = p;

  auto inconclusive = [&](Stage s, const std::string& why) {
    s.verdict = "inapplicable";
    s.outputs["reason"] = why;
    cert.stages.push_back(std::move(s));
    cert.overall = Verdict::kInconclusive;
    return cert;
  };

  // Parameters.
  {
    Stage s{"parameters", {{"v", p.v}, {"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}}};
    const auto root = p.sqrt_delta();
    s.outputs = {{"beta", p.beta()}, {"delta", p.delta()}, {"delta_is_square", root.has_value()},
                 {"sqrt_delta", root ? Json(*root) : Json(nullptr)}};
    if (!root) return inconclusive(std::move(s), "Delta is not a perfect square; multiplier orbits unavailable");
    s.verdict = "pass";
    cert.stages.push_back(std::move(s));
  }

  // Group identification.
  GroupSpec group;
  {
    Stage s{"group_identification", {{"v", p.v}}};
    const auto id = identify_groups(p.v);
    Json groups = Json::array();
    for (const auto& r : id.reports) {
      Json reasons = Json::array();
      for (const auto& pv : r.per_prime) {
        reasons.push_back({{"prime", pv.prime}, {"sylow_factors", pv.sylow_factors}, {"excluded", pv.excluded}, {"reason", pv.reason}});
      }
      groups.push_back({{"group", r.group.notation()}, {"excluded", r.excluded()}, {"primes", reasons}});
    }
    Json survivors = Json::array();
    for (const auto& g : id.survivors) survivors.push_back(g.notation());
    s.outputs = {{"groups", groups}, {"survivors", survivors}};
    if (id.survivors.size() != 1) return inconclusive(std::move(s), std::to_string(id.survivors.size()) + " groups survive");
    s.verdict = "pass";
    group = id.survivors.front();
    cert.group = group;
    cert.stages.push_back(std::move(s));
  }

  // Group shape and fourth-power fibres.
  {
    Stage s{"structure", {{"group", group.notation()}}};
    if (!detail::pipeline_shape_ok(group)) return inconclusive(std::move(s), "pipeline needs Z2^a x Z3^3 with a >= 1");
    s.outputs = detail::fibre_structure(group);
    if (!s.outputs["fifth_power_pairs_fibres"].get<bool>() || s.outputs["fourth_power_fibre_sizes"].size() != 1) {
      throw IntegrityError("structure", "fourth-power fibres are not uniform or not paired");
    }
    s.verdict = "pass";
    cert.stages.push_back(std::move(s));
  }

  // |D n N|.
  const Subgroup n = sylow_subgroup(group, 2);
  std::vector<std::int64_t> n2_options;
  {
    Stage s{"sylow2_intersection", {{"n", n.order()}, {"beta", p.beta()}, {"delta", p.delta()}}};
    try {
      const auto t = ma_subgroup_intersection(p, n.order());
      s.outputs = detail::trace_json(t);
      n2_options = t.candidate_sizes;
    } catch (const InapplicableError& e) {
      return inconclusive(std::move(s), e.what());
    }
    s.verdict = "pass";
    cert.stages.push_back(std::move(s));
  }

  // The plane.
  const SubgroupPlane plane = build_plane(group);
  {
    Stage s{"plane_construction", {{"group", group.notation()}, {"base_order", plane.base.order()}}};
    const auto violations = plane.incidence.plane_violations(13, 4);
    const bool iso = isomorphic(plane.incidence, projective_plane_pg2_3());
    if (!iso) throw IntegrityError("plane_construction", "subgroup plane is not isomorphic to PG(2,3)");
    Json blocks = Json::array();
    for (const auto& b : plane.incidence.blocks()) blocks.push_back(b);
    s.outputs = {{"points", plane.incidence.point_count()},
                 {"blocks", plane.incidence.block_count()},
                 {"point_subgroup_order", plane.points.front().order()},
                 {"block_subgroup_order", plane.blocks.front().order()},
                 {"design_axioms_hold", violations.empty()},
                 {"isomorphic_to_pg2_3", iso},
                 {"incidence", blocks}};
    s.verdict = "pass";
    cert.stages.push_back(std::move(s));
  }

  // m = |(L x N) n D|.
  const std::int64_t h = plane.blocks.front().order();
  const auto m_options = line_content_options(p, h);
  {
    Stage s{"line_content", {{"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}, {"block_subgroup_order", h}, {"differences_in_block", h - 1}}};
    s.outputs = {{"m_options", m_options}};
    s.verdict = "pass";
    cert.stages.push_back(std::move(s));
  }

  // Branches.
  for (std::int64_t n2 : n2_options) {
    CaseBranch br;
    br.n2 = n2;
    br.system = c_system_targets(p, n2, group, &br.sum_b_b_minus_1);
    br.m_options = m_options;
    br.allowed_weights = allowed_line_weights(m_options, n2);
    cert.branches.push_back(std::move(br));
  }

  struct Job {
    std::size_t branch;
    CTuple multiset;
  };
  std::vector<Job> jobs;
  std::vector<std::vector<CTuple>> solutions(cert.branches.size());
  for (std::size_t b = 0; b < cert.branches.size(); ++b) {
    solutions[b] = enumerate_solutions(cert.branches[b].system);
    for (const auto& t : solutions[b]) jobs.push_back({b, t});
  }
  const WeightSearchOptions wopts{options.prune_automorphisms};
  std::vector<std::size_t> found(jobs.size(), 0);
  auto run_job = [&](std::size_t i) {
    found[i] = weight_assignment_search(plane.incidence, jobs[i].multiset, cert.branches[jobs[i].branch].allowed_weights, wopts).size();
  };
  if (options.jobs <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::future<void>> workers;
    for (int t = 0; t < options.jobs; ++t) {
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = cursor.fetch_add(1)) < jobs.size();) run_job(i);
      }));
    }
    for (auto& w : workers) w.get();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    CaseBranch& br = cert.branches[jobs[i].branch];
    MultisetOutcome o;
    o.multiset = jobs[i].multiset;
    o.has_odd_entry = std::any_of(o.multiset.begin(), o.multiset.end(), [](std::int64_t c) { return c % 2 != 0; });
    o.parity_identity_holds = parity_identity_check(WeightAssignment::from_points(plane.incidence, o.multiset), plane.incidence);
    const bool allowed_even = std::all_of(br.allowed_weights.begin(), br.allowed_weights.end(), [](std::int64_t w) { return w % 2 == 0; });
    o.parity_excluded = o.has_odd_entry && allowed_even && br.system.sum % 2 == 0 && o.parity_identity_holds;
    o.assignments_found = found[i];
    if (o.parity_excluded && o.assignments_found != 0) {
      throw IntegrityError("weight_search[n2=" + std::to_string(br.n2) + "]", "parity-excluded multiset " + format_tuple(o.multiset) + " has a placement");
    }
    if (!o.parity_identity_holds) throw IntegrityError("weight_search", "parity identity fails on the plane");
    o.excluded_by = o.closed() ? (o.parity_excluded ? "parity" : "search") : "";
    br.outcomes.push_back(std::move(o));
  }

  for (std::size_t b = 0; b < cert.branches.size(); ++b) {
    const CaseBranch& br = cert.branches[b];
    const std::string tag = "[n2=" + std::to_string(br.n2) + "]";
    cert.stages.push_back({"c_system" + tag,
                           {{"n2", br.n2}, {"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}},
                           {{"sum_b", p.k - br.n2},
                            {"sum_b_b_minus_1", br.sum_b_b_minus_1},
                            {"length", br.system.length},
                            {"sum", br.system.sum},
                            {"sum_of_squares", br.system.sum_of_squares}},
                           "pass"});
    Json sols = Json::array();
    for (const auto& t : solutions[b]) sols.push_back(t);
    cert.stages.push_back({"diophantine" + tag,
                           {{"length", br.system.length}, {"sum", br.system.sum}, {"sum_of_squares", br.system.sum_of_squares}},
                           {{"count", solutions[b].size()}, {"solutions", sols}},
                           "pass"});
    cert.stages.push_back({"line_weights" + tag, {{"m_options", br.m_options}, {"n2", br.n2}}, {{"allowed", detail::set_json(br.allowed_weights)}}, "pass"});
    Json outs = Json::array();
    for (const auto& o : br.outcomes) {
      outs.push_back({{"multiset", o.multiset},
                      {"has_odd_entry", o.has_odd_entry},
                      {"parity_identity_holds", o.parity_identity_holds},
                      {"parity_excluded", o.parity_excluded},
                      {"assignments_found", o.assignments_found},
                      {"excluded_by", o.excluded_by.empty() ? Json(nullptr) : Json(o.excluded_by)}});
    }
    cert.stages.push_back({"weight_search" + tag,
                           {{"allowed", detail::set_json(br.allowed_weights)}, {"prune_automorphisms", options.prune_automorphisms}},
                           {{"multisets", outs}},
                           br.closed() ? "closed" : "open"});
  }

  const bool all_closed = std::all_of(cert.branches.begin(), cert.branches.end(), [](const CaseBranch& b) { return b.closed(); });
  cert.overall = all_closed ? Verdict::kNonexistent : Verdict::kInconclusive;
  cert.stages.push_back({"conclusion", {{"branches", cert.branches.size()}}, {{"all_branches_closed", all_closed}}, to_string(cert.overall)});
  return cert;
}

}  // namespace pdscert

#endif  // PDSCERT_CERTIFICATE_HPP
