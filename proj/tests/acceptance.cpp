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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "pdscert/pdscert.hpp"

namespace {

using namespace pdscert;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

double Seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured RunCli(const std::string& args) {
  Captured c;
  const std::string cmd = std::string(PDSCERT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return c;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) c.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

const std::vector<CTuple> kFirstList = {
    {5, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, {5, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0}, {4, 4, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0},
    {4, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1, 0, 0}, {4, 3, 2, 2, 2, 2, 2, 1, 1, 1, 0, 0, 0}, {4, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0},
    {3, 3, 3, 3, 2, 2, 1, 1, 1, 1, 0, 0, 0}, {3, 3, 3, 2, 2, 2, 2, 2, 1, 0, 0, 0, 0},
};
const std::vector<CTuple> kSecondList = {
    {3, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
    {3, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0},
    {2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 0, 0},
};

// Shared body of criteria 1 and 2.
void CheckCertificate(Check& c, const PdsParams& p, const std::vector<std::int64_t>& n2s, const std::vector<std::int64_t>& ms) {
  Certificate cert;
  const double t = Seconds([&] { cert = certify(p); });
  c.note("certify " + p.to_string() + ": " + to_string(cert.overall) + " in " + std::to_string(t) + " s");
  c.expect(t < 10.0, "runtime < 10 s");
  c.expect(cert.overall == Verdict::kNonexistent, "verdict NONEXISTENT");
  const Stage* inter = cert.stage("sylow2_intersection");
  c.expect(inter && inter->outputs["candidate_sizes"] == Json(n2s), "|N n D| options");
  const Stage* line = cert.stage("line_content");
  c.expect(line && line->outputs["m_options"] == Json(ms), "m options");
  c.expect(cert.branches.size() == 2, "two branches");
  if (cert.branches.size() != 2) return;
  const std::array<CSystem, 2> systems{CSystem(13, 20, 48), CSystem(13, 18, 32)};
  const std::array<std::set<std::int64_t>, 2> allowed{std::set<std::int64_t>{4, 8}, std::set<std::int64_t>{2, 6}};
  const std::array<const std::vector<CTuple>*, 2> lists{&kFirstList, &kSecondList};
  const CTuple all_even{4, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0};
  for (std::size_t b = 0; b < 2; ++b) {
    const auto& br = cert.branches[b];
    c.expect(br.n2 == n2s[b], "branch n2");
    c.expect(br.system == systems[b], "Diophantine targets");
    c.expect(br.allowed_weights == allowed[b], "allowed line weights");
    std::vector<CTuple> multisets;
    for (const auto& o : br.outcomes) {
      multisets.push_back(o.multiset);
      c.expect(o.assignments_found == 0, "multiset " + format_tuple(o.multiset) + " closed");
      c.expect(o.excluded_by == (o.multiset == all_even ? "search" : "parity"), "exclusion reason for " + format_tuple(o.multiset));
    }
    c.expect(multisets == *lists[b], "solution multisets match the expected list");
  }
}

Check Criterion1() {
  Check c;
  CheckCertificate(c, {216, 40, 4, 8}, {0, 4}, {8, 16});
  return c;
}

Check Criterion2() {
  Check c;
  CheckCertificate(c, {216, 43, 10, 8}, {3, 7}, {11, 19});
  return c;
}

Check Criterion3() {
  Check c;
  for (const auto& [k, l, m] : std::vector<std::array<std::int64_t, 3>>{{40, 4, 8}, {43, 10, 8}}) {
    const auto expected = (l - m) * (l - m) + 4 * (k - m);
    const auto cert = certify({216, k, l, m});
    const auto delta = cert.stages.front().outputs["delta"].get<std::int64_t>();
    c.expect(delta == expected && delta == 144, "Delta = 144 for k=" + std::to_string(k));
    const auto mutated = certify({216, k + 1, l, m});
    const auto md = mutated.stages.front().outputs["delta"].get<std::int64_t>();
    c.expect(md != delta && md == (l - m) * (l - m) + 4 * (k + 1 - m), "mutated k changes Delta");
    c.note("k=" + std::to_string(k) + ": Delta " + std::to_string(delta) + ", k+1: " + std::to_string(md));
  }
  return c;
}

Check Criterion4() {
  Check c;
  const double t = Seconds([&] {
    const auto plane = build_plane(GroupSpec::parse("Z2^3xZ3^3"));
    c.expect(plane.incidence.plane_violations(13, 4).empty(), "2-(13,4,1) axioms");
    c.expect(isomorphic(plane.incidence, projective_plane_pg2_3()), "isomorphic to PG(2,3)");
  });
  c.note("plane built and compared in " + std::to_string(t) + " s");
  c.expect(t < 1.0, "runtime < 1 s");
  return c;
}

Check Criterion5() {
  Check c;
  std::size_t systems = 0;
  for (int s1 = 0; s1 <= 20; ++s1) {
    for (std::int64_t s2 = 0; s2 <= s1 * s1; ++s2) {
      std::vector<CTuple> naive;
      for (auto& t : oracle::padded_partitions(s1, 13)) {
        std::int64_t sq = 0;
        for (auto x : t) sq += x * x;
        if (sq == s2) naive.push_back(t);
      }
      c.expect(enumerate_solutions({13, s1, s2}) == naive, "S1=" + std::to_string(s1) + " S2=" + std::to_string(s2));
      ++systems;
    }
  }
  c.expect(enumerate_solutions({13, 20, 48}) == kFirstList, "first expected list");
  c.expect(enumerate_solutions({13, 18, 32}) == kSecondList, "second expected list");
  c.note(std::to_string(systems) + " systems compared");
  return c;
}

Check Criterion6() {
  Check c;
  const auto plane = build_plane(GroupSpec::parse("Z2^3xZ3^3"));
  std::size_t max_perms = 0;
  std::vector<CTuple> all = kFirstList;
  all.insert(all.end(), kSecondList.begin(), kSecondList.end());
  for (const auto& allowed : {std::set<std::int64_t>{4, 8}, std::set<std::int64_t>{2, 6}}) {
    for (const auto& m : all) {
      std::size_t perms = 0;
      const auto naive = oracle::naive_weight_search(plane.incidence.blocks(), m, allowed, &perms);
      max_perms = std::max(max_perms, perms);
      const auto fast = weight_assignment_search(plane.incidence, m, allowed);
      c.expect(fast == naive && fast.empty(), "multiset " + format_tuple(m));
    }
  }
  c.note("22 searches equal to naive enumeration; largest has " + std::to_string(max_perms) + " distinct permutations");
  // Parity: odd entry, even total, all-even allowed set.
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> value(0, 5);
  int trials = 0;
  while (trials < 200) {
    CTuple m(13);
    for (auto& x : m) x = value(rng);
    std::int64_t sum = 0;
    bool odd = false;
    for (auto x : m) {
      sum += x;
      odd = odd || x % 2 != 0;
    }
    if (!odd || sum % 2 != 0) continue;
    std::set<std::int64_t> allowed;
    for (std::int64_t w = 0; w <= 20; w += 2) {
      if (value(rng) < 4) allowed.insert(w);
    }
    c.expect(weight_assignment_search(plane.incidence, m, allowed).empty(), "parity " + format_tuple(m));
    ++trials;
  }
  c.note("parity property on 200 random even-total multisets");
  return c;
}

Check Criterion7() {
  Check c;
  const auto found = oracle::all_pds_subsets({3, 3}, 9, 4, 1, 2);
  const auto g = GroupSpec::parse("Z3^2");
  int good = 0;
  for (const auto& vs : found) {
    std::vector<GroupElement> elems;
    for (const auto& v : vs) elems.push_back(g.element({v[0], v[1]}));
    const CandidateSet d(g, elems);
    if (is_regular(d) && !is_trivial(d)) {
      ++good;
      c.expect(verify_pds(d, {9, 4, 1, 2}).passed, "verify_pds on brute-force set");
      c.expect(lmt_closed(d), "lmt_closed on brute-force set");
    }
  }
  c.expect(good >= 1, "at least one regular nontrivial (9,4,1,2) set");
  c.note(std::to_string(found.size()) + " PDS among 70 subsets, " + std::to_string(good) + " regular nontrivial");

  std::mt19937 rng(7);
  const std::vector<std::string> groups = {"Z3^2", "Z2^4", "Z4^2", "Z5^2", "Z2^2xZ3", "Z7", "Z2xZ8"};
  std::bernoulli_distribution coin(0.4);
  int agree = 0, positives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = GroupSpec::parse(groups[static_cast<std::size_t>(trial) % groups.size()]);
    const oracle::Vec mods(h.factors().begin(), h.factors().end());
    std::vector<GroupElement> elems;
    std::vector<oracle::Vec> vecs;
    for (const auto& x : h.elements()) {
      if (x != h.identity() && coin(rng)) elems.push_back(x);
    }
    if (elems.empty()) elems.push_back(h.element_at(1));
    // Every fourth trial uses a known PDS, so both outcomes are exercised.
    if (trial % 4 == 0 && h.notation() == "Z3^2") elems = CandidateSet(g, {g.element({0, 1}), g.element({0, 2}), g.element({1, 0}), g.element({2, 0})}).elements();
    const CandidateSet d(h, elems);
    for (const auto& x : d.elements()) vecs.emplace_back(x.exponents().begin(), x.exponents().end());
    const auto k = static_cast<std::int64_t>(d.size());
    const std::int64_t lambda = std::min<std::int64_t>(k, 1), mu = std::min<std::int64_t>(k, 2);
    const bool fast = verify_pds(d, {h.order(), k, lambda, mu}).passed;
    const bool naive = oracle::is_pds(vecs, mods, static_cast<int>(h.order()), static_cast<int>(k), static_cast<int>(lambda), static_cast<int>(mu));
    c.expect(fast == naive, "agreement on " + h.notation());
    agree += fast == naive ? 1 : 0;
    positives += naive ? 1 : 0;
  }
  c.note(std::to_string(agree) + " random subsets agree with the spectrum oracle (" + std::to_string(positives) + " are PDS)");
  return c;
}

Check Criterion8() {
  Check c;
  const auto groups = abelian_groups_of_order(216);
  const int types = oracle::partition_count(3) * oracle::partition_count(3);
  c.expect(static_cast<int>(groups.size()) == types && types == 9, "9 Abelian groups of order 216");
  int excluded = 0;
  std::string survivor;
  for (const auto& g : groups) {
    if (ma_exclusion(g).excluded()) {
      ++excluded;
    } else {
      survivor = g.notation();
    }
  }
  c.expect(excluded == 8, "8 excluded");
  c.expect(survivor == "Z2^3xZ3^3", "survivor Z2^3xZ3^3");
  c.expect(ma_subgroup_intersection({216, 40, 4, 8}, 8).candidate_sizes == std::vector<std::int64_t>{0, 4}, "{0,4}");
  c.expect(ma_subgroup_intersection({216, 43, 10, 8}, 8).candidate_sizes == std::vector<std::int64_t>{3, 7}, "{3,7}");
  c.note(std::to_string(excluded) + " of " + std::to_string(groups.size()) + " excluded, survivor " + survivor);
  return c;
}

Check Criterion9() {
  Check c;
  const std::string sample = std::string(PDSCERT_SOURCE_DIR) + "/samples/z3sq_paley.json";
  const std::vector<std::string> commands = {
      "verify " + sample + " 9,4,1,2",
      "verify " + sample + " 9,4,2,1",
      "solve-c 20 48 13",
      "solve-c 18 32 13",
      "plane Z2^3xZ3^3",
      "certify 216,40,4,8 --jobs 1",
      "certify 216,40,4,8 --jobs 4",
      "certify 216,43,10,8 --jobs 1",
      "certify 216,43,10,8 --jobs 4",
      "search Z3^2 9,4,1,2 --jobs 1",
      "search Z3^2 9,4,1,2 --jobs 4",
      "search Z2^4 16,6,2,2 --jobs 1",
      "search Z2^4 16,6,2,2 --jobs 4",
  };
  std::map<std::string, std::string> first;
  for (const auto& cmd : commands) {
    const auto a = RunCli(cmd);
    const auto b = RunCli(cmd);
    c.expect(a.code == b.code && a.out == b.out && !a.out.empty(), "repeatable: " + cmd);
    first[cmd] = a.out;
  }
  for (const char* base : {"certify 216,40,4,8", "certify 216,43,10,8", "search Z3^2 9,4,1,2", "search Z2^4 16,6,2,2"}) {
    c.expect(first[std::string(base) + " --jobs 1"] == first[std::string(base) + " --jobs 4"], std::string("jobs 1 vs 4: ") + base);
  }
  c.note(std::to_string(commands.size()) + " commands run twice each");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"1 certify 216,40,4,8", Criterion1},      {"2 certify 216,43,10,8", Criterion2},  {"3 Delta computed", Criterion3},
      {"4 plane validation", Criterion4},         {"5 Diophantine oracle", Criterion5},   {"6 weight-search oracle", Criterion6},
      {"7 PDS verification ground truth", Criterion7}, {"8 Sylow exclusions", Criterion8}, {"9 CLI determinism", Criterion9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << name << "\n";
    for (const auto& n : c.notes) std::cout << "      " << n << "\n";
    failed += c.ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
