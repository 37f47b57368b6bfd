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


#include "pdscert/design.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pdscert/diophantine.hpp"

namespace pdscert {
namespace {

const GroupSpec& G216() {
  static const GroupSpec g = GroupSpec::parse("Z2^3xZ3^3");
  return g;
}

const SubgroupPlane& Plane() {
  static const SubgroupPlane p = build_plane(G216());
  return p;
}

IncidenceStructure Relabel(const IncidenceStructure& s, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(s.point_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> blocks;
  for (const auto& b : s.blocks()) {
    std::vector<int> mapped;
    for (int p : b) mapped.push_back(perm[static_cast<std::size_t>(p)]);
    blocks.push_back(mapped);
  }
  std::shuffle(blocks.begin(), blocks.end(), rng);
  return {s.point_count(), blocks};
}

const std::vector<CTuple>& CertificateMultisets() {
  static const std::vector<CTuple> m = {
      {5, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, {5, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0}, {4, 4, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0},
      {4, 3, 3, 2, 2, 1, 1, 1, 1, 1, 1, 0, 0}, {4, 3, 2, 2, 2, 2, 2, 1, 1, 1, 0, 0, 0}, {4, 2, 2, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0},
      {3, 3, 3, 3, 2, 2, 1, 1, 1, 1, 0, 0, 0}, {3, 3, 3, 2, 2, 2, 2, 2, 1, 0, 0, 0, 0}, {3, 3, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {3, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 0}, {2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 0, 0},
  };
  return m;
}

TEST(IncidenceStructureTest, Validation) {
  EXPECT_THROW(IncidenceStructure(3, {{0, 3}}), PreconditionError);
  EXPECT_THROW(IncidenceStructure(3, {{0, 0}}), PreconditionError);
  const IncidenceStructure s(3, {{2, 0}, {1}});
  EXPECT_EQ(s.points_on(0), (std::vector<int>{0, 2}));
  EXPECT_EQ(s.blocks_through(0), (std::vector<int>{0}));
  EXPECT_TRUE(s.incident(2, 0));
  EXPECT_FALSE(s.incident(1, 0));
  EXPECT_EQ(s.export_blocks(), "0 2\n1\n");
}

TEST(PlaneTest, SubgroupPlaneSatisfiesAxioms) {
  const auto& plane = Plane();
  EXPECT_TRUE(plane.incidence.plane_violations(13, 4).empty());
  EXPECT_EQ(plane.base.order(), 8);
  ASSERT_EQ(plane.points.size(), 13u);
  ASSERT_EQ(plane.blocks.size(), 13u);
  for (const auto& p : plane.points) EXPECT_EQ(p.order(), 24);
  for (const auto& b : plane.blocks) EXPECT_EQ(b.order(), 72);
  for (int b = 0; b < 13; ++b) {
    for (int p = 0; p < 13; ++p) {
      EXPECT_EQ(plane.incidence.incident(p, b), plane.points[static_cast<std::size_t>(p)].is_subset_of(plane.blocks[static_cast<std::size_t>(b)]));
    }
  }
  // Two lines meet in exactly one point.
  for (int a = 0; a < 13; ++a) {
    for (int b = a + 1; b < 13; ++b) {
      int common = 0;
      for (int p : plane.incidence.points_on(a)) common += plane.incidence.incident(p, b) ? 1 : 0;
      EXPECT_EQ(common, 1);
    }
  }
}

TEST(PlaneTest, IsomorphicToCoordinatePlane) {
  const auto pg = projective_plane_pg2_3();
  EXPECT_TRUE(pg.plane_violations(13, 4).empty());
  EXPECT_TRUE(isomorphic(Plane().incidence, pg));
  EXPECT_TRUE(is_point_transitive(pg));
}

TEST(PlaneTest, OtherGroupsGiveTheSamePlane) {
  for (const char* name : {"Z3^3", "Z3^3xZ4", "Z2xZ3^3xZ5"}) {
    EXPECT_TRUE(isomorphic(build_plane(GroupSpec::parse(name)).incidence, projective_plane_pg2_3())) << name;
  }
  EXPECT_THROW(build_plane(GroupSpec::parse("Z3^2xZ8")), StructuralError);
  EXPECT_THROW(build_plane(GroupSpec::parse("Z9xZ3^2")), StructuralError);
  EXPECT_THROW(build_plane(GroupSpec::parse("Z8")), StructuralError);
}

TEST(CanonicalFormTest, RelabellingInvariance) {
  std::mt19937 rng(17);
  const auto pg = projective_plane_pg2_3();
  const auto form = canonical_form(pg);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(canonical_form(Relabel(pg, rng)), form);

  const IncidenceStructure path(4, {{0, 1}, {1, 2}, {2, 3}});
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(isomorphic(Relabel(path, rng), path));
}

TEST(CanonicalFormTest, DistinguishesNonIsomorphicStructures) {
  const auto pg = projective_plane_pg2_3();
  auto blocks = pg.blocks();
  // Move one point between two lines: same counts of points and blocks.
  const int moved = blocks[0][0];
  blocks[0].erase(blocks[0].begin());
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (std::find(blocks[i].begin(), blocks[i].end(), moved) == blocks[i].end()) {
      blocks[i].push_back(moved);
      break;
    }
  }
  const IncidenceStructure broken(13, blocks);
  EXPECT_FALSE(broken.plane_violations(13, 4).empty());
  EXPECT_FALSE(isomorphic(broken, pg));

  const IncidenceStructure path(4, {{0, 1}, {1, 2}, {2, 3}});
  const IncidenceStructure star(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_FALSE(isomorphic(path, star));
  EXPECT_FALSE(is_point_transitive(path));
  // Fano plane is a projective plane but of the wrong order.
  const IncidenceStructure fano(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
  EXPECT_TRUE(fano.plane_violations(7, 3).empty());
  EXPECT_FALSE(isomorphic(fano, pg));
}

TEST(CanonicalFormTest, AgreesWithBruteForceOnSmallStructures) {
  std::mt19937 rng(57);
  std::bernoulli_distribution coin(0.4);
  auto random_blocks = [&](int points, int blocks) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks));
    for (auto& b : out) {
      for (int p = 0; p < points; ++p) {
        if (coin(rng)) b.push_back(p);
      }
    }
    return out;
  };
  int iso = 0, non_iso = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int points = 6;
    const IncidenceStructure a(points, random_blocks(points, 4));
    // Half the time compare against a relabelled copy with one block toggled
    // at one point, so both outcomes occur often.
    IncidenceStructure b = Relabel(a, rng);
    if (trial % 2 == 1) {
      auto blocks = b.blocks();
      auto& blk = blocks[static_cast<std::size_t>(trial % 4)];
      const int p = trial % points;
      const auto it = std::find(blk.begin(), blk.end(), p);
      if (it == blk.end()) {
        blk.push_back(p);
      } else {
        blk.erase(it);
      }
      b = IncidenceStructure(points, blocks);
    }
    const bool expected = oracle::brute_isomorphic(points, a.blocks(), b.blocks());
    EXPECT_EQ(isomorphic(a, b), expected);
    (expected ? iso : non_iso) += 1;
  }
  EXPECT_GT(iso, 100);
  EXPECT_GT(non_iso, 50);
}

TEST(PointWeightsTest, Examples) {
  const auto& g = G216();
  const auto& plane = Plane();
  const auto empty = point_weights(CandidateSet(g), plane);
  EXPECT_EQ(empty.point_weights, std::vector<std::int64_t>(13, 0));

  const auto x = g.element({0, 0, 0, 1, 0, 0});
  const auto n = g.element({1, 0, 0, 0, 0, 0});
  // x, x^2 and the order-6 pair x n, x^2 n all sit in <x> x N.
  const CandidateSet d(g, {x, g.power(x, 2), g.compose(x, n), g.power(g.compose(x, n), 5), n});
  const auto w = point_weights(d, plane);
  EXPECT_EQ(w.total(), 2);
  for (std::size_t i = 0; i < 13; ++i) EXPECT_EQ(w.point_weights[i], plane.points[i].contains(x) ? 2 : 0);
  EXPECT_THROW(point_weights(CandidateSet(g, {x}), plane), IntegrityError);
}

TEST(PointWeightsTest, BlockWeightsSumToFourTimesTotal) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> dist(0, 6);
  const auto pg = projective_plane_pg2_3();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> w(13);
    for (auto& x : w) x = dist(rng);
    const auto a = WeightAssignment::from_points(pg, w);
    EXPECT_EQ(std::accumulate(a.block_weights.begin(), a.block_weights.end(), std::int64_t{0}), 4 * a.total());
    EXPECT_TRUE(parity_identity_check(a, pg));
  }
}

TEST(ParityIdentityTest, Examples) {
  const auto pg = projective_plane_pg2_3();
  EXPECT_TRUE(parity_identity_check(WeightAssignment::from_points(pg, std::vector<std::int64_t>(13, 0)), pg));
  EXPECT_TRUE(parity_identity_check(WeightAssignment::from_points(pg, CertificateMultisets()[0]), pg));
  auto tampered = WeightAssignment::from_points(pg, CertificateMultisets()[0]);
  tampered.block_weights[0] += 1;
  EXPECT_FALSE(parity_identity_check(tampered, pg));
}

TEST(WeightSearchTest, CertificateMultisetsMatchNaiveSearch) {
  const auto& s = Plane().incidence;
  for (const auto& allowed : {std::set<std::int64_t>{4, 8}, std::set<std::int64_t>{2, 6}}) {
    for (const auto& m : CertificateMultisets()) {
      std::size_t perms = 0;
      const auto naive = oracle::naive_weight_search(s.blocks(), m, allowed, &perms);
      EXPECT_GT(perms, 0u);
      EXPECT_EQ(weight_assignment_search(s, m, allowed), naive) << format_tuple(m);
      EXPECT_TRUE(naive.empty());
    }
  }
}

TEST(WeightSearchTest, MatchesNaiveSearchOnRandomInputs) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> value(0, 3);
  const auto pg = projective_plane_pg2_3();
  int nonempty = 0;
  for (int trial = 0; trial < 40; ++trial) {
    CTuple m(13);
    for (auto& x : m) x = value(rng) == 0 ? 1 : value(rng) % 2;  // few distinct values keeps the oracle small
    std::set<std::int64_t> allowed;
    for (std::int64_t w = 0; w <= 4; ++w) {
      if (value(rng) != 0) allowed.insert(w);
    }
    const auto expected = oracle::naive_weight_search(pg.blocks(), m, allowed);
    EXPECT_EQ(weight_assignment_search(pg, m, allowed), expected);
    nonempty += expected.empty() ? 0 : 1;
  }
  EXPECT_GT(nonempty, 0);
}

TEST(WeightSearchTest, OddEntryWithEvenBlocksIsImpossible) {
  // With all block weights even, every point weight has the parity of the
  // total; an even total therefore rules out any odd entry.
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> value(0, 4);
  const auto pg = projective_plane_pg2_3();
  for (int trial = 0; trial < 60; ++trial) {
    CTuple m(13);
    for (auto& x : m) x = value(rng);
    if (std::accumulate(m.begin(), m.end(), std::int64_t{0}) % 2 != 0) m[0] += 1;
    if (std::all_of(m.begin(), m.end(), [](std::int64_t x) { return x % 2 == 0; })) {
      m[1] += 1;
      m[2] += 1;
    }
    ASSERT_EQ(std::accumulate(m.begin(), m.end(), std::int64_t{0}) % 2, 0);
    ASSERT_TRUE(std::any_of(m.begin(), m.end(), [](std::int64_t x) { return x % 2 != 0; }));
    std::set<std::int64_t> allowed;
    for (std::int64_t w = 0; w <= 20; w += 2) {
      if (value(rng) < 3) allowed.insert(w);
    }
    EXPECT_TRUE(weight_assignment_search(pg, m, allowed).empty()) << format_tuple(m);
  }
}

TEST(WeightSearchTest, OddTotalEscapesTheParityArgument) {
  // All ones: every block weighs 4.
  const auto pg = projective_plane_pg2_3();
  EXPECT_EQ(weight_assignment_search(pg, CTuple(13, 1), {4}).size(), 1u);
}

TEST(WeightSearchTest, SmallCases) {
  const auto pg = projective_plane_pg2_3();
  EXPECT_EQ(weight_assignment_search(pg, CTuple(13, 0), {0}), (std::vector<CTuple>{CTuple(13, 0)}));
  EXPECT_TRUE(weight_assignment_search(pg, CTuple(13, 0), {}).empty());
  CTuple single(13, 0);
  single[0] = 1;
  // One marked point: 13 placements, blocks weigh 0 or 1.
  EXPECT_EQ(weight_assignment_search(pg, single, {0, 1}).size(), 13u);
  EXPECT_TRUE(weight_assignment_search(pg, single, {1}).empty());
  EXPECT_THROW(weight_assignment_search(pg, CTuple(12, 0), {0}), PreconditionError);
  EXPECT_THROW(weight_assignment_search(pg, CTuple(13, -1), {0}), PreconditionError);
}

TEST(WeightSearchTest, AutomorphismPruningKeepsRepresentatives) {
  const auto pg = projective_plane_pg2_3();
  WeightSearchOptions prune;
  prune.prune_automorphisms = true;
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> value(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    CTuple m(13);
    for (auto& x : m) x = value(rng);
    std::set<std::int64_t> allowed;
    for (std::int64_t w = 0; w <= 8; ++w) {
      if (value(rng) != 0) allowed.insert(w);
    }
    const auto full = weight_assignment_search(pg, m, allowed);
    const auto pruned = weight_assignment_search(pg, m, allowed, prune);
    EXPECT_EQ(full.empty(), pruned.empty());
    const std::int64_t top = *std::max_element(m.begin(), m.end());
    for (const auto& a : pruned) {
      EXPECT_EQ(a[0], top);
      EXPECT_TRUE(std::binary_search(full.begin(), full.end(), a, std::greater<>()));
    }
  }
  const IncidenceStructure path(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_THROW(weight_assignment_search(path, {1, 0, 0, 0}, {0, 1}, prune), PreconditionError);
}

}  // namespace
}  // namespace pdscert
