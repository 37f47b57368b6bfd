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
//! Incidence structures and weightings of their points.
//!
//! The 13-point plane is obtained from the subgroup lattice of a group with
//! elementary Abelian Sylow-3 part of rank 3: points are P x N for the
//! order-3 subgroups P, blocks are L x N for the order-9 subgroups L, and a
//! point lies on a block when the subgroup is contained in it. N is the
//! product of the other Sylow parts.

#ifndef PDSCERT_DESIGN_HPP
#define PDSCERT_DESIGN_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdscert/errors.hpp"
#include "pdscert/group.hpp"
#include "pdscert/pds.hpp"

namespace pdscert {

class IncidenceStructure {
 public:
  IncidenceStructure() = default;

  /// Blocks given as lists of point indices in [0, point_count).
  IncidenceStructure(int point_count, std::vector<std::vector<int>> blocks) : point_count_(point_count), blocks_(std::move(blocks)) {
    if (point_count < 0) throw PreconditionError("negative point count");
    point_blocks_.assign(static_cast<std::size_t>(point_count), {});
    incidence_.assign(static_cast<std::size_t>(point_count) * blocks_.size(), 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      auto& pts = blocks_[b];
      std::sort(pts.begin(), pts.end());
      if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) throw PreconditionError("repeated point in block " + std::to_string(b));
      for (int p : pts) {
        if (p < 0 || p >= point_count) throw PreconditionError("point index " + std::to_string(p) + " out of range");
        point_blocks_[static_cast<std::size_t>(p)].push_back(static_cast<int>(b));
        incidence_[static_cast<std::size_t>(p) * blocks_.size() + b] = 1;
      }
    }
  }

  int point_count() const noexcept { return point_count_; }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  const std::vector<int>& points_on(int block) const { return blocks_.at(static_cast<std::size_t>(block)); }
  const std::vector<int>& blocks_through(int point) const { return point_blocks_.at(static_cast<std::size_t>(point)); }
  bool incident(int point, int block) const {
    return incidence_[static_cast<std::size_t>(point) * blocks_.size() + static_cast<std::size_t>(block)] != 0;
  }

  /// Violations of the 2-(v, block_size, 1) axioms together with the
  /// replication number r = (v - 1) / (block_size - 1) and b = v; empty
  /// when the structure is a projective plane of that shape.
  std::vector<std::string> plane_violations(int v, int block_size) const {
    std::vector<std::string> out;
    const int r = (v - 1) / (block_size - 1);
    if (point_count_ != v) out.push_back("point count " + std::to_string(point_count_) + " != " + std::to_string(v));
    if (block_count() != v) out.push_back("block count " + std::to_string(block_count()) + " != " + std::to_string(v));
    for (int b = 0; b < block_count(); ++b) {
      if (static_cast<int>(points_on(b).size()) != block_size) out.push_back("block " + std::to_string(b) + " has " + std::to_string(points_on(b).size()) + " points");
    }
    for (int p = 0; p < point_count_; ++p) {
      if (static_cast<int>(blocks_through(p).size()) != r) out.push_back("point " + std::to_string(p) + " lies on " + std::to_string(blocks_through(p).size()) + " blocks");
    }
    for (int p = 0; p < point_count_; ++p) {
      for (int q = p + 1; q < point_count_; ++q) {
        int common = 0;
        for (int b : blocks_through(p)) common += incident(q, b) ? 1 : 0;
        if (common != 1) out.push_back("points " + std::to_string(p) + "," + std::to_string(q) + " share " + std::to_string(common) + " blocks");
      }
    }
    return out;
  }

  /// One block per line, its point indices ascending and space-separated.
  std::string export_blocks() const {
    std::string out;
    for (const auto& pts : blocks_) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(pts[i]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  int point_count_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<std::vector<int>> point_blocks_;
  std::vector<char> incidence_;
};

/// The plane built from a group, with the subgroups behind each point/block.
struct SubgroupPlane {
  IncidenceStructure incidence;
  Subgroup base;  // N
  std::vector<Subgroup> points;  // P_i x N
  std::vector<Subgroup> blocks;  // L_j x N
};

inline SubgroupPlane build_plane(const GroupSpec& group) {
  if (group.order() % 3 != 0 || elementary_rank(group, 3) != 3) {
    throw StructuralError("plane construction needs an elementary Abelian Sylow-3 part of rank 3, got " + group.notation());
  }
  Subgroup base = hall_complement(group, 3);
  std::vector<Subgroup> points;
  std::vector<Subgroup> blocks;
  for (const auto& p : elementary_subgroups(group, 3, 1)) points.push_back(subgroup_product(p, base));
  for (const auto& l : elementary_subgroups(group, 3, 2)) blocks.push_back(subgroup_product(l, base));
  std::vector<std::vector<int>> block_points(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (points[p].is_subset_of(blocks[b])) block_points[b].push_back(static_cast<int>(p));
    }
  }
  IncidenceStructure incidence(static_cast<int>(points.size()), std::move(block_points));
  const auto violations = incidence.plane_violations(13, 4);
  if (!violations.empty()) throw IntegrityError("build_plane", "subgroup lattice is not a 2-(13,4,1) design: " + violations.front());
  return {std::move(incidence), std::move(base), std::move(points), std::move(blocks)};
}

/// PG(2,3) from coordinates: points and lines are the normalised nonzero
/// vectors of GF(3)^3 (first nonzero entry 1), and x lies on a when a.x = 0.
inline IncidenceStructure projective_plane_pg2_3() {
  std::vector<std::array<int, 3>> vecs;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        const std::array<int, 3> x{a, b, c};
        const auto lead = std::find_if(x.begin(), x.end(), [](int t) { return t != 0; });
        if (lead != x.end() && *lead == 1) vecs.push_back(x);
      }
    }
  }
  std::vector<std::vector<int>> blocks;
  for (const auto& a : vecs) {
    std::vector<int> pts;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      const auto& x = vecs[i];
      if ((a[0] * x[0] + a[1] * x[1] + a[2] * x[2]) % 3 == 0) pts.push_back(static_cast<int>(i));
    }
    blocks.push_back(std::move(pts));
  }
  return {static_cast<int>(vecs.size()), std::move(blocks)};
}

/// Canonical form of the bipartite point/block incidence graph, computed by
/// individualisation-refinement: the lexicographically greatest incidence
/// matrix over all leaves of the search tree.
struct CanonicalForm {
  int point_count = 0;
  int block_count = 0;
  std::vector<char> matrix;  // point-major, canonical point and block order
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

class IncidenceCanonizer {
 public:
  IncidenceCanonizer(const IncidenceStructure& s, const std::vector<int>& point_colors)
      : points_(s.point_count()), blocks_(s.block_count()), adj_(static_cast<std::size_t>(points_ + blocks_)) {
    for (int b = 0; b < blocks_; ++b) {
      for (int p : s.points_on(b)) {
        adj_[static_cast<std::size_t>(p)].push_back(points_ + b);
        adj_[static_cast<std::size_t>(points_ + b)].push_back(p);
      }
    }
    // Points before blocks; user colours split the points.
    std::vector<std::int64_t> keys(adj_.size());
    for (int v = 0; v < points_; ++v) keys[static_cast<std::size_t>(v)] = point_colors.empty() ? 0 : point_colors[static_cast<std::size_t>(v)];
    std::int64_t top = 0;
    for (int v = 0; v < points_; ++v) top = std::max(top, keys[static_cast<std::size_t>(v)]);
    for (int v = points_; v < points_ + blocks_; ++v) keys[static_cast<std::size_t>(v)] = top + 1;
    initial_ = rank(keys);
  }

  CanonicalForm run() {
    best_.clear();
    best_labels_.clear();
    automorphisms_.clear();
    std::vector<int> path;
    search(initial_, path);
    return {points_, blocks_, best_};
  }

 private:
  template <typename Key>
  static std::vector<int> rank(const std::vector<Key>& keys) {
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    }
    return out;
  }

  static int cell_count(const std::vector<int>& colors) { return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1; }

  std::vector<int> refine(std::vector<int> colors) const {
    int cells = cell_count(colors);
    while (true) {
      std::vector<std::vector<int>> sig(colors.size());
      for (std::size_t v = 0; v < colors.size(); ++v) {
        sig[v].push_back(colors[v]);
        std::vector<int> nb;
        for (int u : adj_[v]) nb.push_back(colors[static_cast<std::size_t>(u)]);
        std::sort(nb.begin(), nb.end());
        sig[v].insert(sig[v].end(), nb.begin(), nb.end());
      }
      auto next = rank(sig);
      const int next_cells = cell_count(next);
      colors = std::move(next);
      if (next_cells == cells) return colors;
      cells = next_cells;
    }
  }

  // Vertices in the same orbit as `v` under the stored automorphisms that
  // fix every vertex of `path`.
  std::vector<int> orbit_roots(const std::vector<int>& path) const {
    std::vector<int> parent(adj_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (const auto& a : automorphisms_) {
      if (!std::all_of(path.begin(), path.end(), [&](int x) { return a[static_cast<std::size_t>(x)] == x; })) continue;
      for (std::size_t v = 0; v < a.size(); ++v) parent[static_cast<std::size_t>(find(static_cast<int>(v)))] = find(a[v]);
    }
    std::vector<int> roots(adj_.size());
    for (std::size_t v = 0; v < roots.size(); ++v) roots[v] = find(static_cast<int>(v));
    return roots;
  }

  void search(const std::vector<int>& colors_in, std::vector<int>& path) {
    const std::vector<int> colors = refine(colors_in);
    const int n = static_cast<int>(colors.size());
    const int cells = cell_count(colors);
    if (cells == n) {
      std::vector<char> m(static_cast<std::size_t>(points_) * static_cast<std::size_t>(blocks_), 0);
      for (int p = 0; p < points_; ++p) {
        for (int b : adj_[static_cast<std::size_t>(p)]) {
          const int row = colors[static_cast<std::size_t>(p)];
          const int col = colors[static_cast<std::size_t>(b)] - points_;
          m[static_cast<std::size_t>(row) * static_cast<std::size_t>(blocks_) + static_cast<std::size_t>(col)] = 1;
        }
      }
      if (best_.empty() || std::lexicographical_compare(best_.begin(), best_.end(), m.begin(), m.end())) {
        best_ = std::move(m);
        best_labels_ = colors;
      } else if (m == best_) {
        // Same matrix: vertex u here plays the role of the vertex with the
        // same label in the best leaf.
        std::vector<int> by_label(colors.size());
        for (std::size_t u = 0; u < colors.size(); ++u) by_label[static_cast<std::size_t>(best_labels_[u])] = static_cast<int>(u);
        std::vector<int> a(colors.size());
        for (std::size_t u = 0; u < colors.size(); ++u) a[u] = by_label[static_cast<std::size_t>(colors[u])];
        automorphisms_.push_back(std::move(a));
      }
      return;
    }
    std::vector<int> size(static_cast<std::size_t>(cells), 0);
    for (int c : colors) ++size[static_cast<std::size_t>(c)];
    int target = 0;
    while (size[static_cast<std::size_t>(target)] == 1) ++target;
    std::vector<int> explored;
    for (int v = 0; v < n; ++v) {
      if (colors[static_cast<std::size_t>(v)] != target) continue;
      if (!explored.empty()) {
        const auto roots = orbit_roots(path);
        if (std::any_of(explored.begin(), explored.end(), [&](int w) { return roots[static_cast<std::size_t>(w)] == roots[static_cast<std::size_t>(v)]; })) continue;
      }
      explored.push_back(v);
      std::vector<std::int64_t> keys(colors.size());
      for (int u = 0; u < n; ++u) keys[static_cast<std::size_t>(u)] = 2 * static_cast<std::int64_t>(colors[static_cast<std::size_t>(u)]) + (u == v ? 0 : 1);
      path.push_back(v);
      search(rank(keys), path);
      path.pop_back();
    }
  }

  int points_;
  int blocks_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> initial_;
  std::vector<char> best_;
  std::vector<int> best_labels_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace detail

/// `point_colors`, when given, must be invariant data attached to points;
/// isomorphisms are then required to preserve it.
inline CanonicalForm canonical_form(const IncidenceStructure& s, const std::vector<int>& point_colors = {}) {
  if (!point_colors.empty() && static_cast<int>(point_colors.size()) != s.point_count()) {
    throw PreconditionError("point colour vector has the wrong length");
  }
  return detail::IncidenceCanonizer(s, point_colors).run();
}

inline bool isomorphic(const IncidenceStructure& a, const IncidenceStructure& b) { return canonical_form(a) == canonical_form(b); }

/// Every point can be mapped to point 0 by an automorphism.
inline bool is_point_transitive(const IncidenceStructure& s) {
  if (s.point_count() == 0) return true;
  std::vector<int> colors(static_cast<std::size_t>(s.point_count()), 1);
  colors[0] = 0;
  const CanonicalForm reference = canonical_form(s, colors);
  for (int p = 1; p < s.point_count(); ++p) {
    std::fill(colors.begin(), colors.end(), 1);
    colors[static_cast<std::size_t>(p)] = 0;
    if (!(canonical_form(s, colors) == reference)) return false;
  }
  return true;
}

/// Point weights and the induced block weights (sum over incident points).
struct WeightAssignment {
  std::vector<std::int64_t> point_weights;
  std::vector<std::int64_t> block_weights;

  static WeightAssignment from_points(const IncidenceStructure& s, std::vector<std::int64_t> weights) {
    if (static_cast<int>(weights.size()) != s.point_count()) throw PreconditionError("weight vector length differs from point count");
    WeightAssignment a;
    a.point_weights = std::move(weights);
    a.block_weights.assign(static_cast<std::size_t>(s.block_count()), 0);
    for (int b = 0; b < s.block_count(); ++b) {
      for (int p : s.points_on(b)) a.block_weights[static_cast<std::size_t>(b)] += a.point_weights[static_cast<std::size_t>(p)];
    }
    return a;
  }

  std::int64_t total() const {
    std::int64_t t = 0;
    for (auto w : point_weights) t += w;
    return t;
  }
};

/// weight(P_i x N) = |((P_i x N) \ N) n D| / 2.
inline WeightAssignment point_weights(const CandidateSet& d, const SubgroupPlane& plane) {
  std::vector<std::int64_t> weights;
  for (std::size_t i = 0; i < plane.points.size(); ++i) {
    std::int64_t c = 0;
    for (const auto& x : d.elements()) {
      if (plane.points[i].contains(x) && !plane.base.contains(x)) ++c;
    }
    if (c % 2 != 0) {
      throw IntegrityError("point_weights", "point " + std::to_string(i) + " meets D in " + std::to_string(c) +
                                                " elements outside N; D is not closed under the multiplier orbits");
    }
    weights.push_back(c / 2);
  }
  return WeightAssignment::from_points(plane.incidence, std::move(weights));
}

/// sum_j w_j == w_i + sum_{B through i} (w(B) - w_i) for every point i.
inline bool parity_identity_check(const WeightAssignment& a, const IncidenceStructure& s) {
  const std::int64_t total = a.total();
  for (int i = 0; i < s.point_count(); ++i) {
    const std::int64_t wi = a.point_weights[static_cast<std::size_t>(i)];
    std::int64_t rhs = wi;
    for (int b : s.blocks_through(i)) rhs += a.block_weights[static_cast<std::size_t>(b)] - wi;
    if (rhs != total) return false;
  }
  return true;
}

struct WeightSearchOptions {
  /// Require point 0 to carry a maximal value. Sound only for
  /// point-transitive structures, which is checked; the result then holds
  /// one or more representatives per automorphism orbit instead of every
  /// assignment.
  bool prune_automorphisms = false;
};

/// Every placement of the multiset onto the points (distinct weight vectors
/// only) with all block weights in `allowed`. Lexicographically descending.
inline std::vector<std::vector<std::int64_t>> weight_assignment_search(const IncidenceStructure& s, std::vector<std::int64_t> multiset,
                                                                      const std::set<std::int64_t>& allowed,
                                                                      const WeightSearchOptions& options = {}) {
  if (static_cast<int>(multiset.size()) != s.point_count()) {
    throw PreconditionError("multiset has " + std::to_string(multiset.size()) + " entries, structure has " + std::to_string(s.point_count()) + " points");
  }
  for (auto x : multiset) {
    if (x < 0) throw PreconditionError("weights must be nonnegative");
  }
  std::vector<std::vector<std::int64_t>> out;
  if (allowed.empty() && s.block_count() > 0) return out;
  if (options.prune_automorphisms && !is_point_transitive(s)) {
    throw PreconditionError("automorphism pruning needs a point-transitive structure");
  }

  std::map<std::int64_t, int, std::greater<>> remaining;
  for (auto x : multiset) ++remaining[x];
  const std::int64_t max_allowed = allowed.empty() ? 0 : *allowed.rbegin();

  const int n = s.point_count();
  std::vector<std::int64_t> assignment(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> partial(static_cast<std::size_t>(s.block_count()), 0);
  std::vector<int> filled(static_cast<std::size_t>(s.block_count()), 0);

  auto rec = [&](auto&& self, int point) -> void {
    if (point == n) {
      out.push_back(assignment);
      return;
    }
    for (auto& [value, count] : remaining) {
      if (count == 0) continue;
      if (point == 0 && options.prune_automorphisms && value != remaining.begin()->first) continue;
      bool ok = true;
      for (int b : s.blocks_through(point)) {
        const auto bi = static_cast<std::size_t>(b);
        partial[bi] += value;
        ++filled[bi];
        if (partial[bi] > max_allowed) ok = false;
        if (filled[bi] == static_cast<int>(s.points_on(b).size()) && !allowed.contains(partial[bi])) ok = false;
      }
      if (ok) {
        --count;
        assignment[static_cast<std::size_t>(point)] = value;
        self(self, point + 1);
        ++count;
      }
      for (int b : s.blocks_through(point)) {
        const auto bi = static_cast<std::size_t>(b);
        partial[bi] -= value;
        --filled[bi];
      }
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace pdscert

#endif  // PDSCERT_DESIGN_HPP
