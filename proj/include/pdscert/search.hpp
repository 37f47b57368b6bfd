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

#ifndef PDSCERT_SEARCH_HPP
#define PDSCERT_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "pdscert/errors.hpp"
#include "pdscert/group.hpp"
#include "pdscert/pds.hpp"

namespace pdscert {

struct SearchOptions {
  int jobs = 1;
  std::optional<double> timeout_seconds;
  /// Stop after this many sets (0 = no limit). A capped search is reported
  /// as incomplete.
  std::size_t max_results = 0;
};

struct FoundSet {
  CandidateSet set;
  bool trivial = false;
};

struct SearchResult {
  std::vector<FoundSet> sets;
  bool complete = true;
  bool used_multiplier_orbits = false;
  std::uint64_t nodes = 0;
};

namespace detail {

// Backtracking over "units" (multiplier orbits or inverse pairs) in order of
// least element. Each unit is either taken whole or rejected.
class PdsBacktracker {
 public:
  PdsBacktracker(const GroupSpec& group, const PdsParams& params, std::vector<std::vector<std::size_t>> units)
      : params_(params), units_(std::move(units)), v_(static_cast<std::size_t>(group.order())) {
    diff_.resize(v_ * v_);
    const auto elems = group.elements();
    std::vector<std::size_t> inv(v_);
    for (std::size_t i = 0; i < v_; ++i) inv[i] = group.index_of(group.inverse(elems[i]));
    for (std::size_t a = 0; a < v_; ++a) {
      for (std::size_t b = 0; b < v_; ++b) diff_[a * v_ + b] = group.index_of(group.compose(elems[a], elems[inv[b]]));
    }
    unit_of_.assign(v_, units_.size());
    for (std::size_t u = 0; u < units_.size(); ++u) {
      for (std::size_t x : units_[u]) unit_of_[x] = u;
    }
    suffix_size_.assign(units_.size() + 1, 0);
    for (std::size_t u = units_.size(); u-- > 0;) suffix_size_[u] = suffix_size_[u + 1] + units_[u].size();
  }

  std::size_t unit_count() const { return units_.size(); }

  struct State {
    std::vector<std::int64_t> count;
    std::vector<char> in_set;
    std::vector<std::size_t> members;
    std::size_t next_unit = 0;
  };

  State initial_state() const {
    State s;
    s.count.assign(v_, 0);
    s.in_set.assign(v_, 0);
    return s;
  }

  // Whether element x's final count is pinned (its unit has been decided).
  bool decided(const State& s, std::size_t x) const { return unit_of_[x] < s.next_unit; }

  std::int64_t bound(const State& s, std::size_t x) const {
    if (!decided(s, x)) return std::max(params_.lambda, params_.mu);
    return s.in_set[x] ? params_.lambda : params_.mu;
  }

  /// Decides unit s.next_unit; returns false when the branch is dead.
  bool apply(State& s, bool take) const {
    const auto& unit = units_[s.next_unit];
    if (take) {
      for (std::size_t x : unit) {
        for (std::size_t y : s.members) {
          ++s.count[diff_[x * v_ + y]];
          ++s.count[diff_[y * v_ + x]];
        }
        s.members.push_back(x);
        s.in_set[x] = 1;
      }
    }
    ++s.next_unit;
    if (static_cast<std::int64_t>(s.members.size()) > params_.k) return false;
    if (static_cast<std::int64_t>(s.members.size() + suffix_size_[s.next_unit]) < params_.k) return false;
    for (std::size_t x = 1; x < v_; ++x) {
      if (s.count[x] > bound(s, x)) return false;
    }
    return true;
  }

  bool is_solution(const State& s) const {
    if (static_cast<std::int64_t>(s.members.size()) != params_.k) return false;
    for (std::size_t x = 1; x < v_; ++x) {
      if (s.count[x] != (s.in_set[x] ? params_.lambda : params_.mu)) return false;
    }
    return true;
  }

  /// Runs to completion below `s`; `emit` receives member lists. Returns
  /// false when stopped early.
  template <typename Emit, typename Stop>
  bool run(State s, Emit&& emit, Stop&& stop, std::uint64_t& nodes) const {
    ++nodes;
    if ((nodes & 0x3ff) == 0 && stop()) return false;
    if (static_cast<std::int64_t>(s.members.size()) == params_.k || s.next_unit == units_.size()) {
      // All remaining units rejected.
      State t = s;
      t.next_unit = units_.size();
      if (is_solution(t)) emit(t.members);
      return true;
    }
    State taken = s;
    if (apply(taken, true)) {
      if (!run(std::move(taken), emit, stop, nodes)) return false;
    }
    if (apply(s, false)) {
      if (!run(std::move(s), emit, stop, nodes)) return false;
    }
    return true;
  }

 private:
  PdsParams params_;
  std::vector<std::vector<std::size_t>> units_;
  std::size_t v_;
  std::vector<std::size_t> diff_;
  std::vector<std::size_t> unit_of_;
  std::vector<std::size_t> suffix_size_;
};

}  // namespace detail

/// Finds every regular PDS with the given parameters (trivial ones
/// included and flagged). When Delta is a perfect square the candidates
/// are unions of multiplier orbits; otherwise unions of inverse pairs.
/// Results are sorted by element list regardless of `jobs`.
inline SearchResult search_pds(const GroupSpec& group, const PdsParams& params, const SearchOptions& options = {}) {
  if (group.order() != params.v) {
    throw PreconditionError("v = " + std::to_string(params.v) + " but |" + group.notation() + "| = " + std::to_string(group.order()));
  }
  if (group.order() > 4096) throw PreconditionError("search_pds supports groups of order <= 4096");

  SearchResult result;
  result.used_multiplier_orbits = params.sqrt_delta().has_value();

  std::vector<std::vector<std::size_t>> units;
  std::vector<bool> seen(static_cast<std::size_t>(group.order()), false);
  seen[0] = true;
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i]) continue;
    const GroupElement g = group.element_at(i);
    std::vector<GroupElement> unit =
        result.used_multiplier_orbits ? lmt_orbit(group, g) : std::vector<GroupElement>{g, group.inverse(g)};
    std::vector<std::size_t> idx;
    for (const auto& x : unit) idx.push_back(group.index_of(x));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (std::size_t x : idx) seen[x] = true;
    units.push_back(std::move(idx));
  }

  const detail::PdsBacktracker engine(group, params, std::move(units));

  const auto deadline = options.timeout_seconds
                            ? std::optional(std::chrono::steady_clock::now() +
                                            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                std::chrono::duration<double>(*options.timeout_seconds)))
                            : std::nullopt;
  std::atomic<bool> stopped{false};
  std::atomic<std::size_t> found_count{0};
  auto stop = [&]() {
    if (stopped.load()) return true;
    if (deadline && std::chrono::steady_clock::now() >= *deadline) stopped = true;
    if (options.max_results != 0 && found_count.load() >= options.max_results) stopped = true;
    return stopped.load();
  };

  // Expand the top of the tree into independent subproblems.
  using State = detail::PdsBacktracker::State;
  std::vector<State> frontier{engine.initial_state()};
  const std::size_t split_depth = options.jobs > 1 ? std::min<std::size_t>(engine.unit_count(), 6) : 0;
  std::uint64_t nodes = 0;
  for (std::size_t depth = 0; depth < split_depth; ++depth) {
    std::vector<State> next;
    for (auto& s : frontier) {
      ++nodes;
      if (static_cast<std::int64_t>(s.members.size()) == params.k || s.next_unit == engine.unit_count()) {
        next.push_back(std::move(s));
        continue;
      }
      State taken = s;
      if (engine.apply(taken, true)) next.push_back(std::move(taken));
      if (engine.apply(s, false)) next.push_back(std::move(s));
    }
    frontier = std::move(next);
  }

  std::mutex mu;
  std::vector<std::vector<std::size_t>> raw;
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::uint64_t> total_nodes{nodes};
  auto worker = [&]() {
    std::uint64_t local_nodes = 0;
    std::vector<std::vector<std::size_t>> local;
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= frontier.size()) break;
      engine.run(
          frontier[i],
          [&](const std::vector<std::size_t>& members) {
            local.push_back(members);
            found_count.fetch_add(1);
          },
          stop, local_nodes);
    }
    total_nodes.fetch_add(local_nodes);
    const std::lock_guard<std::mutex> lock(mu);
    raw.insert(raw.end(), local.begin(), local.end());
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  result.nodes = total_nodes.load();
  result.complete = !stopped.load();
  for (auto& members : raw) std::sort(members.begin(), members.end());
  std::sort(raw.begin(), raw.end());
  if (options.max_results != 0 && raw.size() > options.max_results) {
    raw.resize(options.max_results);
    result.complete = false;
  }
  for (const auto& members : raw) {
    std::vector<GroupElement> elems;
    for (std::size_t x : members) elems.push_back(group.element_at(x));
    CandidateSet set(group, std::move(elems));
    const bool trivial = is_trivial(set);
    result.sets.push_back({std::move(set), trivial});
  }
  return result;
}

}  // namespace pdscert

#endif  // PDSCERT_SEARCH_HPP
