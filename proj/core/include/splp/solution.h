// Copyright 2026 The splp-cmcs Authors
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

#ifndef SPLP_SOLUTION_H_
#define SPLP_SOLUTION_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splp/instance.h"

namespace splp {

// For every client, all sites ordered by (c_ij, i) ascending, the matching
// costs in that order, and the inverse permutation. Ties between equal costs
// go to the lower site index; the same (cost, index) key is used for every
// closest / second-closest decision in SolutionState.
class RankMatrix {
 public:
  explicit RankMatrix(const Instance& inst);

  int num_sites() const { return m_; }

  // Sites serving client j, nearest first.
  std::span<const SiteIndex> order(ClientIndex j) const {
    return {order_.data() + offset(j), static_cast<std::size_t>(m_)};
  }
  std::span<const Money> sorted_costs(ClientIndex j) const {
    return {sorted_cost_.data() + offset(j), static_cast<std::size_t>(m_)};
  }
  // Position of site i in order(j).
  std::int32_t rank(ClientIndex j, SiteIndex i) const {
    return rank_[offset(j) + i];
  }

 private:
  std::size_t offset(ClientIndex j) const {
    return static_cast<std::size_t>(j) * m_;
  }

  int m_ = 0;
  std::vector<SiteIndex> order_;
  std::vector<Money> sorted_cost_;
  std::vector<std::int32_t> rank_;
};

// Instance plus its rank matrix. Immutable and shared by all solutions and
// workers operating on the instance.
struct Problem {
  explicit Problem(Instance inst) : instance(std::move(inst)), ranks(instance) {}

  Instance instance;
  RankMatrix ranks;
};

std::shared_ptr<const Problem> make_problem(Instance inst);

// A solution with at least two opened sites, the closest and second closest
// opened site of every client, and the cached objective value.
//
// The referenced Problem must outlive the state. Copies are independent
// snapshots.
class SolutionState {
 public:
  // Throws std::invalid_argument if fewer than two distinct sites are given
  // or an index is out of range. Indices are zero-based.
  SolutionState(const Problem& problem, std::span<const SiteIndex> opened);

  const Problem& problem() const { return *problem_; }
  const Instance& instance() const { return problem_->instance; }

  Money value() const { return value_; }
  int num_open() const { return static_cast<int>(opened_.size()); }
  bool is_open(SiteIndex i) const { return is_open_[i] != 0; }
  // Opened sites in ascending order.
  std::span<const SiteIndex> opened() const { return opened_; }
  SiteIndex closest(ClientIndex j) const { return closest_[j]; }
  SiteIndex second(ClientIndex j) const { return second_[j]; }
  std::span<const SiteIndex> closest() const { return closest_; }
  std::span<const SiteIndex> second() const { return second_; }

  // Opens a closed site in O(n). Throws std::invalid_argument if already open.
  void open_site(SiteIndex site);

  // Closes an opened site in O(n |P|). Throws std::invalid_argument if the
  // site is closed or only two sites are open.
  void close_site(SiteIndex site);

  // Elementary cost evaluations performed on this state so far; drives the
  // deterministic work clock.
  std::uint64_t work() const { return work_; }
  void add_work(std::uint64_t units) { work_ += units; }

  // Same opened set, closest / second assignment and value.
  bool same_solution(const SolutionState& other) const;

 private:
  bool nearer(ClientIndex j, SiteIndex a, SiteIndex b) const {
    return problem_->ranks.rank(j, a) < problem_->ranks.rank(j, b);
  }
  SiteIndex best_other(ClientIndex j, SiteIndex excluded) const;

  const Problem* problem_;
  std::vector<std::uint8_t> is_open_;
  std::vector<SiteIndex> opened_;
  std::vector<SiteIndex> closest_;
  std::vector<SiteIndex> second_;
  Money value_ = 0;
  std::uint64_t work_ = 0;
};

// Objective of an opened set computed from scratch:
// sum of fixed costs plus each client's cheapest opened site.
Money objective(const Instance& inst, std::span<const SiteIndex> opened);

// Recomputes everything from the instance, ignoring cached fields.
Money objective(const SolutionState& state);

// Describes the first violated invariant (cached value, closest / second
// assignment, open flags), or nullopt if the state is consistent.
std::optional<std::string> check_invariants(const SolutionState& state);

}  // namespace splp

#endif  // SPLP_SOLUTION_H_
