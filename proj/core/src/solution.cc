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

#include "splp/solution.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace splp {

RankMatrix::RankMatrix(const Instance& inst) : m_(inst.num_sites()) {
  const int n = inst.num_clients();
  const std::size_t total = static_cast<std::size_t>(m_) * n;
  order_.resize(total);
  sorted_cost_.resize(total);
  rank_.resize(total);
  for (ClientIndex j = 0; j < n; ++j) {
    auto costs = inst.client_costs(j);
    SiteIndex* order = order_.data() + offset(j);
    std::iota(order, order + m_, 0);
    std::stable_sort(order, order + m_, [&](SiteIndex a, SiteIndex b) {
      return costs[a] < costs[b];
    });
    for (int r = 0; r < m_; ++r) {
      sorted_cost_[offset(j) + r] = costs[order[r]];
      rank_[offset(j) + order[r]] = r;
    }
  }
}

std::shared_ptr<const Problem> make_problem(Instance inst) {
  return std::make_shared<const Problem>(std::move(inst));
}

SolutionState::SolutionState(const Problem& problem,
                             std::span<const SiteIndex> opened)
    : problem_(&problem) {
  const Instance& inst = problem.instance;
  const int m = inst.num_sites();
  const int n = inst.num_clients();
  is_open_.assign(m, 0);
  for (SiteIndex i : opened) {
    if (i < 0 || i >= m) {
      throw std::invalid_argument("site index " + std::to_string(i + 1) +
                                  " out of range [1, " + std::to_string(m) + "]");
    }
    if (is_open_[i]) {
      throw std::invalid_argument("site " + std::to_string(i + 1) +
                                  " listed twice");
    }
    is_open_[i] = 1;
  }
  if (opened.size() < 2) {
    throw std::invalid_argument("a solution needs at least 2 opened sites");
  }
  for (SiteIndex i = 0; i < m; ++i) {
    if (is_open_[i]) opened_.push_back(i);
  }

  closest_.resize(n);
  second_.resize(n);
  value_ = 0;
  for (SiteIndex i : opened_) value_ += inst.fixed_cost(i);
  for (ClientIndex j = 0; j < n; ++j) {
    SiteIndex p = opened_[0];
    SiteIndex q = opened_[1];
    if (nearer(j, q, p)) std::swap(p, q);
    for (std::size_t k = 2; k < opened_.size(); ++k) {
      const SiteIndex i = opened_[k];
      if (nearer(j, i, p)) {
        q = p;
        p = i;
      } else if (nearer(j, i, q)) {
        q = i;
      }
    }
    closest_[j] = p;
    second_[j] = q;
    value_ += inst.cost(p, j);
  }
  work_ = static_cast<std::uint64_t>(n) * opened_.size();
}

void SolutionState::open_site(SiteIndex site) {
  const Instance& inst = problem_->instance;
  if (site < 0 || site >= inst.num_sites()) {
    throw std::invalid_argument("open_site: index out of range");
  }
  if (is_open_[site]) {
    throw std::invalid_argument("open_site: site " + std::to_string(site + 1) +
                                " is already open");
  }
  const int n = inst.num_clients();
  const auto& ranks = problem_->ranks;
  for (ClientIndex j = 0; j < n; ++j) {
    const std::int32_t r = ranks.rank(j, site);
    if (r < ranks.rank(j, closest_[j])) {
      value_ += inst.cost(site, j) - inst.cost(closest_[j], j);
      second_[j] = closest_[j];
      closest_[j] = site;
    } else if (r < ranks.rank(j, second_[j])) {
      // Between p(j) and q(j): only the second-closest site changes.
      second_[j] = site;
    }
  }
  value_ += inst.fixed_cost(site);
  opened_.insert(std::upper_bound(opened_.begin(), opened_.end(), site), site);
  is_open_[site] = 1;
  work_ += n;
}

SiteIndex SolutionState::best_other(ClientIndex j, SiteIndex excluded) const {
  const auto& ranks = problem_->ranks;
  SiteIndex best = -1;
  std::int32_t best_rank = std::numeric_limits<std::int32_t>::max();
  for (SiteIndex i : opened_) {
    if (i == excluded) continue;
    const std::int32_t r = ranks.rank(j, i);
    if (r < best_rank) {
      best_rank = r;
      best = i;
    }
  }
  return best;
}

void SolutionState::close_site(SiteIndex site) {
  const Instance& inst = problem_->instance;
  if (site < 0 || site >= inst.num_sites() || !is_open_[site]) {
    throw std::invalid_argument("close_site: site " + std::to_string(site + 1) +
                                " is not open");
  }
  if (opened_.size() <= 2) {
    throw std::invalid_argument(
        "close_site: at least 2 sites must remain open");
  }
  opened_.erase(std::lower_bound(opened_.begin(), opened_.end(), site));
  is_open_[site] = 0;
  const int n = inst.num_clients();
  std::uint64_t rescans = 0;
  for (ClientIndex j = 0; j < n; ++j) {
    if (closest_[j] == site) {
      value_ += inst.cost(second_[j], j) - inst.cost(site, j);
      closest_[j] = second_[j];
      second_[j] = best_other(j, closest_[j]);
      ++rescans;
    } else if (second_[j] == site) {
      second_[j] = best_other(j, closest_[j]);
      ++rescans;
    }
  }
  value_ -= inst.fixed_cost(site);
  work_ += n + rescans * opened_.size();
}

bool SolutionState::same_solution(const SolutionState& other) const {
  return problem_ == other.problem_ && value_ == other.value_ &&
         opened_ == other.opened_ && closest_ == other.closest_ &&
         second_ == other.second_;
}

Money objective(const Instance& inst, std::span<const SiteIndex> opened) {
  if (opened.empty()) throw std::invalid_argument("no opened sites");
  Money total = 0;
  for (SiteIndex i : opened) total += inst.fixed_cost(i);
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    Money best = std::numeric_limits<Money>::max();
    for (SiteIndex i : opened) best = std::min(best, inst.cost(i, j));
    total += best;
  }
  return total;
}

Money objective(const SolutionState& state) {
  std::vector<SiteIndex> opened;
  for (SiteIndex i = 0; i < state.instance().num_sites(); ++i) {
    if (state.is_open(i)) opened.push_back(i);
  }
  return objective(state.instance(), opened);
}

std::optional<std::string> check_invariants(const SolutionState& state) {
  const Instance& inst = state.instance();
  std::vector<SiteIndex> flagged;
  for (SiteIndex i = 0; i < inst.num_sites(); ++i) {
    if (state.is_open(i)) flagged.push_back(i);
  }
  if (!std::ranges::equal(flagged, state.opened())) {
    return "open flags disagree with the opened list";
  }
  if (flagged.size() < 2) return "fewer than 2 opened sites";
  const SolutionState fresh(state.problem(), flagged);
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    if (state.closest(j) != fresh.closest(j)) {
      return "closest site of client " + std::to_string(j + 1) + " is " +
             std::to_string(state.closest(j) + 1) + ", expected " +
             std::to_string(fresh.closest(j) + 1);
    }
    if (state.second(j) != fresh.second(j)) {
      return "second closest site of client " + std::to_string(j + 1) +
             " is " + std::to_string(state.second(j) + 1) + ", expected " +
             std::to_string(fresh.second(j) + 1);
    }
  }
  const Money v = objective(inst, flagged);
  if (state.value() != v) {
    return "cached value " + std::to_string(state.value()) +
           " differs from recomputed " + std::to_string(v);
  }
  return std::nullopt;
}

}  // namespace splp
