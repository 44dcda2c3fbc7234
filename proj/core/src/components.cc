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

#include "splp/components.h"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace splp {

namespace {

constexpr Money kNoMove = std::numeric_limits<Money>::max();

// Per-thread scratch space reused across calls.
struct Scratch {
  std::vector<Money> gain;    // per site
  std::vector<Money> extra;   // |P| x m
  std::vector<int> position;  // site -> index in P, or -1
  std::vector<SiteIndex> drawn;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

Outcome finish(const SolutionState& state, Money before) {
  const Money delta = state.value() - before;
  return {delta < 0, delta};
}

// gain[i] = sum over clients of max(0, c_{p(j),j} - c_{ij}) for every site i,
// visiting only the sites ranked ahead of p(j). Returns the number of
// entries visited.
std::uint64_t accumulate_gains(const SolutionState& state,
                               std::vector<Money>& gain) {
  const Problem& problem = state.problem();
  const int m = problem.instance.num_sites();
  const int n = problem.instance.num_clients();
  gain.assign(m, 0);
  std::uint64_t visited = 0;
  for (ClientIndex j = 0; j < n; ++j) {
    const std::int32_t limit = problem.ranks.rank(j, state.closest(j));
    const auto order = problem.ranks.order(j);
    const auto costs = problem.ranks.sorted_costs(j);
    const Money current = costs[limit];
    for (std::int32_t r = 0; r < limit; ++r) {
      gain[order[r]] += current - costs[r];
    }
    visited += limit;
  }
  return visited;
}

// For client j, adds the corrections that turn "close p(j)" + "open i"
// estimates into exact swap deltas: max(c_ij, c_{p(j),j}) - c_{q(j),j} for
// every i ranked ahead of q(j).
std::uint64_t accumulate_swap_corrections(const SolutionState& state,
                                          ClientIndex j, Money* extra_row) {
  const Problem& problem = state.problem();
  const std::int32_t limit = problem.ranks.rank(j, state.second(j));
  const auto order = problem.ranks.order(j);
  const auto costs = problem.ranks.sorted_costs(j);
  const Money closest_cost = problem.instance.cost(state.closest(j), j);
  const Money second_cost = costs[limit];
  for (std::int32_t r = 0; r < limit; ++r) {
    extra_row[order[r]] += std::max(costs[r], closest_cost) - second_cost;
  }
  return limit;
}

}  // namespace

ComponentSpec ComponentSpec::open_random(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("open_random: k must be in [1, 4]");
  return ComponentSpec(ComponentKind::kOpenRandom, k);
}

ComponentSpec ComponentSpec::close_random(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("close_random: k must be in [1, 4]");
  return ComponentSpec(ComponentKind::kCloseRandom, k);
}

ComponentSpec ComponentSpec::parse(std::string_view name) {
  auto parse_k = [&](std::string_view prefix) -> std::optional<int> {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    std::string_view rest = name.substr(prefix.size());
    if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') {
      return std::nullopt;
    }
    rest = rest.substr(1, rest.size() - 2);
    int k = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) return std::nullopt;
    return k;
  };
  if (name == "open_best") return open_best();
  if (name == "close_best") return close_best();
  if (name == "exchange_best") return exchange_best();
  if (name == "exchange_half_fixed") return exchange_half_fixed();
  if (auto k = parse_k("open_random")) return open_random(*k);
  if (auto k = parse_k("close_random")) return close_random(*k);
  throw std::invalid_argument("unknown component '" + std::string(name) + "'");
}

std::string ComponentSpec::name() const {
  switch (kind_) {
    case ComponentKind::kOpenRandom:
      return "open_random(" + std::to_string(k_) + ")";
    case ComponentKind::kCloseRandom:
      return "close_random(" + std::to_string(k_) + ")";
    case ComponentKind::kOpenBest:
      return "open_best";
    case ComponentKind::kCloseBest:
      return "close_best";
    case ComponentKind::kExchangeBest:
      return "exchange_best";
    case ComponentKind::kExchangeHalfFixed:
      return "exchange_half_fixed";
  }
  return "?";
}

std::string ComponentSpec::display_name() const {
  switch (kind_) {
    case ComponentKind::kOpenRandom:
      return "Open Random (" + std::to_string(k_) + ")";
    case ComponentKind::kCloseRandom:
      return "Close Random (" + std::to_string(k_) + ")";
    case ComponentKind::kOpenBest:
      return "Open Best";
    case ComponentKind::kCloseBest:
      return "Close Best";
    case ComponentKind::kExchangeBest:
      return "Exchange Best";
    case ComponentKind::kExchangeHalfFixed:
      return "Exchange Half Fixed";
  }
  return "?";
}

Outcome open_random(SolutionState& state, int k, RandomSource& rng) {
  const Money before = state.value();
  const int m = state.instance().num_sites();
  const int draws = std::min(k, m);
  auto& drawn = scratch().drawn;
  drawn.clear();
  while (static_cast<int>(drawn.size()) < draws) {
    const auto site = static_cast<SiteIndex>(rng.below(m));
    if (std::find(drawn.begin(), drawn.end(), site) == drawn.end()) {
      drawn.push_back(site);
    }
  }
  for (SiteIndex site : drawn) {
    if (!state.is_open(site)) state.open_site(site);
  }
  return finish(state, before);
}

Outcome close_random(SolutionState& state, int k, RandomSource& rng) {
  const Money before = state.value();
  const int count = std::min(k, state.num_open() - 2);
  if (count <= 0) return {};
  auto& drawn = scratch().drawn;
  drawn.clear();
  const auto opened = state.opened();
  while (static_cast<int>(drawn.size()) < count) {
    const SiteIndex site = opened[rng.below(opened.size())];
    if (std::find(drawn.begin(), drawn.end(), site) == drawn.end()) {
      drawn.push_back(site);
    }
  }
  // `opened` is invalidated from here on.
  for (SiteIndex site : drawn) state.close_site(site);
  return finish(state, before);
}

Outcome open_best(SolutionState& state) {
  const Instance& inst = state.instance();
  const int m = inst.num_sites();
  if (state.num_open() == m) return {};
  auto& gain = scratch().gain;
  const std::uint64_t visited = accumulate_gains(state, gain);
  state.add_work(visited + m);

  SiteIndex best_site = -1;
  Money best_delta = kNoMove;
  for (SiteIndex i = 0; i < m; ++i) {
    if (state.is_open(i)) continue;
    const Money delta = inst.fixed_cost(i) - gain[i];
    if (delta < best_delta) {
      best_delta = delta;
      best_site = i;
    }
  }
  if (best_delta >= 0) return {};
  const Money before = state.value();
  state.open_site(best_site);
  assert(state.value() == before + best_delta);
  return finish(state, before);
}

Outcome close_best(SolutionState& state) {
  const Instance& inst = state.instance();
  const int m = inst.num_sites();
  const int n = inst.num_clients();
  auto& delta = scratch().gain;
  delta.assign(m, 0);
  for (SiteIndex i : state.opened()) delta[i] = -inst.fixed_cost(i);
  for (ClientIndex j = 0; j < n; ++j) {
    delta[state.closest(j)] +=
        inst.cost(state.second(j), j) - inst.cost(state.closest(j), j);
  }
  state.add_work(static_cast<std::uint64_t>(m) + n);

  SiteIndex best_site = -1;
  Money best_delta = kNoMove;
  for (SiteIndex i : state.opened()) {
    if (delta[i] < best_delta) {
      best_delta = delta[i];
      best_site = i;
    }
  }
  if (best_delta >= 0 || state.num_open() < 3) return {};
  const Money before = state.value();
  state.close_site(best_site);
  assert(state.value() == before + best_delta);
  return finish(state, before);
}

Outcome exchange_best(SolutionState& state) {
  const Instance& inst = state.instance();
  const int m = inst.num_sites();
  const int n = inst.num_clients();
  const int open_count = state.num_open();
  if (open_count == m) return {};

  Scratch& s = scratch();
  std::uint64_t work = accumulate_gains(state, s.gain);

  const auto opened = state.opened();
  s.position.assign(m, -1);
  for (int k = 0; k < open_count; ++k) s.position[opened[k]] = k;

  // loss[r] = cost of closing r alone (without its fixed cost refund).
  std::vector<Money> loss(open_count, 0);
  s.extra.assign(static_cast<std::size_t>(open_count) * m, 0);
  for (ClientIndex j = 0; j < n; ++j) {
    const SiteIndex p = state.closest(j);
    const int row = s.position[p];
    loss[row] += inst.cost(state.second(j), j) - inst.cost(p, j);
    work += accumulate_swap_corrections(
        state, j, s.extra.data() + static_cast<std::size_t>(row) * m);
  }
  work += static_cast<std::uint64_t>(open_count) * m + n;
  state.add_work(work);

  Money best_delta = kNoMove;
  SiteIndex best_close = -1;
  SiteIndex best_open = -1;
  for (int row = 0; row < open_count; ++row) {
    const SiteIndex r = opened[row];
    const Money base = loss[row] - inst.fixed_cost(r);
    const Money* extra = s.extra.data() + static_cast<std::size_t>(row) * m;
    for (SiteIndex i = 0; i < m; ++i) {
      if (state.is_open(i)) continue;
      const Money delta = base + inst.fixed_cost(i) - s.gain[i] + extra[i];
      if (delta < best_delta) {
        best_delta = delta;
        best_close = r;
        best_open = i;
      }
    }
  }
  if (best_delta >= 0) return {};
  const Money before = state.value();
  state.open_site(best_open);
  state.close_site(best_close);
  assert(state.value() == before + best_delta);
  return finish(state, before);
}

Outcome exchange_half_fixed(SolutionState& state, RandomSource& rng) {
  const Instance& inst = state.instance();
  const int m = inst.num_sites();
  const int n = inst.num_clients();
  const SiteIndex r = state.opened()[rng.below(state.num_open())];
  if (state.num_open() == m) return {};

  Scratch& s = scratch();
  std::uint64_t work = accumulate_gains(state, s.gain);
  s.extra.assign(m, 0);
  Money loss = 0;
  for (ClientIndex j = 0; j < n; ++j) {
    if (state.closest(j) != r) continue;
    loss += inst.cost(state.second(j), j) - inst.cost(r, j);
    work += accumulate_swap_corrections(state, j, s.extra.data());
  }
  work += static_cast<std::uint64_t>(m) + n;
  state.add_work(work);

  const Money base = loss - inst.fixed_cost(r);
  Money best_delta = kNoMove;
  SiteIndex best_open = -1;
  for (SiteIndex i = 0; i < m; ++i) {
    if (state.is_open(i)) continue;
    const Money delta = base + inst.fixed_cost(i) - s.gain[i] + s.extra[i];
    if (delta < best_delta) {
      best_delta = delta;
      best_open = i;
    }
  }
  if (best_delta >= 0) return {};
  const Money before = state.value();
  state.open_site(best_open);
  state.close_site(r);
  assert(state.value() == before + best_delta);
  return finish(state, before);
}

Outcome apply(const ComponentSpec& spec, SolutionState& state,
              RandomSource& rng) {
  switch (spec.kind()) {
    case ComponentKind::kOpenRandom:
      return open_random(state, spec.k(), rng);
    case ComponentKind::kCloseRandom:
      return close_random(state, spec.k(), rng);
    case ComponentKind::kOpenBest:
      return open_best(state);
    case ComponentKind::kCloseBest:
      return close_best(state);
    case ComponentKind::kExchangeBest:
      return exchange_best(state);
    case ComponentKind::kExchangeHalfFixed:
      return exchange_half_fixed(state, rng);
  }
  throw std::logic_error("unknown component kind");
}

}  // namespace splp
