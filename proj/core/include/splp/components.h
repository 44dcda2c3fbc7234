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

#ifndef SPLP_COMPONENTS_H_
#define SPLP_COMPONENTS_H_

#include <string>
#include <string_view>

#include "splp/random.h"
#include "splp/solution.h"

namespace splp {

enum class ComponentKind {
  kOpenRandom,
  kCloseRandom,
  kOpenBest,
  kCloseBest,
  kExchangeBest,
  kExchangeHalfFixed,
};

// One of the six component families. Mutation kinds carry a strength k in
// [1, 4]; for the local searches k is 0.
class ComponentSpec {
 public:
  static ComponentSpec open_random(int k);
  static ComponentSpec close_random(int k);
  static ComponentSpec open_best() { return ComponentSpec(ComponentKind::kOpenBest, 0); }
  static ComponentSpec close_best() { return ComponentSpec(ComponentKind::kCloseBest, 0); }
  static ComponentSpec exchange_best() {
    return ComponentSpec(ComponentKind::kExchangeBest, 0);
  }
  static ComponentSpec exchange_half_fixed() {
    return ComponentSpec(ComponentKind::kExchangeHalfFixed, 0);
  }

  // Parses the config-file spelling, e.g. "open_best" or "close_random(3)".
  // Throws std::invalid_argument for anything else.
  static ComponentSpec parse(std::string_view name);

  ComponentKind kind() const { return kind_; }
  int k() const { return k_; }

  bool is_mutation() const {
    return kind_ == ComponentKind::kOpenRandom ||
           kind_ == ComponentKind::kCloseRandom;
  }
  // The four local searches.
  bool improvement_pressure() const { return !is_mutation(); }
  // Only the mutations may return a worse solution.
  bool can_worsen() const { return is_mutation(); }
  // Deterministic neighbourhood, move iff improving. Exchange Half Fixed
  // samples the site to close, so it is not one of these.
  bool classic_deterministic_ls() const {
    return kind_ == ComponentKind::kOpenBest ||
           kind_ == ComponentKind::kCloseBest ||
           kind_ == ComponentKind::kExchangeBest;
  }

  // Config-file spelling, e.g. "open_random(4)".
  std::string name() const;
  // Human-readable, e.g. "Open Random (4)".
  std::string display_name() const;

  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;

 private:
  ComponentSpec(ComponentKind kind, int k) : kind_(kind), k_(k) {}

  ComponentKind kind_;
  int k_;
};

struct Outcome {
  bool improved = false;
  Money delta = 0;  // value after minus value before
};

// Opens k distinct uniformly drawn sites (drawn among all m sites); draws
// that hit an opened site are no-ops.
Outcome open_random(SolutionState& state, int k, RandomSource& rng);

// Closes min(k, |P| - 2) distinct uniformly drawn opened sites.
Outcome close_random(SolutionState& state, int k, RandomSource& rng);

// Best single opening, applied only if it strictly improves. The scan visits,
// for each client, only the sites ranked ahead of its closest opened site.
Outcome open_best(SolutionState& state);

// Best single closing in O(m + n), applied only if it strictly improves and
// at least three sites are open.
Outcome close_best(SolutionState& state);

// Best swap (close r in P, open i outside P) over the whole neighbourhood in
// O(m n), applied only if it strictly improves. Ties go to the lowest
// (r, i) pair.
Outcome exchange_best(SolutionState& state);

// Draws the site to close uniformly from P, then applies the best strictly
// improving swap for that site, if any.
Outcome exchange_half_fixed(SolutionState& state, RandomSource& rng);

Outcome apply(const ComponentSpec& spec, SolutionState& state,
              RandomSource& rng);

}  // namespace splp

#endif  // SPLP_COMPONENTS_H_
