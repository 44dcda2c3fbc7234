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

// Hand-computed executor traces for stub components. Each case fixes the
// successor tables, the objective each application returns and the expected
// (component, improved) sequence.
#ifndef SPLP_TESTS_TRACE_CASES_H_
#define SPLP_TESTS_TRACE_CASES_H_

#include <string>
#include <vector>

#include "splp/cmcs.h"

namespace splp::testing {

struct TraceCase {
  std::string name;
  std::vector<int> succ_next;
  std::vector<int> fail_next;
  Money initial = 0;
  std::vector<Money> values;  // objective after each application
  std::vector<TraceEntry> expected;
  Money expected_best = 0;
};

inline std::vector<TraceCase> trace_cases() {
  const bool T = true, F = false;
  return {
      // H1,H1,H3,H3,H2,H1: H1 improves, fails, H3 improves, fails, H2 improves.
      {"section-3 sequence", {0, 0, 2}, {2, 0, 1}, 100,
       {90, 90, 80, 80, 70, 70},
       {{0, T}, {0, F}, {2, T}, {2, F}, {1, T}, {0, F}},
       70},
      {"improving self-loop", {0, 0}, {1, 0}, 50,
       {49, 48, 47, 46, 45},
       {{0, T}, {0, T}, {0, T}, {0, T}, {0, T}},
       45},
      {"two-component alternation", {0, 0}, {1, 0}, 21,
       {21, 16, 21, 21, 21},
       {{0, F}, {1, T}, {0, F}, {1, F}, {0, F}},
       16},
      {"three-component preset shape", {0, 0, 1}, {1, 2, 1}, 40,
       {40, 40, 45, 44, 44, 44, 50},
       {{0, F}, {1, F}, {2, F}, {1, T}, {0, F}, {1, F}, {2, F}},
       40},
      {"fail cycle", {0, 0, 0}, {1, 2, 0}, 5,
       {5, 5, 5, 5, 5, 5},
       {{0, F}, {1, F}, {2, F}, {0, F}, {1, F}, {2, F}},
       5},
      // Improvement is judged against the previous iterate, not the incumbent.
      {"previous-iterate comparison", {1, 0}, {1, 1}, 10,
       {12, 11, 11, 9},
       {{0, F}, {1, T}, {0, F}, {1, T}},
       9},
  };
}

// Runs a case through run_chain with stub components; returns the trace and
// stores the incumbent value in *best.
inline std::vector<TraceEntry> run_trace_case(const TraceCase& c, Money* best) {
  std::vector<ComponentSpec> stubs;
  for (std::size_t k = 0; k < c.succ_next.size(); ++k) {
    stubs.push_back(ComponentSpec::open_random(static_cast<int>(k) + 1));
  }
  const Configuration config =
      Configuration::deterministic(stubs, c.succ_next, c.fail_next);
  Rng rng(0);
  std::size_t next = 0;
  Money current = c.initial;
  Money incumbent = c.initial;
  std::vector<TraceEntry> trace;
  run_chain(
      config, c.initial, [&](int) { return current = c.values[next++]; },
      [&] { return next >= c.values.size(); },
      [&] { incumbent = current; }, rng, &trace);
  if (best) *best = incumbent;
  return trace;
}

}  // namespace splp::testing

#endif  // SPLP_TESTS_TRACE_CASES_H_
