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

#ifndef SPLP_CMCS_H_
#define SPLP_CMCS_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splp/components.h"
#include "splp/random.h"
#include "splp/solution.h"

namespace splp {

// Component list plus the two transition matrices. Component 0 is the entry
// point. matrices are row-stochastic: row h gives the distribution of the
// next component after component h succeeded (succ) or failed (fail).
struct Configuration {
  std::vector<ComponentSpec> components;
  std::vector<std::vector<double>> succ;
  std::vector<std::vector<double>> fail;
  std::string label;

  int size() const { return static_cast<int>(components.size()); }

  // Every row of both matrices is a unit vector.
  bool is_deterministic() const;

  // Throws std::invalid_argument naming the first offending row: wrong
  // dimensions, a negative entry, or a row sum off 1 by more than 1e-9.
  void validate() const;

  // Successor of component h in a deterministic configuration.
  int next_succ(int h) const;
  int next_fail(int h) const;

  // Builds a deterministic configuration from successor tables.
  static Configuration deterministic(std::vector<ComponentSpec> components,
                                     std::span<const int> succ_next,
                                     std::span<const int> fail_next,
                                     std::string label = {});

  // Equality ignores the label.
  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.components == b.components && a.succ == b.succ && a.fail == b.fail;
  }
};

// Picks a column of `row` with probability equal to its entry. A row with a
// single nonzero entry returns it without drawing from the rng.
int roulette_wheel(std::span<const double> row, RandomSource& rng);

// The two configurations reported as best for two and three components:
// "paper-2" (open_best, close_random(4)) and "paper-3" (close_best,
// exchange_half_fixed, open_random(4)). Throws std::invalid_argument for
// other names.
Configuration preset(std::string_view name);

// Text format:
//   cmcs-config 1
//   components: <name>[, <name>...]
//   succ: p_1 ... p_k      (k lines)
//   fail: p_1 ... p_k      (k lines)
// Lines starting with '#' are comments.
Configuration parse_config(std::string_view text);
std::string write_config(const Configuration& config);

// 16 hex digits of the FNV-1a hash of write_config(config).
std::string config_id(const Configuration& config);

enum class ClockKind {
  // Monotonic wall clock.
  kWall,
  // Elementary cost evaluations counted by the solution, converted to
  // milliseconds at kWorkUnitsPerMs. Reproducible across runs and machines.
  kWork,
};

inline constexpr double kWorkUnitsPerMs = 300000.0;

// Work charged per component application on top of its own scans.
inline constexpr std::uint64_t kDispatchWork = 32;

const char* to_string(ClockKind clock);
ClockKind parse_clock(std::string_view text);

struct Budget {
  double ms = 0;
  ClockKind clock = ClockKind::kWork;
  // Optional cap on component applications, mainly for tests.
  std::optional<std::uint64_t> max_iterations;
};

struct TraceEntry {
  int component;
  bool improved;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RunOptions {
  bool record_trace = false;
};

struct RunResult {
  std::optional<SolutionState> best_solution;
  // Working solution when the budget ran out.
  std::optional<SolutionState> final_solution;
  Money best_value = 0;
  std::uint64_t iterations = 0;
  double elapsed_ms = 0;  // measured on the budget's clock
  std::vector<TraceEntry> trace;
};

// Markov chain over component indices, independent of the problem. `step(h)`
// applies component h to the working solution and returns the new objective;
// `stop()` is consulted before every application; `on_best()` fires whenever
// the working solution beats the incumbent. Returns the number of steps.
template <typename Step, typename Stop, typename OnBest>
std::uint64_t run_chain(const Configuration& config, Money initial_value,
                        Step&& step, Stop&& stop, OnBest&& on_best,
                        RandomSource& rng,
                        std::vector<TraceEntry>* trace = nullptr) {
  Money best = initial_value;
  Money previous = initial_value;
  int h = 0;
  std::uint64_t iterations = 0;
  while (!stop()) {
    const Money current = step(h);
    ++iterations;
    const bool improved = current < previous;
    if (trace) trace->push_back({h, improved});
    if (improved) {
      if (current < best) {
        best = current;
        on_best();
      }
      h = roulette_wheel(config.succ[h], rng);
    } else {
      h = roulette_wheel(config.fail[h], rng);
    }
    previous = current;
  }
  return iterations;
}

// Runs the configuration from the initial opened set until the budget is
// spent and returns the best solution seen. The working solution is never
// reset to the incumbent. Throws std::invalid_argument for an invalid
// configuration or initial set.
RunResult run_cmcs(const Configuration& config, const Problem& problem,
                   std::span<const SiteIndex> initial, const Budget& budget,
                   RandomSource& rng, const RunOptions& options = {});

// Initial solution used by the CLI and the training set: r distinct
// uniformly drawn sites, r uniform in [2, max(2, floor(0.1 m))] capped at m.
std::vector<SiteIndex> random_initial_sites(int num_sites, RandomSource& rng);

}  // namespace splp

#endif  // SPLP_CMCS_H_
