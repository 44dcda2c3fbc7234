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

#ifndef SPLP_GENERATOR_H_
#define SPLP_GENERATOR_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "splp/cmcs.h"
#include "splp/components.h"
#include "splp/instance.h"

namespace splp {

using BigInt = boost::multiprecision::cpp_int;

using ComponentPool = std::vector<ComponentSpec>;

// open_best, close_best, exchange_best, exchange_half_fixed, then
// open_random(1..4) and close_random(1..4).
ComponentPool paper_pool();

// Throws std::invalid_argument if two members share a name.
void validate_pool(const ComponentPool& pool);

// binom(pool_size, lambda) * lambda^(2 lambda): deterministic configurations
// with exactly lambda components. Throws std::invalid_argument unless
// 1 <= lambda <= pool_size.
BigInt count_feasible(int pool_size, int lambda);

// A deterministic configuration is meaningful when its transition graph
// (arc h -> h' iff succ or fail moves h to h') is strongly connected, at
// least one component exerts improvement pressure, at least one can worsen
// the solution, and no classic local search loops back to itself on failure.
// Throws std::invalid_argument for a non-deterministic configuration.
bool is_meaningful(const Configuration& config);

// Strong connectivity of a digraph given as adjacency bitmasks (node count
// at most 32).
bool strongly_connected(std::span<const std::uint32_t> adjacency);

// Calls `visit` for every meaningful configuration with exactly lambda
// components, in a fixed order: subsets in lexicographic order of pool
// indices, then (succ row 0, ..., succ row k-1, fail row 0, ...) as a
// counter with the first digit most significant. Returning false from
// `visit` stops the enumeration. Returns the number of configurations
// visited.
std::uint64_t for_each_meaningful(
    const ComponentPool& pool, int lambda,
    const std::function<bool(const Configuration&)>& visit);

std::vector<Configuration> enumerate_meaningful(const ComponentPool& pool,
                                                int lambda);

// How each meaningfulness condition trims the feasible set for one lambda.
struct MeaningfulBreakdown {
  int lambda = 0;
  BigInt feasible = 0;
  std::uint64_t subsets = 0;
  std::uint64_t subsets_without_pressure = 0;
  std::uint64_t subsets_without_worsening = 0;
  std::uint64_t subsets_kept = 0;
  // Over the kept subsets only.
  std::uint64_t matrices_considered = 0;
  std::uint64_t removed_by_fail_self_loop = 0;
  std::uint64_t removed_by_connectivity = 0;
  std::uint64_t meaningful = 0;
  // Kept subsets grouped by how many classic local searches they contain.
  std::map<int, std::uint64_t> kept_subsets_by_classic_count;
  std::map<int, std::uint64_t> meaningful_per_subset_by_classic_count;
};

MeaningfulBreakdown meaningful_breakdown(const ComponentPool& pool, int lambda);

// The three flags the meaningfulness conditions read from a component.
struct ComponentTraits {
  bool pressure = false;
  bool worsen = false;
  bool classic = false;
};

ComponentTraits traits_of(const ComponentSpec& spec);

// Same breakdown for a hypothetical pool described by traits only.
MeaningfulBreakdown meaningful_breakdown(std::span<const ComponentTraits> traits,
                                         int lambda);

// Human-readable report comparing enumerated counts with reference counts,
// broken down per meaningfulness condition.
std::string classification_report(const ComponentPool& pool,
                                   const std::map<int, std::uint64_t>& expected);

// ---------------------------------------------------------------------------
// Training set

struct TrainingParams {
  int count = 200;
  int n_min = 300;
  int n_max = 400;
  std::vector<KgClass> classes = {KgClass::kA, KgClass::kB, KgClass::kC};
  bool allow_symmetric = true;
  bool allow_asymmetric = true;
  double budget_ms = 500.0;
  ClockKind clock = ClockKind::kWork;

  // Throws std::invalid_argument for empty or inverted ranges.
  void validate() const;
};

// One (instance, initial solution, budget) triple. The instance is stored as
// generator parameters and built on demand.
struct TestCase {
  int id = 0;
  KgClass cls = KgClass::kA;
  int size = 0;  // m = n
  bool symmetric = false;
  std::uint64_t instance_seed = 0;
  std::vector<SiteIndex> initial;
  Budget budget;
  std::uint64_t seed = 0;

  Instance make_instance() const;
};

std::vector<TestCase> generate_training_set(const TrainingParams& params,
                                            std::uint64_t master_seed);

// ---------------------------------------------------------------------------
// Selection

struct EvaluationRecord {
  std::string config_id;
  int test_id = 0;
  Money value = 0;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;
};

// Seed for running configuration `config_hash` on test `test_id`.
std::uint64_t evaluation_seed(std::uint64_t master_seed,
                              const std::string& config_id, int test_id);

// Runs the configuration on the test from its initial solution.
EvaluationRecord evaluate(const Configuration& config, const Problem& problem,
                          const TestCase& test, std::uint64_t seed);

// values[c][t] is the objective of configuration c on test t. Removes every
// configuration that some other configuration beats strictly on each of the
// first seven tests and returns the remaining indices in input order.
// Throws std::invalid_argument if a row has fewer than seven values.
std::vector<std::size_t> stage1_filter(const std::vector<std::vector<Money>>& values);

// Per-test min-max normalisation over the rows, summed per row. A test on
// which every row agrees contributes 0.
std::vector<double> normalized_scores(const std::vector<std::vector<Money>>& values);

// Index of the row with the smallest normalised sum; ties go to the lowest
// index. Throws std::invalid_argument if empty or ragged.
std::size_t select_best(const std::vector<std::vector<Money>>& values);

// Append-only store of evaluation records, optionally backed by a
// tab-separated file "config_id, test_id, value, seed, elapsed_ms". Safe to
// call from several workers.
class RecordStore {
 public:
  RecordStore() = default;
  // Loads existing records from `path` (if present) and appends new ones.
  explicit RecordStore(std::filesystem::path path);

  std::optional<EvaluationRecord> find(const std::string& config_id,
                                       int test_id) const;
  void add(const EvaluationRecord& record);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::optional<std::filesystem::path> path_;
  std::map<std::pair<std::string, int>, EvaluationRecord> records_;
};

int default_thread_count();

// Runs fn(0..count-1) on up to `threads` workers and rethrows the first
// exception after all workers stop.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

struct TuneOptions {
  std::uint64_t master_seed = 1;
  int threads = 1;
  std::optional<std::filesystem::path> results_path;
  std::ostream* log = nullptr;
};

struct TuneResult {
  Configuration winner;
  std::size_t winner_index = 0;  // among survivors
  std::size_t enumerated = 0;
  std::vector<Configuration> survivors;
  std::vector<std::vector<Money>> survivor_values;  // [survivor][test]
  std::vector<double> survivor_scores;
  std::size_t evaluations_run = 0;
  std::size_t evaluations_reused = 0;
};

// Two-stage selection over the given candidates: every candidate runs the
// first seven tests, dominated ones are dropped, survivors run the rest and
// the best normalised sum wins. Throws std::invalid_argument if there are no
// candidates or fewer than seven tests.
TuneResult select_configuration(const std::vector<Configuration>& candidates,
                                const std::vector<TestCase>& tests,
                                const TuneOptions& options);

// Enumerates the meaningful configurations of size lambda and selects one.
TuneResult tune(const ComponentPool& pool, int lambda,
                const std::vector<TestCase>& tests, const TuneOptions& options);

}  // namespace splp

#endif  // SPLP_GENERATOR_H_
