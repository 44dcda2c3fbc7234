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

#include "splp/generator.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace splp {

namespace {

constexpr int kStageOneTests = 7;

using Traits = ComponentTraits;

// Visits every subset of {0..n-1} of size k in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  while (true) {
    if (!fn(subset)) return;
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

// Walks every (succ, fail) successor assignment for k components as a 2k-digit
// base-k counter, first digit most significant. fn returns false to stop.
template <typename Fn>
bool for_each_assignment(int k, Fn&& fn) {
  std::vector<int> digits(2 * k, 0);
  while (true) {
    if (!fn(std::span<const int>(digits.data(), k),
            std::span<const int>(digits.data() + k, k))) {
      return false;
    }
    int d = 2 * k - 1;
    while (d >= 0 && digits[d] == k - 1) {
      digits[d] = 0;
      --d;
    }
    if (d < 0) return true;
    ++digits[d];
  }
}

bool has_fail_self_loop(std::span<const Traits> traits, std::span<const int> fail) {
  for (std::size_t h = 0; h < traits.size(); ++h) {
    if (traits[h].classic && fail[h] == static_cast<int>(h)) return true;
  }
  return false;
}

bool connected(std::span<const int> succ, std::span<const int> fail) {
  std::uint32_t adjacency[32];
  for (std::size_t h = 0; h < succ.size(); ++h) {
    adjacency[h] = (1u << succ[h]) | (1u << fail[h]);
  }
  return strongly_connected(std::span<const std::uint32_t>(adjacency, succ.size()));
}

MeaningfulBreakdown breakdown_from_traits(std::span<const Traits> pool, int lambda) {
  if (lambda < 1 || lambda > static_cast<int>(pool.size())) {
    throw std::invalid_argument("lambda out of range");
  }
  MeaningfulBreakdown b;
  b.lambda = lambda;
  b.feasible = count_feasible(static_cast<int>(pool.size()), lambda);
  std::vector<Traits> chosen(lambda);
  for_each_subset(static_cast<int>(pool.size()), lambda, [&](const std::vector<int>& subset) {
    ++b.subsets;
    for (int h = 0; h < lambda; ++h) chosen[h] = pool[subset[h]];
    const bool pressure = std::ranges::any_of(chosen, &Traits::pressure);
    const bool worsen = std::ranges::any_of(chosen, &Traits::worsen);
    if (!pressure) ++b.subsets_without_pressure;
    if (!worsen) ++b.subsets_without_worsening;
    if (!pressure || !worsen) return true;
    ++b.subsets_kept;
    const int classic =
        static_cast<int>(std::ranges::count_if(chosen, &Traits::classic));
    ++b.kept_subsets_by_classic_count[classic];
    std::uint64_t kept = 0;
    for_each_assignment(lambda, [&](std::span<const int> succ, std::span<const int> fail) {
      ++b.matrices_considered;
      if (has_fail_self_loop(chosen, fail)) {
        ++b.removed_by_fail_self_loop;
      } else if (!connected(succ, fail)) {
        ++b.removed_by_connectivity;
      } else {
        ++kept;
      }
      return true;
    });
    b.meaningful += kept;
    b.meaningful_per_subset_by_classic_count[classic] = kept;
    return true;
  });
  return b;
}

std::string to_text(const BigInt& value) { return value.str(); }

}  // namespace

ComponentTraits traits_of(const ComponentSpec& spec) {
  return {spec.improvement_pressure(), spec.can_worsen(),
          spec.classic_deterministic_ls()};
}

MeaningfulBreakdown meaningful_breakdown(std::span<const ComponentTraits> traits,
                                         int lambda) {
  return breakdown_from_traits(traits, lambda);
}

ComponentPool paper_pool() {
  ComponentPool pool = {ComponentSpec::open_best(), ComponentSpec::close_best(),
                        ComponentSpec::exchange_best(),
                        ComponentSpec::exchange_half_fixed()};
  for (int k = 1; k <= 4; ++k) pool.push_back(ComponentSpec::open_random(k));
  for (int k = 1; k <= 4; ++k) pool.push_back(ComponentSpec::close_random(k));
  return pool;
}

void validate_pool(const ComponentPool& pool) {
  std::set<std::string> names;
  for (const auto& spec : pool) {
    if (!names.insert(spec.name()).second) {
      throw std::invalid_argument("duplicate pool component " + spec.name());
    }
  }
  if (pool.size() > 32) throw std::invalid_argument("pool too large");
}

BigInt count_feasible(int pool_size, int lambda) {
  if (lambda < 1 || lambda > pool_size) {
    throw std::invalid_argument("lambda must be in [1, pool size]");
  }
  BigInt binom = 1;
  for (int i = 0; i < lambda; ++i) {
    binom *= pool_size - i;
    binom /= i + 1;
  }
  BigInt power = 1;
  for (int i = 0; i < 2 * lambda; ++i) power *= lambda;
  return binom * power;
}

bool strongly_connected(std::span<const std::uint32_t> adjacency) {
  const std::size_t n = adjacency.size();
  if (n == 0 || n > 32) return false;
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
  // Forward and backward reachability from node 0.
  auto closure = [&](bool reverse) {
    std::uint32_t seen = 1u, frontier = 1u;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (!reverse) {
          if (frontier & (1u << v)) next |= adjacency[v];
        } else if (adjacency[v] & frontier) {
          next |= 1u << v;
        }
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen & all;
  };
  return closure(false) == all && closure(true) == all;
}

bool is_meaningful(const Configuration& config) {
  config.validate();
  if (!config.is_deterministic()) {
    throw std::invalid_argument("is_meaningful: configuration is not deterministic");
  }
  const int k = config.size();
  if (k > 32) return false;
  std::vector<int> succ(k), fail(k);
  std::vector<Traits> traits(k);
  for (int h = 0; h < k; ++h) {
    succ[h] = config.next_succ(h);
    fail[h] = config.next_fail(h);
    traits[h] = traits_of(config.components[h]);
  }
  return std::ranges::any_of(traits, &Traits::pressure) &&
         std::ranges::any_of(traits, &Traits::worsen) &&
         !has_fail_self_loop(traits, fail) && connected(succ, fail);
}

std::uint64_t for_each_meaningful(
    const ComponentPool& pool, int lambda,
    const std::function<bool(const Configuration&)>& visit) {
  validate_pool(pool);
  if (lambda < 1 || lambda > static_cast<int>(pool.size())) {
    throw std::invalid_argument("lambda must be in [1, pool size]");
  }
  std::uint64_t visited = 0;
  std::vector<Traits> traits(lambda);
  std::vector<ComponentSpec> components;
  bool keep_going = true;
  for_each_subset(static_cast<int>(pool.size()), lambda, [&](const std::vector<int>& subset) {
    components.clear();
    for (int h = 0; h < lambda; ++h) {
      components.push_back(pool[subset[h]]);
      traits[h] = traits_of(pool[subset[h]]);
    }
    if (!std::ranges::any_of(traits, &Traits::pressure) ||
        !std::ranges::any_of(traits, &Traits::worsen)) {
      return true;
    }
    keep_going = for_each_assignment(lambda, [&](std::span<const int> succ,
                                                 std::span<const int> fail) {
      if (has_fail_self_loop(traits, fail) || !connected(succ, fail)) return true;
      ++visited;
      return visit(Configuration::deterministic(components, succ, fail));
    });
    return keep_going;
  });
  return visited;
}

std::vector<Configuration> enumerate_meaningful(const ComponentPool& pool, int lambda) {
  std::vector<Configuration> out;
  for_each_meaningful(pool, lambda, [&](const Configuration& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

MeaningfulBreakdown meaningful_breakdown(const ComponentPool& pool, int lambda) {
  validate_pool(pool);
  std::vector<Traits> traits;
  for (const auto& spec : pool) traits.push_back(traits_of(spec));
  return breakdown_from_traits(traits, lambda);
}

std::string classification_report(const ComponentPool& pool,
                                   const std::map<int, std::uint64_t>& expected) {
  std::ostringstream out;
  out << "classification-diff report\n";
  out << "pool (" << pool.size() << " components):\n";
  for (const auto& spec : pool) {
    out << "  " << std::left << std::setw(20) << spec.name()
        << " improvement_pressure=" << spec.improvement_pressure()
        << " can_worsen=" << spec.can_worsen()
        << " classic_ls=" << spec.classic_deterministic_ls() << '\n';
  }
  for (const auto& [lambda, reference] : expected) {
    const MeaningfulBreakdown b = meaningful_breakdown(pool, lambda);
    const auto delta = static_cast<long long>(reference) - static_cast<long long>(b.meaningful);
    out << "lambda=" << lambda << '\n'
        << "  feasible configurations:            " << to_text(b.feasible) << '\n'
        << "  subsets:                            " << b.subsets << '\n'
        << "  (b) subsets without pressure:       " << b.subsets_without_pressure << '\n'
        << "  (c) subsets without worsening:      " << b.subsets_without_worsening << '\n'
        << "  subsets kept:                       " << b.subsets_kept << '\n'
        << "  matrices over kept subsets:         " << b.matrices_considered << '\n'
        << "  (d) removed by fail self-loop:      " << b.removed_by_fail_self_loop << '\n'
        << "  (a) removed by connectivity:        " << b.removed_by_connectivity << '\n'
        << "  meaningful (enumerated):            " << b.meaningful << '\n'
        << "  meaningful (reference):             " << reference << '\n'
        << "  delta (reference - enumerated):     " << delta << '\n';
    for (const auto& [classic, subsets] : b.kept_subsets_by_classic_count) {
      out << "    kept subsets with " << classic << " classic LS: " << subsets
          << " x " << b.meaningful_per_subset_by_classic_count.at(classic)
          << " meaningful each\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------

void TrainingParams::validate() const {
  if (count < 1) throw std::invalid_argument("training set needs at least one test");
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("invalid size range");
  if (classes.empty()) throw std::invalid_argument("no instance classes");
  if (!allow_symmetric && !allow_asymmetric) {
    throw std::invalid_argument("neither symmetric nor asymmetric instances allowed");
  }
  if (!(budget_ms > 0)) throw std::invalid_argument("budget must be positive");
}

Instance TestCase::make_instance() const {
  Instance inst = generate_kg_instance(cls, size, size, symmetric, instance_seed);
  inst.set_name("test-" + std::to_string(id));
  return inst;
}

std::vector<TestCase> generate_training_set(const TrainingParams& params,
                                            std::uint64_t master_seed) {
  params.validate();
  Rng rng(master_seed);
  std::vector<TestCase> tests;
  tests.reserve(params.count);
  for (int t = 0; t < params.count; ++t) {
    TestCase test;
    test.id = t;
    test.size = static_cast<int>(rng.between(params.n_min, params.n_max));
    test.cls = params.classes[rng.below(params.classes.size())];
    if (params.allow_symmetric && params.allow_asymmetric) {
      test.symmetric = rng.below(2) == 1;
    } else {
      test.symmetric = params.allow_symmetric;
    }
    test.instance_seed = rng.next();
    test.initial = random_initial_sites(test.size, rng);
    test.budget = Budget{params.budget_ms, params.clock, std::nullopt};
    test.seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
    tests.push_back(std::move(test));
  }
  return tests;
}

// ---------------------------------------------------------------------------

std::uint64_t evaluation_seed(std::uint64_t master_seed, const std::string& config_id,
                              int test_id) {
  const std::uint64_t config_hash = std::stoull(config_id, nullptr, 16);
  return derive_seed(master_seed, config_hash, static_cast<std::uint64_t>(test_id));
}

EvaluationRecord evaluate(const Configuration& config, const Problem& problem,
                          const TestCase& test, std::uint64_t seed) {
  Rng rng(seed);
  const RunResult run = run_cmcs(config, problem, test.initial, test.budget, rng);
  return {config_id(config), test.id, run.best_value, seed, run.elapsed_ms};
}

std::vector<std::size_t> stage1_filter(const std::vector<std::vector<Money>>& values) {
  for (const auto& row : values) {
    if (row.size() < kStageOneTests) {
      throw std::invalid_argument("stage 1 needs results on seven tests");
    }
  }
  // Strict domination on every coordinate is transitive, so a row is
  // dominated iff a non-dominated row dominates it. Any dominator has a
  // strictly smaller sum, hence scanning by ascending sum sees it first.
  std::vector<Money> sums(values.size(), 0);
  for (std::size_t c = 0; c < values.size(); ++c) {
    for (int t = 0; t < kStageOneTests; ++t) sums[c] += values[c][t];
  }
  std::vector<std::size_t> order(values.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });
  auto dominates = [&](std::size_t a, std::size_t b) {
    for (int t = 0; t < kStageOneTests; ++t) {
      if (!(values[a][t] < values[b][t])) return false;
    }
    return true;
  };
  std::vector<std::size_t> kept;
  for (std::size_t c : order) {
    bool dominated = false;
    for (std::size_t s : kept) {
      if (dominates(s, c)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<double> normalized_scores(const std::vector<std::vector<Money>>& values) {
  if (values.empty()) return {};
  const std::size_t tests = values.front().size();
  for (const auto& row : values) {
    if (row.size() != tests) throw std::invalid_argument("ragged evaluation table");
  }
  std::vector<double> scores(values.size(), 0.0);
  for (std::size_t t = 0; t < tests; ++t) {
    Money lo = values[0][t], hi = values[0][t];
    for (const auto& row : values) {
      lo = std::min(lo, row[t]);
      hi = std::max(hi, row[t]);
    }
    if (lo == hi) continue;
    const double range = static_cast<double>(hi - lo);
    for (std::size_t c = 0; c < values.size(); ++c) {
      scores[c] += static_cast<double>(values[c][t] - lo) / range;
    }
  }
  return scores;
}

std::size_t select_best(const std::vector<std::vector<Money>>& values) {
  if (values.empty()) throw std::invalid_argument("select_best: no candidates");
  const auto scores = normalized_scores(values);
  return static_cast<std::size_t>(
      std::min_element(scores.begin(), scores.end()) - scores.begin());
}

// ---------------------------------------------------------------------------

RecordStore::RecordStore(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_);
  if (!in) return;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line.rfind("config_id", 0) == 0) continue;
    std::istringstream fields(line);
    EvaluationRecord r;
    if (!(fields >> r.config_id >> r.test_id >> r.value >> r.seed >> r.elapsed_ms)) {
      // A torn final line from an interrupted run is dropped.
      continue;
    }
    records_[{r.config_id, r.test_id}] = r;
  }
}

std::optional<EvaluationRecord> RecordStore::find(const std::string& config_id,
                                                  int test_id) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find({config_id, test_id});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void RecordStore::add(const EvaluationRecord& record) {
  std::lock_guard lock(mutex_);
  records_[{record.config_id, record.test_id}] = record;
  if (!path_) return;
  const bool fresh = !std::filesystem::exists(*path_) ||
                     std::filesystem::file_size(*path_) == 0;
  std::ofstream out(*path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + path_->string());
  if (fresh) out << "config_id\ttest_id\tvalue\tseed\telapsed_ms\n";
  out << record.config_id << '\t' << record.test_id << '\t' << record.value
      << '\t' << record.seed << '\t' << std::fixed << std::setprecision(3)
      << record.elapsed_ms << '\n';
  out.flush();
}

std::size_t RecordStore::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

int default_thread_count() {
  if (const char* env = std::getenv("CMCS_SPLP_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (!failed.load()) {
          const std::size_t k = next.fetch_add(1);
          if (k >= count) return;
          try {
            fn(k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

TuneResult select_configuration(const std::vector<Configuration>& candidates,
                                const std::vector<TestCase>& tests,
                                const TuneOptions& options) {
  if (candidates.empty()) throw std::invalid_argument("no meaningful configurations");
  if (tests.size() < kStageOneTests) {
    throw std::invalid_argument("the training set needs at least seven tests");
  }
  RecordStore store = options.results_path ? RecordStore(*options.results_path)
                                           : RecordStore();
  std::vector<std::string> ids;
  ids.reserve(candidates.size());
  for (const auto& c : candidates) ids.push_back(config_id(c));

  TuneResult result;
  result.enumerated = candidates.size();
  std::atomic<std::size_t> ran{0}, reused{0};

  // Runs the selected candidates on one test, all in parallel.
  auto run_test = [&](const TestCase& test, const std::vector<std::size_t>& which,
                      std::vector<std::vector<Money>>& table, std::size_t column) {
    const auto problem = make_problem(test.make_instance());
    parallel_for(which.size(), options.threads, [&](std::size_t k) {
      const std::size_t c = which[k];
      const std::uint64_t seed = evaluation_seed(options.master_seed, ids[c], test.id);
      auto record = store.find(ids[c], test.id);
      if (record && record->seed == seed) {
        ++reused;
      } else {
        record = evaluate(candidates[c], *problem, test, seed);
        store.add(*record);
        ++ran;
      }
      table[k][column] = record->value;
    });
  };

  std::vector<std::size_t> everyone(candidates.size());
  for (std::size_t c = 0; c < everyone.size(); ++c) everyone[c] = c;
  std::vector<std::vector<Money>> first(candidates.size(),
                                        std::vector<Money>(kStageOneTests));
  for (int t = 0; t < kStageOneTests; ++t) run_test(tests[t], everyone, first, t);

  const std::vector<std::size_t> kept = stage1_filter(first);
  if (options.log) {
    *options.log << "stage 1: " << candidates.size() << " configurations, "
                 << kept.size() << " survive\n";
  }

  std::vector<std::vector<Money>> values(kept.size(), std::vector<Money>(tests.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    for (int t = 0; t < kStageOneTests; ++t) values[k][t] = first[kept[k]][t];
  }
  for (std::size_t t = kStageOneTests; t < tests.size(); ++t) {
    run_test(tests[t], kept, values, t);
  }

  result.survivor_scores = normalized_scores(values);
  result.winner_index = select_best(values);
  for (std::size_t c : kept) result.survivors.push_back(candidates[c]);
  result.survivor_values = std::move(values);
  result.winner = result.survivors[result.winner_index];
  result.evaluations_run = ran;
  result.evaluations_reused = reused;
  if (options.log) {
    *options.log << "stage 2: " << kept.size() << " configurations on "
                 << tests.size() << " tests, winner " << config_id(result.winner)
                 << " score " << result.survivor_scores[result.winner_index] << '\n';
  }
  return result;
}

TuneResult tune(const ComponentPool& pool, int lambda,
                const std::vector<TestCase>& tests, const TuneOptions& options) {
  auto candidates = enumerate_meaningful(pool, lambda);
  if (options.log) {
    *options.log << "lambda " << lambda << ": feasible "
                 << count_feasible(static_cast<int>(pool.size()), lambda).str()
                 << ", meaningful " << candidates.size() << '\n';
  }
  if (candidates.empty()) throw std::invalid_argument("no meaningful configurations");
  return select_configuration(candidates, tests, options);
}

}  // namespace splp
