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

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "splp/instance_io.h"
#include "splp/solution_io.h"

namespace splp::cli {

namespace {

namespace fs = std::filesystem;

// Unreadable or malformed input files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter values.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kTsv, kPretty };

struct Globals {
  std::uint64_t seed = 1;
  std::optional<int> threads;
  std::optional<double> budget_ms;
  Format format = Format::kTsv;
  ClockKind clock = ClockKind::kWork;

  int thread_count() const {
    if (std::getenv("CMCS_SPLP_THREADS") || !threads) return default_thread_count();
    return std::max(1, *threads);
  }
  Budget budget(double fallback_ms) const {
    const double ms = budget_ms.value_or(fallback_ms);
    if (!(ms > 0)) throw UsageError("budget must be positive");
    return Budget{ms, clock, std::nullopt};
  }
};

std::string number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc() ? std::string(buffer, end) : std::to_string(value);
}

std::string fixed3(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << value;
  return out.str();
}

// Tab-separated or column-aligned rendering of a header plus rows.
void print_table(std::ostream& out, Format format, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  if (format == Format::kTsv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "\t" : "") << cells[k];
      out << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
  for (const auto& row : rows)
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) text += "  ";
      text += k == 0 ? cells[k] + std::string(width[k] - cells[k].size(), ' ')
                     : std::string(width[k] - cells[k].size(), ' ') + cells[k];
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : rows) line(row);
}

Instance load_instance(const std::string& path) {
  try {
    return read_instance_file(path);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!(file << text)) throw DataError("cannot write " + path);
}

std::vector<fs::path> instance_files(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && !name.starts_with('.')) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.stem().string() < b.stem().string();
  });
  return files;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string item(text.substr(pos, end - pos));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    pos = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_solve(const Globals& g, const std::string& instance_path,
              const std::string& config_name, int restarts, const std::string& output,
              std::ostream& out, std::ostream& err) {
  if (restarts < 1) throw UsageError("restarts must be at least 1");
  const Budget budget = g.budget(1000);
  const Configuration config = load_configuration(config_name);
  const auto problem = make_problem(load_instance(instance_path));
  const SolveOutcome result = solve(config, *problem, budget, g.seed, restarts);
  write_text(output, write_solution(result.value, result.sites), out);
  err << "solve " << problem->instance.name() << ": value " << result.value
      << ", config " << (config.label.empty() ? config_id(config) : config.label)
      << ", budget_ms " << number(budget.ms) << " (" << to_string(budget.clock)
      << " clock), seed " << g.seed << ", restarts " << restarts << ", iterations "
      << result.iterations << ", elapsed_ms " << fixed3(result.elapsed_ms) << '\n';
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& instance_path,
               const std::string& solution_path, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(instance_path);
  SolutionRecord record;
  try {
    record = read_solution_file(solution_path);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  if (record.sites.empty()) throw DataError("solution opens no sites");
  for (SiteIndex s : record.sites) {
    if (s >= inst.num_sites()) {
      throw DataError("site index " + std::to_string(s + 1) + " out of range [1, " +
                      std::to_string(inst.num_sites()) + "]");
    }
  }
  const Money computed = objective(inst, record.sites);
  const bool match = computed == record.value;
  print_table(out, g.format, {"instance", "computed", "stated", "status"},
              {{inst.name(), std::to_string(computed), std::to_string(record.value),
                match ? "match" : "mismatch"}});
  if (!match) {
    err << "verify " << inst.name() << ": computed " << computed << " but stated "
        << record.value << '\n';
  }
  return match ? kExitOk : kExitMismatch;
}

int cmd_bench(const Globals& g, const std::string& dir, const std::string& config_name,
              const std::vector<double>& budgets_opt, const std::vector<std::uint64_t>& seeds_opt,
              const std::string& references_path, int restarts, std::ostream& out,
              std::ostream& err) {
  if (restarts < 1) throw UsageError("restarts must be at least 1");
  std::vector<Budget> budgets;
  if (budgets_opt.empty()) {
    budgets.push_back(g.budget(1000));
  } else {
    for (double ms : budgets_opt) {
      if (!(ms > 0)) throw UsageError("budget must be positive");
      budgets.push_back(Budget{ms, g.clock, std::nullopt});
    }
  }
  const std::vector<std::uint64_t> seeds =
      seeds_opt.empty() ? std::vector<std::uint64_t>{g.seed} : seeds_opt;
  const Configuration config = load_configuration(config_name);
  std::map<std::string, Money> references;
  if (!references_path.empty()) references = read_references(references_path);

  std::vector<std::shared_ptr<const Problem>> problems;
  for (const auto& file : instance_files(dir)) problems.push_back(make_problem(load_instance(file)));
  if (problems.empty()) throw DataError("no instance files in " + dir);

  struct Job {
    std::size_t problem;
    std::size_t budget;
    std::size_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (std::size_t b = 0; b < budgets.size(); ++b)
      for (std::size_t s = 0; s < seeds.size(); ++s) jobs.push_back({p, b, s});

  std::vector<BenchRow> rows(jobs.size());
  parallel_for(jobs.size(), g.thread_count(), [&](std::size_t k) {
    const Job& job = jobs[k];
    const Problem& problem = *problems[job.problem];
    const SolveOutcome r = solve(config, problem, budgets[job.budget], seeds[job.seed], restarts);
    BenchRow& row = rows[k];
    row.instance = problem.instance.name();
    row.budget_ms = budgets[job.budget].ms;
    row.seed = seeds[job.seed];
    row.value = r.value;
    row.elapsed_ms = r.elapsed_ms;
    if (auto it = references.find(row.instance); it != references.end()) row.reference = it->second;
  });

  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    cells.push_back({row.instance, number(row.budget_ms), std::to_string(row.seed),
                     std::to_string(row.value),
                     row.reference ? std::to_string(*row.reference) : "n/a",
                     row.reference ? std::to_string(row.value - *row.reference) : "n/a",
                     fixed3(row.elapsed_ms)});
  }
  print_table(out, g.format,
              {"instance", "budget_ms", "seed", "value", "reference", "difference", "elapsed_ms"},
              cells);
  const BenchCounts counts = count_outcomes(rows);
  if (g.format == Format::kTsv) {
    out << "# improved " << counts.improved << " same " << counts.same << " worse "
        << counts.worse << '\n';
  } else {
    out << "\nImproved  " << counts.improved << "\nSame      " << counts.same
        << "\nWorse     " << counts.worse << '\n';
  }
  err << "bench: " << rows.size() << " runs (" << to_string(g.clock) << " clock, restarts "
      << restarts << ")\n";
  return kExitOk;
}

struct TuneArgs {
  std::string pool = "paper";
  int lambda = 2;
  int tests = 200;
  int n_min = 300;
  int n_max = 400;
  std::string classes = "abc";
  std::string output;
  std::string log_path;
  std::string results_path;
};

int cmd_tune(const Globals& g, const TuneArgs& a, std::ostream& out, std::ostream& err) {
  const ComponentPool pool = parse_pool(a.pool);
  if (a.lambda < 1 || a.lambda > static_cast<int>(pool.size())) {
    throw UsageError("lambda must be between 1 and the pool size");
  }
  TrainingParams params;
  params.count = a.tests;
  params.n_min = a.n_min;
  params.n_max = a.n_max;
  params.classes.clear();
  for (char c : a.classes) params.classes.push_back(parse_kg_class(std::string(1, c)));
  const Budget budget = g.budget(500);
  params.budget_ms = budget.ms;
  params.clock = budget.clock;
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (params.count < 7) throw UsageError("the training set needs at least seven tests");

  std::ostringstream log;
  log << "tune: pool " << a.pool << " (" << pool.size() << " components), lambda " << a.lambda
      << ", " << params.count << " tests, n in [" << params.n_min << ", " << params.n_max
      << "], budget_ms " << number(params.budget_ms) << " (" << to_string(params.clock)
      << " clock), master seed " << g.seed << ", threads " << g.thread_count() << '\n';
  const auto tests = generate_training_set(params, g.seed);
  TuneOptions options;
  options.master_seed = g.seed;
  options.threads = g.thread_count();
  if (!a.results_path.empty()) options.results_path = a.results_path;
  options.log = &log;
  TuneResult result;
  try {
    result = tune(pool, a.lambda, tests, options);
  } catch (const std::invalid_argument& e) {
    err << log.str();
    throw UsageError(e.what());
  }
  log << "evaluations: " << result.evaluations_run << " run, " << result.evaluations_reused
      << " reused\n";
  Configuration winner = result.winner;
  winner.label = "tuned";
  std::string text = "# tuned: lambda " + std::to_string(a.lambda) + ", master seed " +
                     std::to_string(g.seed) + ", id " + config_id(winner) + '\n';
  text += write_config(winner);
  write_text(a.output, text, out);
  err << log.str();
  if (!a.log_path.empty()) write_text(a.log_path, log.str(), out);
  return kExitOk;
}

int cmd_generate(const Globals& g, const std::string& cls, int m, int n, bool symmetric,
                 const std::string& output, std::ostream& out, std::ostream& err) {
  if (m < 2 || n < 1) throw UsageError("need m >= 2 and n >= 1");
  Instance inst;
  try {
    inst = generate_kg_instance(parse_kg_class(cls), m, n, symmetric, g.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string path = output.empty() ? inst.name() + ".splp" : output;
  write_text(path, write_instance(inst), out);
  if (path != "-") err << "generate: wrote " << path << '\n';
  return kExitOk;
}

int cmd_enumerate(const Globals& g, const std::string& pool_spec, int lambda, bool count_only,
                  bool report, std::ostream& out, std::ostream& err) {
  const ComponentPool pool = parse_pool(pool_spec);
  if (lambda < 1 || lambda > static_cast<int>(pool.size())) {
    throw UsageError("lambda must be between 1 and the pool size");
  }
  const BigInt feasible = count_feasible(static_cast<int>(pool.size()), lambda);
  if (count_only) {
    const auto b = meaningful_breakdown(pool, lambda);
    out << "feasible " << feasible.str() << ", meaningful " << b.meaningful << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    for_each_meaningful(pool, lambda, [&](const Configuration& c) {
      std::string names, succ, fail;
      for (int h = 0; h < c.size(); ++h) {
        names += (h ? "," : "") + c.components[h].name();
        succ += (h ? " " : "") + std::to_string(c.next_succ(h) + 1);
        fail += (h ? " " : "") + std::to_string(c.next_fail(h) + 1);
      }
      rows.push_back({std::to_string(rows.size() + 1), config_id(c), names, succ, fail});
      return true;
    });
    print_table(out, g.format, {"index", "config_id", "components", "succ", "fail"}, rows);
    err << "feasible " << feasible.str() << ", meaningful " << rows.size() << '\n';
  }
  if (report) {
    std::map<int, std::uint64_t> expected;
    if (pool_spec == "paper" && (lambda == 2 || lambda == 3)) {
      expected[lambda] = lambda == 2 ? 216 : 43326;
    } else {
      expected[lambda] = meaningful_breakdown(pool, lambda).meaningful;
    }
    err << classification_report(pool, expected);
  }
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------

Configuration load_configuration(const std::string& name_or_path) {
  if (name_or_path == "paper-2" || name_or_path == "paper-3") return preset(name_or_path);
  try {
    Configuration c = parse_config(read_text_file(name_or_path));
    c.label = fs::path(name_or_path).stem().string();
    return c;
  } catch (const std::exception& e) {
    throw DataError(name_or_path + ": " + e.what());
  }
}

ComponentPool parse_pool(std::string_view spec) {
  if (spec == "paper") return paper_pool();
  ComponentPool pool;
  try {
    for (const auto& name : split_list(spec)) pool.push_back(ComponentSpec::parse(name));
    validate_pool(pool);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("pool: ") + e.what());
  }
  if (pool.empty()) throw UsageError("pool: no components");
  return pool;
}

std::map<std::string, Money> read_references(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  std::map<std::string, Money> refs;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string name, value;
    std::getline(fields, name, '\t');
    std::getline(fields, value, '\t');
    Money v = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || end != value.data() + value.size()) {
      if (number == 1) continue;  // header
      throw DataError(path + ": line " + std::to_string(number) + ": bad reference value");
    }
    refs[name] = v;
  }
  return refs;
}

BenchCounts count_outcomes(const std::vector<BenchRow>& rows) {
  BenchCounts counts;
  for (const auto& row : rows) {
    if (!row.reference) continue;
    if (row.value < *row.reference) {
      ++counts.improved;
    } else if (row.value == *row.reference) {
      ++counts.same;
    } else {
      ++counts.worse;
    }
  }
  return counts;
}

SolveOutcome solve(const Configuration& config, const Problem& problem, const Budget& budget,
                   std::uint64_t seed, int restarts) {
  SolveOutcome best;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const auto initial = random_initial_sites(problem.instance.num_sites(), rng);
    const RunResult run = run_cmcs(config, problem, initial, budget, rng);
    best.iterations += run.iterations;
    best.elapsed_ms += run.elapsed_ms;
    if (r == 0 || run.best_value < best.value) {
      best.value = run.best_value;
      const auto opened = run.best_solution->opened();
      best.sites.assign(opened.begin(), opened.end());
    }
  }
  return best;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simple Plant Location Problem solver and CMCS configuration generator", "splp"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string format = "tsv", clock = "work";
  app.add_option("--seed", g.seed, "Random seed (master seed for tune)");
  app.add_option("--threads", g.threads, "Worker threads (CMCS_SPLP_THREADS overrides)");
  app.add_option("--budget-ms", g.budget_ms, "Time budget per run in milliseconds");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "pretty"}));
  app.add_option("--clock", clock, "Budget clock: work (reproducible) or wall")
      ->check(CLI::IsMember({"work", "wall"}));

  std::string instance_path, solution_path, config_name = "paper-3", output, dir, references;
  int restarts = 1;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance with a CMCS configuration");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required();
  solve_cmd->add_option("--config", config_name, "Preset name or configuration file");
  solve_cmd->add_option("--restarts", restarts, "Independent restarts");
  solve_cmd->add_option("-o,--output", output, "Solution file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Recompute the objective of a solution file");
  verify_cmd->add_option("instance", instance_path, "Instance file")->required();
  verify_cmd->add_option("solution", solution_path, "Solution file")->required();

  std::vector<double> budgets;
  std::vector<std::uint64_t> seeds;
  auto* bench_cmd = app.add_subcommand("bench", "Solve every instance in a directory");
  bench_cmd->add_option("dir", dir, "Instance directory")->required();
  bench_cmd->add_option("--config", config_name, "Preset name or configuration file");
  bench_cmd->add_option("--budgets", budgets, "Budgets in ms (default --budget-ms)")
      ->delimiter(',');
  bench_cmd->add_option("--seeds", seeds, "Seeds (default --seed)")->delimiter(',');
  bench_cmd->add_option("--references", references, "Reference values file");
  bench_cmd->add_option("--restarts", restarts, "Independent restarts per run");

  TuneArgs tune_args;
  auto* tune_cmd = app.add_subcommand("tune", "Enumerate and select the best configuration");
  tune_cmd->add_option("--pool", tune_args.pool, "'paper' or comma-separated component names");
  tune_cmd->add_option("--lambda", tune_args.lambda, "Number of components")->required();
  tune_cmd->add_option("--tests", tune_args.tests, "Training tests");
  tune_cmd->add_option("--n-min", tune_args.n_min, "Smallest instance size");
  tune_cmd->add_option("--n-max", tune_args.n_max, "Largest instance size");
  tune_cmd->add_option("--classes", tune_args.classes, "Instance classes, e.g. abc");
  tune_cmd->add_option("-o,--output", tune_args.output, "Configuration file (default stdout)");
  tune_cmd->add_option("--log", tune_args.log_path, "Log file");
  tune_cmd->add_option("--results", tune_args.results_path, "Evaluation records (resumable)");

  std::string cls = "a";
  int m = 0, n = 0;
  bool symmetric = false;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a KG-style instance");
  generate_cmd->add_option("--class", cls, "Instance class a, b or c")->required();
  generate_cmd->add_option("--m", m, "Sites")->required();
  generate_cmd->add_option("--n", n, "Clients")->required();
  generate_cmd->add_flag("--symmetric", symmetric, "Symmetric costs (needs m == n)");
  generate_cmd->add_option("-o,--output", output, "Output file (default <name>.splp, - for stdout)");

  std::string pool_spec = "paper";
  int lambda = 2;
  bool count_only = false, report = false;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate meaningful configurations");
  enumerate_cmd->add_option("--pool", pool_spec, "'paper' or comma-separated component names");
  enumerate_cmd->add_option("--lambda", lambda, "Number of components")->required();
  enumerate_cmd->add_flag("--count-only", count_only, "Print counts only");
  enumerate_cmd->add_flag("--report", report, "Print the per-condition breakdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  g.format = format == "pretty" ? Format::kPretty : Format::kTsv;
  g.clock = parse_clock(clock);

  try {
    if (*solve_cmd) return cmd_solve(g, instance_path, config_name, restarts, output, out, err);
    if (*verify_cmd) return cmd_verify(g, instance_path, solution_path, out, err);
    if (*bench_cmd) {
      return cmd_bench(g, dir, config_name, budgets, seeds, references, restarts, out, err);
    }
    if (*tune_cmd) return cmd_tune(g, tune_args, out, err);
    if (*generate_cmd) return cmd_generate(g, cls, m, n, symmetric, output, out, err);
    if (*enumerate_cmd) return cmd_enumerate(g, pool_spec, lambda, count_only, report, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace splp::cli
