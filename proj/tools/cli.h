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

#ifndef SPLP_TOOLS_CLI_H_
#define SPLP_TOOLS_CLI_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "splp/cmcs.h"
#include "splp/generator.h"

namespace splp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitMismatch = 3,
};

// Runs the splp command line. Primary output goes to `out`; diagnostics,
// summaries and timings go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A preset name ("paper-2", "paper-3") or a configuration file path.
Configuration load_configuration(const std::string& name_or_path);

// "paper" or a comma-separated list of component names.
ComponentPool parse_pool(std::string_view spec);

// Reference file: "name<TAB>value[<TAB>...]" lines; '#' comments and a
// non-numeric header line are skipped.
std::map<std::string, Money> read_references(const std::string& path);

struct BenchRow {
  std::string instance;
  double budget_ms = 0;
  std::uint64_t seed = 0;
  Money value = 0;
  std::optional<Money> reference;
  double elapsed_ms = 0;
};

struct BenchCounts {
  int improved = 0;
  int same = 0;
  int worse = 0;
};

BenchCounts count_outcomes(const std::vector<BenchRow>& rows);

// Best of `restarts` runs from random initial solutions; restart r uses the
// rng seeded with derive_seed(seed, r).
struct SolveOutcome {
  Money value = 0;
  std::vector<SiteIndex> sites;
  std::uint64_t iterations = 0;
  double elapsed_ms = 0;
};

SolveOutcome solve(const Configuration& config, const Problem& problem,
                   const Budget& budget, std::uint64_t seed, int restarts);

}  // namespace splp::cli

#endif  // SPLP_TOOLS_CLI_H_
