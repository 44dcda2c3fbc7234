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

#include "splp/cmcs.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace splp {

namespace {

constexpr double kRowTolerance = 1e-9;

std::string row_name(const char* matrix, int row) {
  return std::string(matrix) + " row " + std::to_string(row + 1);
}

void validate_matrix(const std::vector<std::vector<double>>& matrix,
                     const char* which, int size) {
  if (static_cast<int>(matrix.size()) != size) {
    throw std::invalid_argument(std::string(which) + " matrix has " +
                                std::to_string(matrix.size()) +
                                " rows, expected " + std::to_string(size));
  }
  for (int h = 0; h < size; ++h) {
    const auto& row = matrix[h];
    if (static_cast<int>(row.size()) != size) {
      throw std::invalid_argument(row_name(which, h) + " has " +
                                  std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(size));
    }
    double sum = 0;
    for (double p : row) {
      if (!(p >= 0) || !std::isfinite(p)) {
        throw std::invalid_argument(row_name(which, h) +
                                    " has a negative or non-finite entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.12g", sum);
      throw std::invalid_argument(row_name(which, h) + " sums to " + buffer +
                                  ", expected 1");
    }
  }
}

bool unit_rows(const std::vector<std::vector<double>>& matrix) {
  return std::ranges::all_of(matrix, [](const std::vector<double>& row) {
    int ones = 0;
    for (double p : row) {
      if (p == 1.0) {
        ++ones;
      } else if (p != 0.0) {
        return false;
      }
    }
    return ones == 1;
  });
}

int unit_column(const std::vector<double>& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == 1.0) return static_cast<int>(k);
  }
  throw std::logic_error("row is not deterministic");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    parts.push_back(trim(s.substr(start, end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string format_probability(double p) {
  if (p == 0.0) return "0";
  if (p == 1.0) return "1";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, p);
  return std::string(buffer, ptr);
}

}  // namespace

bool Configuration::is_deterministic() const {
  return unit_rows(succ) && unit_rows(fail);
}

void Configuration::validate() const {
  if (components.empty()) {
    throw std::invalid_argument("configuration has no components");
  }
  validate_matrix(succ, "succ", size());
  validate_matrix(fail, "fail", size());
}

int Configuration::next_succ(int h) const { return unit_column(succ[h]); }
int Configuration::next_fail(int h) const { return unit_column(fail[h]); }

Configuration Configuration::deterministic(std::vector<ComponentSpec> components,
                                           std::span<const int> succ_next,
                                           std::span<const int> fail_next,
                                           std::string label) {
  const std::size_t k = components.size();
  if (succ_next.size() != k || fail_next.size() != k) {
    throw std::invalid_argument("successor tables must have one entry per component");
  }
  Configuration config;
  config.components = std::move(components);
  config.succ.assign(k, std::vector<double>(k, 0.0));
  config.fail.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t h = 0; h < k; ++h) {
    if (succ_next[h] < 0 || static_cast<std::size_t>(succ_next[h]) >= k ||
        fail_next[h] < 0 || static_cast<std::size_t>(fail_next[h]) >= k) {
      throw std::invalid_argument("successor index out of range");
    }
    config.succ[h][succ_next[h]] = 1.0;
    config.fail[h][fail_next[h]] = 1.0;
  }
  config.label = std::move(label);
  return config;
}

int roulette_wheel(std::span<const double> row, RandomSource& rng) {
  int nonzero = 0;
  int last = -1;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] > 0) {
      ++nonzero;
      last = static_cast<int>(k);
    }
  }
  if (nonzero == 1) return last;
  if (nonzero == 0) throw std::invalid_argument("transition row has no mass");
  const double u = rng.unit();
  double cumulative = 0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    cumulative += row[k];
    if (row[k] > 0 && u < cumulative) return static_cast<int>(k);
  }
  return last;  // u landed in the rounding slack of the row sum
}

Configuration preset(std::string_view name) {
  using C = ComponentSpec;
  if (name == "paper-2") {
    const int succ[] = {0, 0};
    const int fail[] = {1, 0};
    return Configuration::deterministic({C::open_best(), C::close_random(4)},
                                        succ, fail, "paper-2");
  }
  if (name == "paper-3") {
    // open_random(4) has no success arc in the published diagram; it hands
    // control to exchange_half_fixed either way.
    const int succ[] = {0, 0, 1};
    const int fail[] = {1, 2, 1};
    return Configuration::deterministic(
        {C::close_best(), C::exchange_half_fixed(), C::open_random(4)}, succ,
        fail, "paper-3");
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected paper-2 or paper-3)");
}

Configuration parse_config(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty() || words(lines[0]) != std::vector<std::string_view>{"cmcs-config", "1"}) {
    throw std::invalid_argument("missing 'cmcs-config 1' header");
  }
  if (lines.size() < 2 || lines[1].substr(0, 11) != "components:") {
    throw std::invalid_argument("missing 'components:' line");
  }
  Configuration config;
  for (auto name : split(lines[1].substr(11), ',')) {
    config.components.push_back(ComponentSpec::parse(name));
  }
  const std::size_t k = config.components.size();
  if (lines.size() != 2 + 2 * k) {
    throw std::invalid_argument("expected " + std::to_string(k) +
                                " succ and " + std::to_string(k) +
                                " fail rows, found " +
                                std::to_string(lines.size() - 2) + " rows");
  }
  auto read_rows = [&](std::size_t first, std::string_view tag, const char* which) {
    std::vector<std::vector<double>> matrix;
    for (std::size_t h = 0; h < k; ++h) {
      std::string_view line = lines[first + h];
      if (line.substr(0, tag.size()) != tag) {
        throw std::invalid_argument(row_name(which, static_cast<int>(h)) +
                                    ": expected '" + std::string(tag) + "'");
      }
      std::vector<double> row;
      for (auto token : words(line.substr(tag.size()))) {
        double p = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), p);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
          throw std::invalid_argument(row_name(which, static_cast<int>(h)) +
                                      ": bad probability '" + std::string(token) + "'");
        }
        row.push_back(p);
      }
      matrix.push_back(std::move(row));
    }
    return matrix;
  };
  config.succ = read_rows(2, "succ:", "succ");
  config.fail = read_rows(2 + k, "fail:", "fail");
  config.validate();
  return config;
}

std::string write_config(const Configuration& config) {
  std::string out = "cmcs-config 1\ncomponents: ";
  for (int h = 0; h < config.size(); ++h) {
    if (h > 0) out += ", ";
    out += config.components[h].name();
  }
  out += '\n';
  auto write_rows = [&](const std::vector<std::vector<double>>& matrix,
                        const char* tag) {
    for (const auto& row : matrix) {
      out += tag;
      for (double p : row) {
        out += ' ';
        out += format_probability(p);
      }
      out += '\n';
    }
  };
  write_rows(config.succ, "succ:");
  write_rows(config.fail, "fail:");
  return out;
}

std::string config_id(const Configuration& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : write_config(config)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

const char* to_string(ClockKind clock) {
  return clock == ClockKind::kWall ? "wall" : "work";
}

ClockKind parse_clock(std::string_view text) {
  if (text == "wall") return ClockKind::kWall;
  if (text == "work") return ClockKind::kWork;
  throw std::invalid_argument("unknown clock '" + std::string(text) +
                              "' (expected wall or work)");
}

RunResult run_cmcs(const Configuration& config, const Problem& problem,
                   std::span<const SiteIndex> initial, const Budget& budget,
                   RandomSource& rng, const RunOptions& options) {
  config.validate();
  if (!(budget.ms >= 0)) throw std::invalid_argument("budget must be >= 0");

  SolutionState current(problem, initial);
  RunResult result;
  result.best_solution = current;
  result.best_value = current.value();

  using Clock = std::chrono::steady_clock;
  const auto wall_start = Clock::now();
  const std::uint64_t work_start = current.work();
  auto elapsed_ms = [&]() -> double {
    if (budget.clock == ClockKind::kWall) {
      return std::chrono::duration<double, std::milli>(Clock::now() - wall_start)
          .count();
    }
    return static_cast<double>(current.work() - work_start) / kWorkUnitsPerMs;
  };

  std::uint64_t steps = 0;
  auto stop = [&] {
    if (budget.max_iterations && steps >= *budget.max_iterations) return true;
    return elapsed_ms() >= budget.ms;
  };
  auto step = [&](int h) {
    ++steps;
    current.add_work(kDispatchWork);
    apply(config.components[h], current, rng);
    return current.value();
  };
  auto on_best = [&] {
    result.best_solution = current;
    result.best_value = current.value();
  };
  result.iterations = run_chain(config, current.value(), step, stop, on_best,
                                rng, options.record_trace ? &result.trace : nullptr);
  result.elapsed_ms = elapsed_ms();
  result.final_solution = std::move(current);
  return result;
}

std::vector<SiteIndex> random_initial_sites(int num_sites, RandomSource& rng) {
  if (num_sites < 2) throw std::invalid_argument("need at least 2 sites");
  const int upper = std::min(num_sites, std::max(2, num_sites / 10));
  const int count = static_cast<int>(rng.between(2, upper));
  std::vector<SiteIndex> sites(num_sites);
  std::iota(sites.begin(), sites.end(), 0);
  for (int k = 0; k < count; ++k) {
    const auto pick = k + static_cast<int>(rng.below(num_sites - k));
    std::swap(sites[k], sites[pick]);
  }
  sites.resize(count);
  std::sort(sites.begin(), sites.end());
  return sites;
}

}  // namespace splp
