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

#include <gtest/gtest.h>

#include "oracles.h"
#include "splp/cmcs.h"
#include "splp/generator.h"
#include "trace_cases.h"

namespace splp {
namespace {

using testing::ScriptedRandom;
using testing::sites;

TEST(Preset, PaperTwo) {
  const Configuration c = preset("paper-2");
  EXPECT_TRUE(c.is_deterministic());
  ASSERT_EQ(c.size(), 2);
  EXPECT_EQ(c.components[0], ComponentSpec::open_best());
  EXPECT_EQ(c.components[1], ComponentSpec::close_random(4));
  EXPECT_EQ(c.next_succ(0), 0);
  EXPECT_EQ(c.next_succ(1), 0);
  EXPECT_EQ(c.next_fail(0), 1);
  EXPECT_EQ(c.next_fail(1), 0);
  const std::uint32_t adjacency[] = {0b11, 0b01};
  EXPECT_TRUE(strongly_connected(adjacency));
  EXPECT_TRUE(is_meaningful(c));
}

TEST(Preset, PaperThree) {
  const Configuration c = preset("paper-3");
  EXPECT_TRUE(c.is_deterministic());
  ASSERT_EQ(c.size(), 3);
  EXPECT_EQ(c.components[0], ComponentSpec::close_best());
  EXPECT_EQ(c.next_succ(0), 0);  // close_best success self-loop
  EXPECT_EQ(c.next_fail(0), 1);
  EXPECT_EQ(c.next_succ(1), 0);
  EXPECT_EQ(c.next_fail(1), 2);
  EXPECT_EQ(c.next_succ(2), 1);
  EXPECT_EQ(c.next_fail(2), 1);
  EXPECT_TRUE(is_meaningful(c));
}

TEST(Preset, Unknown) { EXPECT_THROW(preset("paper-4"), std::invalid_argument); }

TEST(ConfigFormat, RoundTrip) {
  for (const char* name : {"paper-2", "paper-3"}) {
    const Configuration c = preset(name);
    const std::string text = write_config(c);
    EXPECT_EQ(parse_config(text), c);
    EXPECT_EQ(write_config(parse_config(text)), text);
  }
}

TEST(ConfigFormat, Layout) {
  EXPECT_EQ(write_config(preset("paper-2")),
            "cmcs-config 1\n"
            "components: open_best, close_random(4)\n"
            "succ: 1 0\n"
            "succ: 1 0\n"
            "fail: 0 1\n"
            "fail: 1 0\n");
}

TEST(ConfigFormat, RowSumError) {
  const char* text =
      "cmcs-config 1\n"
      "components: open_best, close_random(4)\n"
      "succ: 1 0\n"
      "succ: 0.5 0.4\n"
      "fail: 0 1\n"
      "fail: 1 0\n";
  try {
    parse_config(text);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("succ row 2"), std::string::npos) << e.what();
  }
}

TEST(ConfigFormat, StochasticRowsAccepted) {
  const char* text =
      "# comment\n"
      "cmcs-config 1\n"
      "components: open_best, close_random(4)\n"
      "succ: 0.5 0.5\n"
      "succ: 1 0\n"
      "fail: 0 1\n"
      "fail: 0.25 0.75\n";
  const Configuration c = parse_config(text);
  EXPECT_FALSE(c.is_deterministic());
  EXPECT_EQ(parse_config(write_config(c)), c);
}

TEST(ConfigFormat, Errors) {
  EXPECT_THROW(parse_config("cmcs-config 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("cmcs-config 1\ncomponents: open_bset, close_best\n"
                            "succ: 1 0\nsucc: 1 0\nfail: 0 1\nfail: 1 0\n"),
               std::invalid_argument);
  EXPECT_THROW(parse_config("cmcs-config 1\ncomponents: open_best, close_best\n"
                            "succ: 1 0 0\nsucc: 1 0\nfail: 0 1\nfail: 1 0\n"),
               std::invalid_argument);
  EXPECT_THROW(parse_config("cmcs-config 1\ncomponents: open_best, close_best\n"
                            "succ: 1 0\nsucc: 1 0\nfail: 0 1\n"),
               std::invalid_argument);
}

TEST(ConfigId, StableAndDistinct) {
  EXPECT_EQ(config_id(preset("paper-2")).size(), 16u);
  EXPECT_EQ(config_id(preset("paper-2")), config_id(preset("paper-2")));
  EXPECT_NE(config_id(preset("paper-2")), config_id(preset("paper-3")));
}

TEST(Roulette, DegenerateRowDrawsNothing) {
  ScriptedRandom rng({});
  const double row[] = {0, 1, 0};
  for (int k = 0; k < 10; ++k) EXPECT_EQ(roulette_wheel(row, rng), 1);
}

TEST(Roulette, CumulativeSelection) {
  ScriptedRandom rng({}, {0.0, 0.49, 0.5, 0.99});
  const double row[] = {0.5, 0, 0.5};
  EXPECT_EQ(roulette_wheel(row, rng), 0);
  EXPECT_EQ(roulette_wheel(row, rng), 0);
  EXPECT_EQ(roulette_wheel(row, rng), 2);
  EXPECT_EQ(roulette_wheel(row, rng), 2);
}

TEST(Roulette, Frequencies) {
  Rng rng(4);
  const double row[] = {0.2, 0.3, 0.5};
  int counts[3] = {};
  for (int k = 0; k < 20000; ++k) ++counts[roulette_wheel(row, rng)];
  EXPECT_NEAR(counts[0] / 20000.0, 0.2, 0.02);
  EXPECT_NEAR(counts[1] / 20000.0, 0.3, 0.02);
  EXPECT_NEAR(counts[2] / 20000.0, 0.5, 0.02);
}

TEST(RunChain, HandComputedTraces) {
  for (const auto& c : testing::trace_cases()) {
    Money best = 0;
    EXPECT_EQ(testing::run_trace_case(c, &best), c.expected) << c.name;
    EXPECT_EQ(best, c.expected_best) << c.name;
  }
}

TEST(RunCmcs, PaperTwoHandTrace) {
  const Problem problem(testing::fixture_e1());
  ScriptedRandom rng({0});  // close_random picks site 1
  Budget budget{1e9, ClockKind::kWork, 6};
  const RunResult r = run_cmcs(preset("paper-2"), problem, sites({1, 2, 3}), budget,
                               rng, {.record_trace = true});
  const std::vector<TraceEntry> expected = {{0, false}, {1, true}, {0, false},
                                            {1, false}, {0, false}, {1, false}};
  EXPECT_EQ(r.trace, expected);
  EXPECT_EQ(r.iterations, 6u);
  EXPECT_EQ(r.best_value, 16);
  ASSERT_TRUE(r.best_solution);
  EXPECT_EQ(testing::opened_of(*r.best_solution), sites({2, 3}));
  EXPECT_TRUE(rng.exhausted());
}

TEST(RunCmcs, ZeroBudgetKeepsInitial) {
  const Problem problem(testing::fixture_e1());
  Rng rng(1);
  const RunResult r = run_cmcs(preset("paper-3"), problem, sites({1, 2, 3}),
                               Budget{0}, rng);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.best_value, 21);
}

TEST(RunCmcs, InvalidInitial) {
  const Problem problem(testing::fixture_e1());
  Rng rng(1);
  EXPECT_THROW(run_cmcs(preset("paper-3"), problem, sites({1}), Budget{10}, rng),
               std::invalid_argument);
}

TEST(RunCmcs, IncumbentIsBestVisited) {
  Rng gen(9);
  const Problem problem(testing::random_instance(gen, 30, 30, 0, 40));
  for (const char* name : {"paper-2", "paper-3"}) {
    Rng rng(5);
    const auto initial = random_initial_sites(30, rng);
    const Money start = objective(problem.instance, initial);
    const RunResult r = run_cmcs(preset(name), problem, initial, Budget{20}, rng);
    ASSERT_TRUE(r.best_solution);
    EXPECT_EQ(r.best_value, objective(*r.best_solution));
    EXPECT_EQ(check_invariants(*r.best_solution), std::nullopt);
    EXPECT_LE(r.best_value, start);
    EXPECT_GT(r.iterations, 0u);
    EXPECT_GE(r.elapsed_ms, 20.0);
  }
}

TEST(RunCmcs, NestedBudgetsNeverWorsen) {
  Rng gen(10);
  const Problem problem(testing::random_instance(gen, 40, 40, 0, 50));
  Money previous = std::numeric_limits<Money>::max();
  for (double ms : {1.0, 5.0, 25.0}) {
    Rng rng(3);
    const auto initial = random_initial_sites(40, rng);
    const RunResult r = run_cmcs(preset("paper-3"), problem, initial, Budget{ms}, rng);
    EXPECT_LE(r.best_value, previous);
    previous = r.best_value;
  }
}

TEST(RunCmcs, DeterministicUnderWorkClock) {
  Rng gen(11);
  const Problem problem(testing::random_instance(gen, 25, 25, 0, 50));
  auto run = [&] {
    Rng rng(42);
    const auto initial = random_initial_sites(25, rng);
    return run_cmcs(preset("paper-3"), problem, initial, Budget{10}, rng,
                    {.record_trace = true});
  };
  const RunResult a = run(), b = run();
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_TRUE(a.best_solution->same_solution(*b.best_solution));
}

TEST(RunCmcs, WallClockStops) {
  Rng gen(12);
  const Problem problem(testing::random_instance(gen, 25, 25, 0, 50));
  Rng rng(1);
  const RunResult r = run_cmcs(preset("paper-2"), problem, sites({1, 2}),
                               Budget{20, ClockKind::kWall}, rng);
  EXPECT_GE(r.elapsed_ms, 20.0);
  EXPECT_LT(r.elapsed_ms, 2000.0);
}

TEST(RunCmcs, StochasticConfiguration) {
  Configuration c = preset("paper-3");
  c.fail[1] = {0.5, 0, 0.5};
  Rng gen(13);
  const Problem problem(testing::random_instance(gen, 20, 20, 0, 50));
  Rng rng(2);
  const RunResult r = run_cmcs(c, problem, sites({1, 2, 3}), Budget{5}, rng);
  EXPECT_EQ(r.best_value, objective(*r.best_solution));
}

TEST(InitialSites, RangeAndDistinct) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = static_cast<int>(rng.between(2, 400));
    const auto s = random_initial_sites(m, rng);
    ASSERT_GE(s.size(), 2u);
    ASSERT_LE(static_cast<int>(s.size()), std::max(2, m / 10));
    ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
    ASSERT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    ASSERT_LT(s.back(), m);
  }
}

TEST(Clock, Parse) {
  EXPECT_EQ(parse_clock("wall"), ClockKind::kWall);
  EXPECT_EQ(parse_clock("work"), ClockKind::kWork);
  EXPECT_THROW(parse_clock("cpu"), std::invalid_argument);
}

}  // namespace
}  // namespace splp
