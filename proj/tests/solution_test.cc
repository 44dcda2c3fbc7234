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
#include "splp/solution.h"

namespace splp {
namespace {

using testing::fixture_e1;
using testing::one_based;
using testing::sites;

std::vector<SiteIndex> closest_one_based(const SolutionState& s) {
  return one_based(s.closest());
}
std::vector<SiteIndex> second_one_based(const SolutionState& s) {
  return one_based(s.second());
}

TEST(RankMatrix, FixtureOrders) {
  const RankMatrix ranks(fixture_e1());
  EXPECT_EQ(one_based(ranks.order(0)), (std::vector<SiteIndex>{2, 1, 3}));
  EXPECT_EQ(one_based(ranks.order(1)), (std::vector<SiteIndex>{2, 3, 1}));
  EXPECT_EQ(ranks.rank(1, 0), 2);
}

TEST(RankMatrix, TiesByIndex) {
  const Instance inst({1, 1, 1, 1}, {{5}, {5}, {5}, {5}});
  const RankMatrix ranks(inst);
  EXPECT_EQ(one_based(ranks.order(0)), (std::vector<SiteIndex>{1, 2, 3, 4}));
}

TEST(RankMatrix, SortedAndInverse) {
  Rng rng(3);
  const Instance inst = testing::random_instance(rng, 25, 20, 0, 10);
  const RankMatrix ranks(inst);
  for (ClientIndex j = 0; j < 20; ++j) {
    const auto order = ranks.order(j);
    for (int r = 0; r + 1 < 25; ++r) {
      ASSERT_LE(inst.cost(order[r], j), inst.cost(order[r + 1], j));
      ASSERT_EQ(ranks.sorted_costs(j)[r], inst.cost(order[r], j));
    }
    for (int r = 0; r < 25; ++r) ASSERT_EQ(ranks.rank(j, order[r]), r);
  }
}

class FixtureState : public ::testing::Test {
 protected:
  Problem problem{fixture_e1()};
};

TEST_F(FixtureState, InitTwoSites) {
  const SolutionState s(problem, sites({2, 3}));
  EXPECT_EQ(s.value(), 16);
  EXPECT_EQ(closest_one_based(s), (std::vector<SiteIndex>{2, 2}));
  EXPECT_EQ(second_one_based(s), (std::vector<SiteIndex>{3, 3}));
}

TEST_F(FixtureState, InitAllSites) {
  const SolutionState s(problem, sites({1, 2, 3}));
  EXPECT_EQ(s.value(), 21);
  EXPECT_EQ(closest_one_based(s), (std::vector<SiteIndex>{2, 2}));
  EXPECT_EQ(second_one_based(s), (std::vector<SiteIndex>{1, 3}));
}

TEST_F(FixtureState, InitRejectsSingleSite) {
  EXPECT_THROW(SolutionState(problem, sites({2})), std::invalid_argument);
  EXPECT_THROW(SolutionState(problem, sites({2, 2})), std::invalid_argument);
  EXPECT_THROW(SolutionState(problem, sites({2, 4})), std::invalid_argument);
}

TEST_F(FixtureState, OpenMovesClosestAndSecond) {
  SolutionState s(problem, sites({1, 3}));
  EXPECT_EQ(s.value(), 18);
  s.open_site(1);
  EXPECT_EQ(s.value(), 21);
  EXPECT_EQ(closest_one_based(s), (std::vector<SiteIndex>{2, 2}));
  EXPECT_EQ(second_one_based(s), (std::vector<SiteIndex>{1, 3}));
}

TEST_F(FixtureState, OpenUpdatesSecondOnly) {
  SolutionState s(problem, sites({2, 3}));
  s.open_site(0);
  EXPECT_EQ(s.value(), 21);
  EXPECT_EQ(closest_one_based(s), (std::vector<SiteIndex>{2, 2}));
  EXPECT_EQ(second_one_based(s), (std::vector<SiteIndex>{1, 3}));
  EXPECT_EQ(check_invariants(s), std::nullopt);
}

TEST(SolutionState, OpenFarSiteOnlyAddsFixedCost) {
  const Problem problem(Instance({1, 1, 7}, {{1, 1}, {2, 2}, {9, 9}}));
  SolutionState s(problem, std::vector<SiteIndex>{0, 1});
  const auto p = std::vector<SiteIndex>(s.closest().begin(), s.closest().end());
  const auto q = std::vector<SiteIndex>(s.second().begin(), s.second().end());
  const Money before = s.value();
  s.open_site(2);
  EXPECT_EQ(s.value(), before + 7);
  EXPECT_TRUE(std::ranges::equal(s.closest(), p));
  EXPECT_TRUE(std::ranges::equal(s.second(), q));
}

TEST_F(FixtureState, OpenAlreadyOpenThrows) {
  SolutionState s(problem, sites({2, 3}));
  EXPECT_THROW(s.open_site(1), std::invalid_argument);
}

TEST_F(FixtureState, CloseSecondClosest) {
  SolutionState s(problem, sites({1, 2, 3}));
  s.close_site(0);
  EXPECT_EQ(s.value(), 16);
  EXPECT_EQ(closest_one_based(s), (std::vector<SiteIndex>{2, 2}));
  EXPECT_EQ(second_one_based(s), (std::vector<SiteIndex>{3, 3}));
}

TEST_F(FixtureState, CloseClosest) {
  SolutionState s(problem, sites({1, 2, 3}));
  s.close_site(1);
  EXPECT_EQ(s.value(), 18);
  EXPECT_EQ(closest_one_based(s), (std::vector<SiteIndex>{1, 3}));
  EXPECT_EQ(second_one_based(s), (std::vector<SiteIndex>{3, 1}));
}

TEST_F(FixtureState, CloseGuards) {
  SolutionState s(problem, sites({2, 3}));
  EXPECT_THROW(s.close_site(2), std::invalid_argument);
  EXPECT_THROW(s.close_site(0), std::invalid_argument);
  EXPECT_EQ(s.num_open(), 2);
}

TEST_F(FixtureState, ObjectiveFromScratch) {
  EXPECT_EQ(objective(problem.instance, sites({2, 3})), 16);
  EXPECT_EQ(objective(problem.instance, sites({1, 2, 3})), 21);
  const Instance zero({0, 0, 0}, {{0}, {0}, {0}});
  EXPECT_EQ(objective(zero, sites({1, 3})), 0);
}

// Random walks of opens and closes keep every cached field equal to a
// from-scratch rebuild, including under heavy cost ties.
TEST(SolutionState, RandomWalkMatchesRecomputation) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = static_cast<int>(rng.between(2, 50));
    const int n = static_cast<int>(rng.between(1, 50));
    const Problem problem(testing::random_instance(rng, m, n, 0, 8));
    SolutionState s(problem, testing::random_subset(rng, m, 2));
    for (int step = 0; step < 1000; ++step) {
      const auto i = static_cast<SiteIndex>(rng.below(m));
      if (s.is_open(i)) {
        if (s.num_open() > 2) s.close_site(i);
      } else {
        s.open_site(i);
      }
      ASSERT_EQ(s.value(), objective(s)) << "step " << step;
    }
    ASSERT_EQ(check_invariants(s), std::nullopt);
  }
}

TEST(SolutionState, OpenThenCloseRestores) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = static_cast<int>(rng.between(3, 30));
    const Problem problem(testing::random_instance(rng, m, 20, 0, 8));
    SolutionState s(problem, testing::random_subset(rng, m, static_cast<int>(rng.between(2, m - 1))));
    SiteIndex closed = 0;
    while (s.is_open(closed)) ++closed;
    const SolutionState before = s;
    s.open_site(closed);
    s.close_site(closed);
    ASSERT_EQ(s.value(), before.value());
    ASSERT_TRUE(s.same_solution(before));
  }
}

}  // namespace
}  // namespace splp
