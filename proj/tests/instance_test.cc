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

#include <algorithm>
#include <filesystem>
#include <string>

#include "oracles.h"
#include "splp/instance.h"
#include "splp/instance_io.h"

namespace splp {
namespace {

using testing::fixture_e1;

TEST(ParseInstance, CanonicalFixture) {
  const Instance inst = parse_instance("3 2\n5 4 7\n10 2 1\n3 6 6\n");
  EXPECT_EQ(inst.num_sites(), 3);
  EXPECT_EQ(inst.num_clients(), 2);
  EXPECT_EQ(inst, fixture_e1());
  EXPECT_EQ(inst.cost(1, 0), 2);
  EXPECT_EQ(inst.fixed_cost(2), 3);
}

TEST(ParseInstance, AllZeroIsLegal) {
  const Instance inst = parse_instance("2 1\n0 0\n0 0\n");
  EXPECT_EQ(inst.fixed_cost(0), 0);
  EXPECT_EQ(inst.cost(1, 0), 0);
}

TEST(ParseInstance, RejectsSingleSite) {
  try {
    parse_instance("1 2\n5 1 2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_NE(std::string(e.what()).find("m must be >= 2"), std::string::npos);
  }
}

TEST(ParseInstance, ReportsLineNumbers) {
  auto line_of = [](const char* text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("3 2\n5 4 7\n10 2\n3 6 6\n"), 3);     // short row
  EXPECT_EQ(line_of("3 2\n5 4 7\n10 2 1\n3 -6 6\n"), 4);  // negative cost
  EXPECT_EQ(line_of("3 2\n5 4 7\n10 2.5 1\n3 6 6\n"), 3); // non-integer
  EXPECT_EQ(line_of("3 x\n"), 1);                          // malformed header
  EXPECT_EQ(line_of("3 2 1 4\n"), 1);
  EXPECT_EQ(line_of("3 2\n5 4 7\n10 2 1\n"), 3);          // missing row
}

TEST(WriteInstance, Canonical) {
  EXPECT_EQ(write_instance(fixture_e1()), "3 2\n5 4 7\n10 2 1\n3 6 6\n");
  EXPECT_EQ(write_instance(Instance({0, 0}, {{0}, {0}})), "2 1\n0 0\n0 0\n");
}

TEST(WriteInstance, NormalisesWhitespace) {
  const std::string messy = "  3   2\n\n5 4\t7\r\n10 2 1\n 3 6 6   \n\n";
  EXPECT_EQ(write_instance(parse_instance(messy)), "3 2\n5 4 7\n10 2 1\n3 6 6\n");
}

TEST(WriteInstance, RoundTripProperty) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = static_cast<int>(rng.between(2, 15));
    const int n = static_cast<int>(rng.between(1, 15));
    const Instance inst = testing::random_instance(rng, m, n, 0, 20000);
    const std::string text = write_instance(inst);
    const Instance back = parse_instance(text);
    ASSERT_EQ(back, inst);
    ASSERT_EQ(write_instance(back), text);
  }
}

TEST(ParseInstanceAny, DetectsUflLib) {
  const char* text =
      "FILE: tiny\n"
      "3 2 0\n"
      "1 5 4 7\n"
      "2 10 2 1\n"
      "3 3 6 6\n";
  InstanceFormat format{};
  const Instance inst = parse_instance_any(text, &format);
  EXPECT_EQ(format, InstanceFormat::kUflLib);
  EXPECT_EQ(inst, fixture_e1());
  EXPECT_EQ(inst.name(), "tiny");
}

TEST(ParseInstanceAny, DetectsOrLib) {
  // Two sites, two clients; per client: demand then one cost per site.
  const char* text =
      "3 2\n"
      "capacity 5\n"
      "capacity 10.000\n"
      "capacity 3\n"
      "1\n4 2 6\n"
      "1\n7 1 6\n";
  InstanceFormat format{};
  const Instance inst = parse_instance_any(text, &format);
  EXPECT_EQ(format, InstanceFormat::kOrLib);
  EXPECT_EQ(inst, fixture_e1());
}

TEST(ParseInstanceAny, CanonicalWins) {
  InstanceFormat format{};
  parse_instance_any("2 1\n0 0\n0 0\n", &format);
  EXPECT_EQ(format, InstanceFormat::kCanonical);
}

TEST(ParseInstanceAny, ListsAttemptedFormats) {
  try {
    parse_instance_any("3 2\n5 4\n");
    FAIL();
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("canonical"), std::string::npos) << what;
    EXPECT_NE(what.find("orlib"), std::string::npos) << what;
  }
}

TEST(GenerateKg, ClassAAsymmetricRanges) {
  const Instance inst = generate_kg_instance(KgClass::kA, 300, 300, false, 1);
  const auto fixed = inst.fixed_costs();
  EXPECT_GE(*std::min_element(fixed.begin(), fixed.end()), 100);
  EXPECT_LE(*std::max_element(fixed.begin(), fixed.end()), 200);
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    for (Money c : inst.client_costs(j)) {
      ASSERT_GE(c, 1000);
      ASSERT_LE(c, 2000);
    }
  }
}

TEST(GenerateKg, SymmetricClassC) {
  const Instance inst = generate_kg_instance(KgClass::kC, 10, 10, true, 7);
  for (SiteIndex i = 0; i < 10; ++i) {
    EXPECT_GE(inst.fixed_cost(i), 10000);
    EXPECT_LE(inst.fixed_cost(i), 20000);
    for (ClientIndex j = 0; j < 10; ++j) EXPECT_EQ(inst.cost(i, j), inst.cost(j, i));
  }
}

TEST(GenerateKg, Deterministic) {
  EXPECT_EQ(generate_kg_instance(KgClass::kB, 40, 30, false, 9),
            generate_kg_instance(KgClass::kB, 40, 30, false, 9));
  EXPECT_FALSE(generate_kg_instance(KgClass::kB, 40, 30, false, 9) ==
               generate_kg_instance(KgClass::kB, 40, 30, false, 10));
}

TEST(GenerateKg, RangesHoldOverManySeeds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto cls = static_cast<KgClass>(seed % 3);
    const bool symmetric = seed % 2 == 0;
    const Instance inst = generate_kg_instance(cls, 12, 12, symmetric, seed);
    const auto range = fixed_cost_range(cls);
    Money fmin = range.hi, fmax = range.lo, cmin = 2000, cmax = 1000;
    for (SiteIndex i = 0; i < 12; ++i) {
      fmin = std::min(fmin, inst.fixed_cost(i));
      fmax = std::max(fmax, inst.fixed_cost(i));
      for (ClientIndex j = 0; j < 12; ++j) {
        cmin = std::min(cmin, inst.cost(i, j));
        cmax = std::max(cmax, inst.cost(i, j));
        if (symmetric) ASSERT_EQ(inst.cost(i, j), inst.cost(j, i));
      }
    }
    ASSERT_GE(fmin, range.lo);
    ASSERT_LE(fmax, range.hi);
    ASSERT_GE(cmin, 1000);
    ASSERT_LE(cmax, 2000);
  }
}

TEST(GenerateKg, SymmetricNeedsSquare) {
  EXPECT_THROW(generate_kg_instance(KgClass::kA, 10, 12, true, 1),
               std::invalid_argument);
}

TEST(KgClass, Parse) {
  EXPECT_EQ(parse_kg_class("b"), KgClass::kB);
  EXPECT_EQ(parse_kg_class("C"), KgClass::kC);
  EXPECT_THROW(parse_kg_class("d"), std::invalid_argument);
}

TEST(Rng, BelowIsUnbiasedEnough) {
  Rng rng(5);
  std::vector<int> counts(3, 0);
  for (int k = 0; k < 30000; ++k) ++counts[rng.below(3)];
  for (int c : counts) {
    EXPECT_GT(c, 9500);
    EXPECT_LT(c, 10500);
  }
}

}  // namespace
}  // namespace splp
