// Copyright 2026 The Authors.
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

#include "expavg/oracles.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.h"
#include "gtest/gtest.h"

namespace expavg {
namespace {

using ::expavg::testing::DisplayFromValues;
using ::expavg::testing::RandomDisplay;
using ::expavg::testing::RandomDisplayIntegral;
using ::expavg::testing::RandomGap;

TEST(DisplayOptTest, TopBudgetSelection) {
  const Instance inst = DisplayFromValues({2}, {{1.0}, {3.0}, {2.0}});
  const OfflineSolution sol = SolveDisplayOpt(inst);
  EXPECT_EQ(sol.value, 5.0);
  EXPECT_EQ(sol.assignment, (std::vector<int>{-1, 0, 0}));
  EXPECT_TRUE(AuditOfflineSolution(inst, sol, 1e-9).empty());
}

TEST(DisplayOptTest, TwoUnitBudgets) {
  const Instance inst = DisplayFromValues({1, 1}, {{3, 1}, {2, 2}});
  const OfflineSolution sol = SolveDisplayOpt(inst);
  EXPECT_EQ(sol.value, 5.0);
  EXPECT_EQ(sol.assignment, (std::vector<int>{0, 1}));
  EXPECT_EQ(BruteForceOpt(inst).value, 5.0);
}

TEST(DisplayOptTest, AllZero) {
  const Instance inst = DisplayFromValues({1, 2}, {{0, 0}, {0, 0}, {0, 0}});
  const OfflineSolution sol = SolveDisplayOpt(inst);
  EXPECT_EQ(sol.value, 0.0);
  for (double b : sol.betas) EXPECT_EQ(b, 0.0);
  for (double z : sol.zs) EXPECT_EQ(z, 0.0);
}

TEST(DisplayOptTest, IgnoresDummy) {
  const Instance inst = WithDummy(DisplayFromValues({1}, {{2.0}, {4.0}}));
  const OfflineSolution sol = SolveDisplayOpt(inst);
  EXPECT_EQ(sol.value, 4.0);
  EXPECT_EQ(sol.assignment, (std::vector<int>{-1, 0}));
  ASSERT_EQ(sol.betas.size(), 2u);
  EXPECT_EQ(sol.betas[1], 0.0);
}

TEST(DisplayOptTest, MatchesBruteForceExhaustively) {
  int cases = 0;
  for (std::uint64_t seed = 0; seed < 1200; ++seed) {
    const Instance inst = seed % 2 == 0
                              ? RandomDisplayIntegral(seed, 3, 6, 2, 4)
                              : RandomDisplay(seed, 3, 6, 2);
    const OfflineSolution flow = SolveDisplayOpt(inst);
    const OfflineSolution brute = BruteForceOpt(inst);
    if (seed % 2 == 0) {
      ASSERT_EQ(flow.value, brute.value) << "seed=" << seed;
    } else {
      ASSERT_NEAR(flow.value, brute.value, 1e-12 * (1 + brute.value))
          << "seed=" << seed;
    }
    const auto problems = AuditOfflineSolution(inst, flow, 1e-6);
    ASSERT_TRUE(problems.empty())
        << "seed=" << seed << ": " << problems.front();
    ++cases;
  }
  EXPECT_GE(cases, 1000);
}

TEST(DisplayOptTest, DualsOnLargerInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = RandomDisplay(seed, 8, 300, 10);
    const OfflineSolution sol = SolveDisplayOpt(inst);
    const auto problems = AuditOfflineSolution(inst, sol, 1e-6);
    ASSERT_TRUE(problems.empty())
        << "seed=" << seed << ": " << problems.front();
  }
}

TEST(DisplayOptTest, AdvertiserPermutationInvariance) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = RandomDisplay(seed, 6, 60, 5);
    const int k = inst.num_advertisers();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(seed));
    Instance permuted = inst;
    for (int a = 0; a < k; ++a) {
      permuted.advertisers[perm[a]] = {perm[a], inst.advertisers[a].budget};
      for (int t = 0; t < inst.num_impressions(); ++t) {
        permuted.impressions[t].values[perm[a]] = inst.value(a, t);
      }
    }
    const double x = SolveDisplayOpt(inst).value;
    EXPECT_NEAR(SolveDisplayOpt(permuted).value, x, 1e-9 * (1 + x));
  }
}

TEST(DisplayOptTest, ImpressionOrderInvariance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = RandomDisplay(seed, 5, 60, 4);
    const double x = SolveDisplayOpt(inst).value;
    std::mt19937_64 rng(seed);
    for (int round = 0; round < 10; ++round) {
      Instance shuffled = inst;
      std::shuffle(shuffled.impressions.begin(), shuffled.impressions.end(),
                   rng);
      for (int t = 0; t < shuffled.num_impressions(); ++t) {
        shuffled.impressions[t].id = t;
      }
      ASSERT_NEAR(SolveDisplayOpt(shuffled).value, x, 1e-9 * (1 + x))
          << "seed=" << seed << " round=" << round;
    }
  }
}

TEST(BruteForceTest, EmptyAndGuard) {
  EXPECT_EQ(BruteForceOpt(DisplayFromValues({1}, {})).value, 0.0);
  std::vector<std::vector<double>> values(10, std::vector<double>(9, 1.0));
  const Instance big = DisplayFromValues(std::vector<int>(9, 1), values);
  EXPECT_FALSE(BruteForceFeasible(big));
  EXPECT_THROW(BruteForceOpt(big), GuardExceeded);
}

TEST(BruteForceTest, GapIntegralOptimum) {
  Instance inst;
  inst.kind = ProblemKind::kGap;
  inst.advertisers = {{0, 1.0}};
  inst.impressions = {{0, {1.0}, {0.6}}, {1, {1.0}, {0.6}}};
  EXPECT_EQ(BruteForceOpt(inst).value, 1.0);
  const GapBound bound = GapFractionalBound(inst);
  EXPECT_NEAR(bound.upper, 5.0 / 3.0, 1e-9);
  EXPECT_NEAR(bound.lower, 5.0 / 3.0, 1e-9);
}

TEST(ScaledDualsTest, FullScaleMatchesOptimum) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = RandomDisplay(seed, 5, 80, 6);
    EXPECT_EQ(SolveScaledDuals(inst, 1.0), SolveDisplayOpt(inst).betas);
  }
}

TEST(ScaledDualsTest, ZeroPrefixAndBadScale) {
  const Instance zero = DisplayFromValues({3, 3}, {{0, 0}, {0, 0}});
  for (double b : SolveScaledDuals(zero, 0.1)) EXPECT_EQ(b, 0.0);
  EXPECT_THROW(SolveScaledDuals(zero, 0.0), ValidationError);
  EXPECT_THROW(SolveScaledDuals(zero, 1.5), ValidationError);
  EXPECT_THROW(SolveScaledDuals(DisplayFromValues({3}, {}), 0.5),
               ValidationError);
}

TEST(ScaledDualsTest, SmallerBudgetsRaisePrices) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = RandomDisplay(seed, 4, 100, 10);
    const std::vector<double> full = SolveScaledDuals(inst, 1.0);
    const std::vector<double> half = SolveScaledDuals(inst, 0.5);
    double sum_full = 0.0;
    double sum_half = 0.0;
    for (double b : full) sum_full += b;
    for (double b : half) sum_half += b;
    EXPECT_GE(sum_half, sum_full - 1e-9);
  }
}

TEST(GapBoundTest, UniformSizesMatchDisplayOpt) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int budget = 1 + seed % 5;
    Instance gap = RandomGap(seed, 4, 60, 1.0);
    Instance display;
    for (int a = 0; a < gap.num_advertisers(); ++a) {
      display.advertisers.push_back({a, static_cast<double>(budget)});
    }
    for (Impression& imp : gap.impressions) {
      for (double& u : imp.sizes) u = 1.0 / budget;
      display.impressions.push_back({imp.id, imp.values, {}});
    }
    const double opt = SolveDisplayOpt(display).value;
    const GapBound bound = GapFractionalBound(gap);
    EXPECT_NEAR(bound.upper, opt, 1e-6 * (1 + opt)) << "seed=" << seed;
    EXPECT_NEAR(bound.lower, opt, 1e-6 * (1 + opt)) << "seed=" << seed;
  }
}

TEST(PackingLpTest, HandExample) {
  // max x + y with x + 2y <= 4, 3x + y <= 6: optimum (1.6, 1.2).
  EXPECT_NEAR(testing::SolvePackingLp({{1, 2}, {3, 1}}, {4, 6}, {1, 1}), 2.8,
              1e-12);
}

TEST(GapBoundTest, BracketsLpOptimum) {
  double worst_lower_gap = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = RandomGap(seed, 3, 7, 0.8);
    const GapBound bound = GapFractionalBound(inst);
    const double lp = testing::GapLpValue(inst);
    const double opt = BruteForceOpt(inst).value;
    ASSERT_LE(opt, lp + 1e-9) << "seed=" << seed;
    ASSERT_NEAR(bound.upper, lp, 1e-9 * (1 + lp)) << "seed=" << seed;
    ASSERT_LE(bound.lower, lp + 1e-9 * (1 + lp)) << "seed=" << seed;
    worst_lower_gap = std::max(worst_lower_gap, (lp - bound.lower) / (1 + lp));
  }
  // The soft-assignment lower end is a certificate, not an exact optimum.
  EXPECT_LT(worst_lower_gap, 1e-3);
}

TEST(GapBoundTest, UpperMatchesLpOnSmallSizes) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = RandomGap(seed, 3, 40, 0.1);
    const double lp = testing::GapLpValue(inst);
    const GapBound bound = GapFractionalBound(inst);
    EXPECT_NEAR(bound.upper, lp, 1e-9 * (1 + lp)) << "seed=" << seed;
    EXPECT_LE(bound.lower, lp + 1e-9 * (1 + lp)) << "seed=" << seed;
  }
}

TEST(GapBoundTest, AllZeroAndWrongKind) {
  Instance inst = RandomGap(1, 3, 20, 0.1);
  for (Impression& imp : inst.impressions) {
    for (double& w : imp.values) w = 0.0;
  }
  const GapBound bound = GapFractionalBound(inst);
  EXPECT_EQ(bound.upper, 0.0);
  EXPECT_EQ(bound.lower, 0.0);
  EXPECT_THROW(GapFractionalBound(DisplayFromValues({1}, {{1.0}})),
               ValidationError);
}

}  // namespace
}  // namespace expavg
