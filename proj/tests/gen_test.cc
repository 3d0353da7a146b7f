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

#include "expavg/gen.h"

#include <algorithm>

#include "expavg/engine.h"
#include "expavg/oracles.h"
#include "gtest/gtest.h"

namespace expavg {
namespace {

TEST(SyntheticTest, ShapeAndDefaults) {
  SyntheticSpec spec;
  spec.num_impressions = 200;
  spec.seed = 4;
  const std::vector<Instance> days = GenerateSynthetic(spec);
  ASSERT_EQ(days.size(), 1u);
  const Instance& inst = days[0];
  EXPECT_EQ(inst.num_advertisers(), 12);
  EXPECT_EQ(inst.num_impressions(), 200);
  EXPECT_FALSE(inst.has_dummy);
  EXPECT_EQ(inst.budget(0), 9);  // ceil(200 / 24)
  EXPECT_TRUE(ValidateInstance(inst).empty());
}

TEST(SyntheticTest, Deterministic) {
  SyntheticSpec spec{.num_impressions = 100, .days = 2, .seed = 9};
  EXPECT_EQ(GenerateSynthetic(spec), GenerateSynthetic(spec));
  SyntheticSpec other = spec;
  other.seed = 10;
  EXPECT_NE(GenerateSynthetic(spec), GenerateSynthetic(other));
}

TEST(SyntheticTest, DaysShareTypeValues) {
  SyntheticSpec spec{
      .k = 3, .num_impressions = 30, .num_types = 3, .days = 2, .seed = 1};
  const std::vector<Instance> days = GenerateSynthetic(spec);
  ASSERT_EQ(days.size(), 2u);
  EXPECT_NE(days[0], days[1]);
  // Each day draws T / types impressions of every type, so both days hold the
  // same multiset of value vectors.
  auto rows = [](const Instance& inst) {
    std::vector<std::vector<double>> out;
    for (const Impression& imp : inst.impressions) out.push_back(imp.values);
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(rows(days[0]), rows(days[1]));
}

TEST(SyntheticTest, GapSizes) {
  SyntheticSpec spec{.kind = ProblemKind::kGap,
                     .k = 4,
                     .num_impressions = 100,
                     .max_size = 0.02,
                     .seed = 3};
  const Instance inst = GenerateSynthetic(spec)[0];
  EXPECT_TRUE(ValidateInstance(inst).empty());
  EXPECT_LE(inst.max_size(), 0.02);
  EXPECT_EQ(inst.advertisers[0].budget, 1.0);
}

TEST(SyntheticTest, RejectsBadSpecs) {
  EXPECT_THROW(GenerateSynthetic({.k = 0}), ValidationError);
  EXPECT_THROW(GenerateSynthetic({.num_impressions = 2001}), ValidationError);
  EXPECT_THROW(GenerateSynthetic({.sigma = -1.0}), ValidationError);
  EXPECT_THROW(GenerateSynthetic({.value_rate = 0.0}), ValidationError);
  EXPECT_THROW(GenerateSynthetic({.max_size = 1.5}), ValidationError);
  EXPECT_THROW(GenerateSynthetic({.days = 0}), ValidationError);
}

TEST(HardTriangularTest, Structure) {
  const Instance inst = GenerateHardTriangular(3, 2);
  EXPECT_EQ(inst.num_advertisers(), 3);
  EXPECT_EQ(inst.num_impressions(), 6);
  for (int t = 0; t < 6; ++t) {
    const int block = t / 2;
    for (int a = 0; a < 3; ++a) {
      EXPECT_EQ(inst.value(a, t), a >= block ? 1.0 : 0.0);
    }
  }
  EXPECT_EQ(SolveDisplayOpt(inst).value, 6.0);
  EXPECT_THROW(GenerateHardTriangular(0, 2), ValidationError);
}

TEST(HardTriangularTest, OptimumFillsEveryBlock) {
  for (int k = 1; k <= 8; ++k) {
    for (int supply = 1; supply <= 6; ++supply) {
      EXPECT_EQ(SolveDisplayOpt(GenerateHardTriangular(k, supply)).value,
                k * supply);
    }
  }
}

TEST(HardTriangularTest, WorstCaseRatioApproachesBound) {
  const Instance inst = GenerateHardTriangular(20, 50);
  const double ratio = RunWorstCase(WithDummy(inst)).alg_value / 1000.0;
  EXPECT_GT(ratio, 0.60);
  EXPECT_LT(ratio, 0.70);
}

}  // namespace
}  // namespace expavg
