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

// Instance generators. Generated instances carry no dummy advertiser.

#ifndef EXPAVG_GEN_H_
#define EXPAVG_GEN_H_

#include <cstdint>
#include <vector>

#include "expavg/types.h"

namespace expavg {

struct SyntheticSpec {
  ProblemKind kind = ProblemKind::kDisplayAds;
  int k = 12;
  int num_impressions = 2000;
  int num_types = 10;
  // Standard deviation of the display times around each type's mean.
  double sigma = 1.5;
  // Rate of the exponential value distribution.
  double value_rate = 1.0;
  // Per-advertiser budget; 0 selects ceil(T / (2k)). Ignored for GAP.
  int budget = 0;
  // GAP sizes are uniform on (0, max_size].
  double max_size = 0.05;
  int days = 1;
  std::uint64_t seed = 0;
};

// Throws ValidationError unless k, T, types and days are positive, T is a
// multiple of the number of types, sigma >= 0, rate > 0 and
// max_size in (0, 1].
void ValidateSyntheticSpec(const SyntheticSpec& spec);

// One instance per day. Every type has a display-time mean uniform on [0, 1]
// and one Exp(rate) value per advertiser, shared by all days; each day draws
// T / types impressions per type with Gaussian display times and sorts them.
std::vector<Instance> GenerateSynthetic(const SyntheticSpec& spec);

// k blocks of supply impressions each. Block r is worth 0 to advertisers
// below r and 1 to the rest; every budget equals supply.
Instance GenerateHardTriangular(int k, int supply);

}  // namespace expavg

#endif  // EXPAVG_GEN_H_
