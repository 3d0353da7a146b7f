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
#include <cmath>
#include <random>
#include <tuple>

#include "expavg/random.h"

namespace expavg {

void ValidateSyntheticSpec(const SyntheticSpec& spec) {
  if (spec.k < 1 || spec.num_impressions < 1 || spec.num_types < 1 ||
      spec.days < 1) {
    throw ValidationError("k, T, types and days must be positive");
  }
  if (spec.num_impressions % spec.num_types != 0) {
    throw ValidationError("T must be a multiple of the number of types");
  }
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
    throw ValidationError("sigma must be finite and non-negative");
  }
  if (!(spec.value_rate > 0.0) || !std::isfinite(spec.value_rate)) {
    throw ValidationError("value rate must be positive");
  }
  if (spec.budget < 0) throw ValidationError("budget must be non-negative");
  if (!(spec.max_size > 0.0 && spec.max_size <= 1.0)) {
    throw ValidationError("max size must lie in (0, 1]");
  }
}

std::vector<Instance> GenerateSynthetic(const SyntheticSpec& spec) {
  ValidateSyntheticSpec(spec);
  const int k = spec.k;
  const int types = spec.num_types;
  const int per_type = spec.num_impressions / types;
  const bool gap = spec.kind == ProblemKind::kGap;

  std::mt19937_64 market(Hash64({spec.seed, HashString("market")}));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> value(spec.value_rate);
  std::vector<double> means(types);
  std::vector<std::vector<double>> values(types, std::vector<double>(k));
  for (int r = 0; r < types; ++r) {
    means[r] = unit(market);
    for (int a = 0; a < k; ++a) values[r][a] = value(market);
  }

  const int budget = spec.budget > 0
                         ? spec.budget
                         : (spec.num_impressions + 2 * k - 1) / (2 * k);
  std::vector<Instance> days;
  for (int d = 0; d < spec.days; ++d) {
    std::mt19937_64 rng(
        Hash64({spec.seed, HashString("day"), static_cast<std::uint64_t>(d)}));
    std::vector<std::tuple<double, int, int>> arrivals;
    arrivals.reserve(spec.num_impressions);
    for (int r = 0; r < types; ++r) {
      std::normal_distribution<double> time(means[r],
                                            spec.sigma > 0 ? spec.sigma : 1.0);
      for (int i = 0; i < per_type; ++i) {
        arrivals.emplace_back(spec.sigma > 0 ? time(rng) : means[r], r, i);
      }
    }
    std::sort(arrivals.begin(), arrivals.end());

    Instance inst;
    inst.kind = spec.kind;
    for (int a = 0; a < k; ++a) {
      inst.advertisers.push_back({a, gap ? 1.0 : static_cast<double>(budget)});
    }
    inst.impressions.reserve(arrivals.size());
    for (const auto& [when, r, i] : arrivals) {
      Impression imp;
      imp.id = static_cast<int>(inst.impressions.size());
      imp.values = values[r];
      if (gap) {
        imp.sizes.resize(k);
        for (int a = 0; a < k; ++a) {
          imp.sizes[a] = spec.max_size * (1.0 - unit(rng));
        }
      }
      inst.impressions.push_back(std::move(imp));
    }
    days.push_back(std::move(inst));
  }
  return days;
}

Instance GenerateHardTriangular(int k, int supply) {
  if (k < 1 || supply < 1) {
    throw ValidationError("triangular instances need k >= 1 and supply >= 1");
  }
  Instance inst;
  for (int a = 0; a < k; ++a) {
    inst.advertisers.push_back({a, static_cast<double>(supply)});
  }
  for (int r = 0; r < k; ++r) {
    for (int i = 0; i < supply; ++i) {
      Impression imp;
      imp.id = static_cast<int>(inst.impressions.size());
      imp.values.resize(k);
      for (int a = 0; a < k; ++a) imp.values[a] = a < r ? 0.0 : 1.0;
      inst.impressions.push_back(std::move(imp));
    }
  }
  return inst;
}

}  // namespace expavg
