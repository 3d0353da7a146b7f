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

#include <benchmark/benchmark.h>

#include <vector>

#include "expavg/engine.h"
#include "expavg/gap.h"
#include "expavg/gen.h"
#include "expavg/predictors.h"

namespace expavg {
namespace {

Instance Synthetic(ProblemKind kind, int num_impressions) {
  SyntheticSpec spec;
  spec.kind = kind;
  spec.num_impressions = num_impressions;
  spec.seed = 1;
  return WithDummy(GenerateSynthetic(spec)[0]);
}

void BM_DisplayEngine(benchmark::State& state) {
  const Instance inst =
      Synthetic(ProblemKind::kDisplayAds, static_cast<int>(state.range(0)));
  const Prediction prd =
      CorruptRandom(DiscountedGainPrediction(
                        inst, std::vector<double>(inst.num_advertisers(), 0.0)),
                    0.5, inst.num_real_advertisers(), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RunExponentialAveraging(inst, prd, {.alpha = 5.0}).alg_value);
  }
  state.SetItemsProcessed(state.iterations() * inst.num_impressions());
}
BENCHMARK(BM_DisplayEngine)->Arg(2000)->Arg(20000);

void BM_GapEngine(benchmark::State& state) {
  const Instance inst =
      Synthetic(ProblemKind::kGap, static_cast<int>(state.range(0)));
  const Prediction prd = DiscountedGainPrediction(
      inst, std::vector<double>(inst.num_advertisers(), 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RunGapExponentialAveraging(inst, prd, {.alpha = 5.0}).alg_value);
  }
  state.SetItemsProcessed(state.iterations() * inst.num_impressions());
}
BENCHMARK(BM_GapEngine)->Arg(2000)->Arg(20000);

}  // namespace
}  // namespace expavg
