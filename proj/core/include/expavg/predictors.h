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

// Prediction constructions: the offline optimum, random and permutation
// corruptions of it, discounted-gain predictions from sampled or previous-day
// duals, and predictions read from a file.

#ifndef EXPAVG_PREDICTORS_H_
#define EXPAVG_PREDICTORS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "expavg/types.h"

namespace expavg {

enum class PredictorKind {
  kOptimum,
  kCorruptRandom,
  kCorruptBiased,
  kDualBase,
  kPreviousDay,
  kFromFile,
};

struct PredictorSpec {
  PredictorKind kind = PredictorKind::kOptimum;
  // Corruption probability p or sample fraction epsilon; unused otherwise.
  double parameter = 0.0;
  std::string path;
  std::uint64_t seed = 0;

  // Accepts optimum, corrupt_random:<p>, corrupt_biased:<p>, dual_base:<eps>,
  // previous_day and file:<path>. Throws ValidationError otherwise.
  static PredictorSpec Parse(std::string_view text);
  // Row label, e.g. "corrupt_random(p=0.5)".
  std::string Name() const;
  bool has_parameter() const;
};

// Offline optimum with unassigned impressions sent to the dummy. GAP uses
// enumeration when it is small enough, else a capacity-feasible rounding
// guided by the fractional duals.
Prediction BuildOptimum(const Instance& instance);

// Each entry is replaced with probability p by a uniform real advertiser.
Prediction CorruptRandom(const Prediction& prediction, double p,
                         int num_real_advertisers, std::uint64_t seed);

// One uniform permutation pi of the real advertisers is drawn from seed; each
// entry naming a real advertiser is replaced by pi of it with probability p.
Prediction CorruptBiased(const Prediction& prediction, double p,
                         int num_real_advertisers, std::uint64_t seed);

// CorruptBiased with a caller-chosen permutation.
Prediction CorruptWithPermutation(const Prediction& prediction, double p,
                                  const std::vector<int>& permutation,
                                  std::uint64_t seed);

// argmax_a (w_at - beta_a) when positive, else the dummy; ties to lowest id.
Prediction DiscountedGainPrediction(const Instance& instance,
                                    const std::vector<double>& betas);

// Duals of the first ceil(epsilon T) impressions with budgets scaled by
// epsilon, then discounted-gain allocation of every impression.
Prediction BuildDualBase(const Instance& instance, double epsilon);

// Unscaled duals of yesterday's instance applied to today's impressions.
// Throws ValidationError when the real advertisers or budgets differ.
Prediction BuildPreviousDay(const Instance& yesterday, const Instance& today);

// Value of following the prediction with free disposal (top B_a values per
// advertiser, or ratio-ordered disposal for GAP).
double PredictionValue(const Instance& instance, const Prediction& prediction);

// Builds any spec. previous_day needs yesterday; file reads spec.path.
Prediction BuildPrediction(const PredictorSpec& spec, const Instance& instance,
                           const Instance* yesterday = nullptr);

}  // namespace expavg

#endif  // EXPAVG_PREDICTORS_H_
