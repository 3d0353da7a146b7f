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

// Exponential averaging with predictions for GAP with free disposal. Every
// capacity is normalized to 1 and sizes are small (u_at <= u_max).

#ifndef EXPAVG_GAP_H_
#define EXPAVG_GAP_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "expavg/types.h"

namespace expavg {

struct RatioSegment {
  double ratio = 0.0;
  double size = 0.0;

  bool operator==(const RatioSegment&) const = default;
};

// Size-weighted record of every impression ever allocated to one advertiser,
// sorted by value-size ratio. Starts as one zero-ratio segment of size 1.
class RatioProfile {
 public:
  RatioProfile();

  // Throws std::invalid_argument unless ratio >= 0 and size > 0.
  void Add(double ratio, double size);

  const std::vector<RatioSegment>& segments() const { return segments_; }
  double total_size() const { return total_size_; }

  // alpha / (e^alpha - 1) times the integral of the ratio against
  // e^{alpha (U - x)} over the top unit window [U - 1, U].
  double Threshold(double alpha) const;

 private:
  std::vector<RatioSegment> segments_;
  double total_size_;
};

struct GapHeldItem {
  double ratio = 0.0;
  int id = 0;
  double value = 0.0;
  double size = 0.0;
};

struct GapAdvertiserState {
  // Sorted by (ratio, id).
  std::vector<GapHeldItem> held;
  // Divisible zero-value filler; held sizes plus filler sum to 1.
  double filler = 1.0;
  double used = 0.0;
  RatioProfile profile;
  std::vector<int> ever_assigned;
};

struct GapState {
  std::vector<GapAdvertiserState> advertisers;
  std::vector<double> thresholds;
};

using GapStepObserver = std::function<void(const StepRecord&, const GapState&)>;

struct GapConfig {
  double alpha = 1.0;
  // Largest admissible size of a real advertiser.
  double max_size = 0.05;
  bool record_trace = false;
  GapStepObserver observer;
};

// Throws ValidationError for a non-GAP instance, a missing dummy, a bad
// prediction, or a real size above config.max_size.
RunResult RunGapExponentialAveraging(const Instance& instance,
                                     const Prediction& prediction,
                                     const GapConfig& config);

// alpha = 1 with the dummy predicted everywhere.
RunResult RunGapWorstCase(const Instance& instance, GapConfig config = {});

// Allocates each impression to its predicted advertiser with ratio-ordered
// disposal. Duals are z_t = max_a w_at and beta = 0.
RunResult FollowGapPrediction(const Instance& instance,
                              const Prediction& prediction);

// One Bernoulli(q) draw from seed: the worst-case run on success, otherwise
// FollowGapPrediction.
RunResult RunGapMixture(const Instance& instance, const Prediction& prediction,
                        double q, std::uint64_t seed, double max_size = 0.05);

struct GapBoundReport {
  bool ok = true;
  // Guarantee factor including the (1 - 2 alpha u_max) allowance.
  double factor = 0.0;
  double required = 0.0;
  double achieved = 0.0;
};

// ALG >= (1 - 2 alpha u_max) (e^alpha - 1) / (alpha e^alpha) * opt_value.
GapBoundReport CheckGapRobustness(const RunResult& result, double alpha,
                                  double opt_value, double u_max);

// ALG >= (1 - 2 alpha u_max) C(alpha, inf) * prd_value.
GapBoundReport CheckGapConsistency(const RunResult& result, double alpha,
                                   double prd_value, double u_max);

}  // namespace expavg

#endif  // EXPAVG_GAP_H_
