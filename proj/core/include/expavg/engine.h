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

// Exponential averaging with predictions for online Display Ads with free
// disposal, plus the worst-case and random-mixture baselines.

#ifndef EXPAVG_ENGINE_H_
#define EXPAVG_ENGINE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "expavg/types.h"

namespace expavg {

// Argmax ties go to the lowest advertiser id; ties in the selection rule go to
// the prediction.
enum class TiePolicy { kLowestId };

enum class ConstantsMode {
  // e_B and alpha_B as defined for integral budgets.
  kFiniteBudget,
  // e replaces e_{B_a} in the threshold update and alpha replaces alpha_B in
  // the selection rule. Used to compare against the GAP engine.
  kContinuousLimit,
};

// Called after every step with the record of that step and the state it left.
using StepObserver =
    std::function<void(const StepRecord&, const AllocationState&)>;

struct EngineConfig {
  double alpha = 1.0;
  TiePolicy tie_policy = TiePolicy::kLowestId;
  bool record_trace = false;
  ConstantsMode constants = ConstantsMode::kFiniteBudget;
  StepObserver observer;
};

// Runs the algorithm on a Display Ads instance that carries a dummy. Throws
// ValidationError on a missing dummy, a GAP instance, or a prediction of the
// wrong length or with out-of-range entries; std::invalid_argument on
// alpha < 1.
RunResult RunExponentialAveraging(const Instance& instance,
                                  const Prediction& prediction,
                                  const EngineConfig& config);

// alpha = 1 with the dummy as the prediction for every impression. The alpha
// in config is ignored.
RunResult RunWorstCase(const Instance& instance, EngineConfig config = {});

// Allocates every impression to its predicted advertiser, keeping the top B_a
// values per advertiser. Duals are z_t = max_a w_at and beta = 0.
RunResult FollowPrediction(const Instance& instance,
                           const Prediction& prediction,
                           bool record_trace = false);

// One Bernoulli(q) draw from seed: on success the worst-case run, otherwise
// FollowPrediction. Throws std::invalid_argument for q outside [0, 1].
RunResult RunMixture(const Instance& instance, const Prediction& prediction,
                     double q, std::uint64_t seed);

// The prediction constant 'alpha_B' used by the selection rule.
double SelectionFactor(double alpha, int min_budget, ConstantsMode mode);

// Threshold of a sorted held list under the given alpha. Exposed for tests.
double ExponentialAverage(const std::vector<HeldImpression>& held, double alpha,
                          ConstantsMode mode);

struct CertificateReport {
  bool feasible = true;
  bool bound_holds = true;
  // min over (a, t) of z_t + beta_a - w_at.
  double worst_margin = 0.0;
  double dual_objective = 0.0;
  double ratio = 0.0;
  std::vector<std::string> problems;

  bool ok() const { return feasible && bound_holds; }
};

// Checks z_t + beta_a >= w_at - tol for every pair and
// ALG >= R(alpha, B) * (sum_a B_a beta_a + sum_t z_t) - tol * T with
// tol = 1e-9 * max w.
CertificateReport CheckDualCertificate(const Instance& instance,
                                       const RunResult& result);

}  // namespace expavg

#endif  // EXPAVG_ENGINE_H_
