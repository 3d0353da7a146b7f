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

#include "expavg/engine.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "expavg/theory.h"

namespace expavg {
namespace {

double LogE(int budget, ConstantsMode mode) {
  if (mode == ConstantsMode::kContinuousLimit) return 1.0;
  return LogDiscretizedE(Budget::Finite(budget));
}

// Line-13 coefficients for a budget: weights[i] multiplies the (i+1)-th
// smallest held value.
std::vector<double> AveragingWeights(int budget, double alpha,
                                     ConstantsMode mode) {
  const double log_e = LogE(budget, mode);
  const double b = static_cast<double>(budget);
  const double scale =
      std::expm1(alpha * log_e / b) / std::expm1(alpha * log_e);
  std::vector<double> weights(budget);
  for (int i = 0; i < budget; ++i) {
    weights[i] = scale * std::exp(alpha * log_e * (budget - 1 - i) / b);
  }
  return weights;
}

double Average(const std::vector<HeldImpression>& held,
               const std::vector<double>& weights) {
  double beta = 0.0;
  for (std::size_t i = 0; i < held.size(); ++i) {
    beta += weights[i] * held[i].value;
  }
  return beta;
}

void RequireDisplayWithDummy(const Instance& instance) {
  if (instance.kind != ProblemKind::kDisplayAds) {
    throw ValidationError(
        "the Display Ads engine needs a Display Ads instance");
  }
  if (!instance.has_dummy) {
    throw ValidationError(
        "the engine needs an instance with a dummy advertiser");
  }
}

// Inserts (value, t) and drops the least held impression. Returns the
// dropped one.
HeldImpression InsertAndDispose(std::vector<HeldImpression>& held,
                                HeldImpression item) {
  held.insert(std::upper_bound(held.begin(), held.end(), item), item);
  const HeldImpression dropped = held.front();
  held.erase(held.begin());
  return dropped;
}

AllocationState InitialState(const Instance& instance) {
  const int k = instance.num_advertisers();
  AllocationState state;
  state.held.resize(k);
  state.thresholds.assign(k, 0.0);
  state.ever_assigned.resize(k);
  int next_filler = instance.num_impressions();
  for (int a = 0; a < instance.num_real_advertisers(); ++a) {
    state.held[a].reserve(instance.budget(a) + 1);
    for (int i = 0; i < instance.budget(a); ++i) {
      state.held[a].push_back({0.0, next_filler++});
    }
  }
  return state;
}

void Finish(const Instance& instance, const AllocationState& state,
            RunResult& result) {
  const int num_t = instance.num_impressions();
  result.final_allocation.assign(instance.num_advertisers(), {});
  for (int a = 0; a < instance.num_real_advertisers(); ++a) {
    for (const HeldImpression& h : state.held[a]) {
      if (h.id < num_t) result.final_allocation[a].push_back(h.id);
    }
    std::sort(result.final_allocation[a].begin(),
              result.final_allocation[a].end());
  }
  result.alg_value = ValueOf(instance, result.final_allocation);
  result.thresholds = state.thresholds;
}

}  // namespace

double SelectionFactor(double alpha, int min_budget, ConstantsMode mode) {
  if (mode == ConstantsMode::kContinuousLimit || min_budget < 1) {
    DiscretizedAlpha(alpha, Budget::Infinite());  // validates alpha
    return alpha;
  }
  return DiscretizedAlpha(alpha, Budget::Finite(min_budget));
}

double ExponentialAverage(const std::vector<HeldImpression>& held, double alpha,
                          ConstantsMode mode) {
  if (held.empty()) return 0.0;
  return Average(held,
                 AveragingWeights(static_cast<int>(held.size()), alpha, mode));
}

RunResult RunExponentialAveraging(const Instance& instance,
                                  const Prediction& prediction,
                                  const EngineConfig& config) {
  RequireDisplayWithDummy(instance);
  RequirePrediction(instance, prediction);
  const double factor = SelectionFactor(
      config.alpha, instance.min_real_budget(), config.constants);

  const int k = instance.num_advertisers();
  const int num_t = instance.num_impressions();
  const int dummy = instance.dummy_id();
  std::vector<std::vector<double>> weights(k);
  for (int a = 0; a < instance.num_real_advertisers(); ++a) {
    weights[a] =
        AveragingWeights(instance.budget(a), config.alpha, config.constants);
  }

  AllocationState state = InitialState(instance);
  RunResult result;
  result.alpha = config.alpha;
  result.impression_duals.assign(num_t, 0.0);
  if (config.record_trace) result.trace.reserve(num_t);

  for (int t = 0; t < num_t; ++t) {
    const std::vector<double>& w = instance.impressions[t].values;
    int greedy = 0;
    double best_gain = w[0] - state.thresholds[0];
    for (int a = 1; a < k; ++a) {
      const double gain = w[a] - state.thresholds[a];
      if (gain > best_gain) {
        best_gain = gain;
        greedy = a;
      }
    }
    const int predicted = prediction[t];
    const bool follow =
        factor * (w[predicted] - state.thresholds[predicted]) >= best_gain;
    const int chosen = follow ? predicted : greedy;

    StepRecord step;
    step.t = t;
    step.predicted = predicted;
    step.greedy = greedy;
    step.chosen = chosen;
    step.followed_prediction = follow;
    if (chosen != dummy) {
      const double before = state.thresholds[chosen];
      const HeldImpression dropped =
          InsertAndDispose(state.held[chosen], {w[chosen], t});
      state.ever_assigned[chosen].push_back(t);
      state.thresholds[chosen] = Average(state.held[chosen], weights[chosen]);
      step.disposed_value = dropped.value;
      step.delta_primal = w[chosen] - dropped.value;
      step.impression_dual = std::max(0.0, factor * (w[chosen] - before));
      step.delta_dual =
          instance.budget(chosen) * (state.thresholds[chosen] - before) +
          step.impression_dual;
      step.threshold_after = state.thresholds[chosen];
    }
    result.impression_duals[t] = step.impression_dual;
    if (follow) ++result.followed_steps;
    if (config.observer) config.observer(step, state);
    if (config.record_trace) result.trace.push_back(step);
  }
  Finish(instance, state, result);
  return result;
}

RunResult RunWorstCase(const Instance& instance, EngineConfig config) {
  RequireDisplayWithDummy(instance);
  config.alpha = 1.0;
  Prediction sink{
      std::vector<int>(instance.num_impressions(), instance.dummy_id())};
  return RunExponentialAveraging(instance, sink, config);
}

RunResult FollowPrediction(const Instance& instance,
                           const Prediction& prediction, bool record_trace) {
  if (instance.kind != ProblemKind::kDisplayAds) {
    throw ValidationError("FollowPrediction needs a Display Ads instance");
  }
  RequirePrediction(instance, prediction);
  const int num_t = instance.num_impressions();
  AllocationState state = InitialState(instance);
  RunResult result;
  result.impression_duals.assign(num_t, 0.0);
  for (int t = 0; t < num_t; ++t) {
    const int a = prediction[t];
    StepRecord step;
    step.t = t;
    step.predicted = a;
    step.greedy = a;
    step.chosen = a;
    step.followed_prediction = true;
    if (!instance.is_dummy(a)) {
      const double w = instance.value(a, t);
      const HeldImpression dropped = InsertAndDispose(state.held[a], {w, t});
      state.ever_assigned[a].push_back(t);
      step.disposed_value = dropped.value;
      step.delta_primal = w - dropped.value;
    }
    // beta = 0 and z_t = max_a w_at is always a feasible dual.
    const auto& w = instance.impressions[t].values;
    result.impression_duals[t] =
        w.empty() ? 0.0 : *std::max_element(w.begin(), w.end());
    step.impression_dual = result.impression_duals[t];
    step.delta_dual = step.impression_dual;
    if (record_trace) result.trace.push_back(step);
  }
  result.followed_steps = num_t;
  Finish(instance, state, result);
  return result;
}

RunResult RunMixture(const Instance& instance, const Prediction& prediction,
                     double q, std::uint64_t seed) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("mixture probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  const bool worst_case =
      std::uniform_real_distribution<double>(0.0, 1.0)(rng) < q;
  if (worst_case) return RunWorstCase(instance);
  RequireDisplayWithDummy(instance);
  return FollowPrediction(instance, prediction);
}

CertificateReport CheckDualCertificate(const Instance& instance,
                                       const RunResult& result) {
  CertificateReport report;
  const int k = instance.num_advertisers();
  const int num_t = instance.num_impressions();
  if ((int)result.thresholds.size() != k ||
      (int)result.impression_duals.size() != num_t) {
    report.feasible = false;
    report.bound_holds = false;
    report.problems.push_back("dual vectors have the wrong length");
    return report;
  }
  const double tol = 1e-9 * instance.max_value();
  report.worst_margin = num_t > 0 && k > 0 ? INFINITY : 0.0;
  for (int t = 0; t < num_t; ++t) {
    for (int a = 0; a < k; ++a) {
      const double margin = result.impression_duals[t] +
                            instance.size(a, t) * result.thresholds[a] -
                            instance.value(a, t);
      report.worst_margin = std::min(report.worst_margin, margin);
      if (margin < -tol && report.feasible) {
        report.feasible = false;
        report.problems.push_back("dual infeasible at impression " +
                                  std::to_string(t) + ", advertiser " +
                                  std::to_string(a));
      }
    }
  }
  double dual = 0.0;
  for (int a = 0; a < k; ++a) {
    if (instance.is_dummy(a)) continue;
    dual += instance.advertisers[a].budget * result.thresholds[a];
  }
  for (double z : result.impression_duals) dual += z;
  report.dual_objective = dual;
  const int b = instance.min_real_budget();
  report.ratio = b >= 1 ? Robustness(result.alpha, Budget::Finite(b)) : 1.0;
  if (result.alg_value < report.ratio * dual - tol * num_t) {
    report.bound_holds = false;
    report.problems.push_back(
        "ALG is below R(alpha, B) times the dual objective");
  }
  return report;
}

}  // namespace expavg
