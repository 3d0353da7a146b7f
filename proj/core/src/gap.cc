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

#include "expavg/gap.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "expavg/theory.h"

namespace expavg {
namespace {

constexpr double kCapacitySlack = 1e-12;

bool ByRatioThenId(const GapHeldItem& x, const GapHeldItem& y) {
  if (x.ratio != y.ratio) return x.ratio < y.ratio;
  return x.id < y.id;
}

void RequireGap(const Instance& instance) {
  if (instance.kind != ProblemKind::kGap) {
    throw ValidationError("the GAP engine needs a GAP instance");
  }
}

// Frees space for an item of the given size, then stores it. Filler goes
// first, then whole items of least ratio. Returns the value disposed.
double Place(GapAdvertiserState& adv, GapHeldItem item) {
  double disposed = 0.0;
  std::size_t drop = 0;
  while (adv.used + item.size > 1.0 + kCapacitySlack &&
         drop < adv.held.size()) {
    adv.used -= adv.held[drop].size;
    disposed += adv.held[drop].value;
    ++drop;
  }
  adv.held.erase(adv.held.begin(), adv.held.begin() + drop);
  if (drop > 0) {
    // Recompute to keep rounding drift from accumulating.
    adv.used = 0.0;
    for (const GapHeldItem& h : adv.held) adv.used += h.size;
  }
  adv.held.insert(
      std::upper_bound(adv.held.begin(), adv.held.end(), item, ByRatioThenId),
      item);
  adv.used += item.size;
  adv.filler = std::max(0.0, 1.0 - adv.used);
  adv.ever_assigned.push_back(item.id);
  return disposed;
}

GapState InitialState(const Instance& instance) {
  GapState state;
  state.advertisers.resize(instance.num_advertisers());
  state.thresholds.assign(instance.num_advertisers(), 0.0);
  return state;
}

void Finish(const Instance& instance, const GapState& state,
            RunResult& result) {
  result.final_allocation.assign(instance.num_advertisers(), {});
  for (int a = 0; a < instance.num_advertisers(); ++a) {
    if (instance.is_dummy(a)) continue;
    for (const GapHeldItem& h : state.advertisers[a].held) {
      result.final_allocation[a].push_back(h.id);
    }
    std::sort(result.final_allocation[a].begin(),
              result.final_allocation[a].end());
  }
  result.alg_value = ValueOf(instance, result.final_allocation);
  result.thresholds = state.thresholds;
}

GapBoundReport Compare(double achieved, double factor, double reference) {
  GapBoundReport report;
  report.factor = factor;
  report.required = factor * reference;
  report.achieved = achieved;
  report.ok = achieved >= report.required - 1e-9 * std::abs(report.required);
  return report;
}

double Allowance(double alpha, double u_max) {
  return std::max(0.0, 1.0 - 2.0 * alpha * u_max);
}

}  // namespace

RatioProfile::RatioProfile() : segments_{{0.0, 1.0}}, total_size_(1.0) {}

void RatioProfile::Add(double ratio, double size) {
  if (!(ratio >= 0.0) || !(size > 0.0)) {
    throw std::invalid_argument("segments need ratio >= 0 and size > 0");
  }
  const RatioSegment seg{ratio, size};
  segments_.insert(
      std::upper_bound(segments_.begin(), segments_.end(), seg,
                       [](const RatioSegment& x, const RatioSegment& y) {
                         return x.ratio < y.ratio;
                       }),
      seg);
  total_size_ += size;
}

double RatioProfile::Threshold(double alpha) const {
  const double norm = std::expm1(alpha);
  double beta = 0.0;
  double near = 0.0;  // distance of the segment's upper end from U
  for (auto it = segments_.rbegin(); it != segments_.rend() && near < 1.0;
       ++it) {
    const double far = std::min(1.0, near + it->size);
    beta += it->ratio * std::exp(alpha * near) *
            std::expm1(alpha * (far - near)) / norm;
    near = far;
  }
  return beta;
}

RunResult RunGapExponentialAveraging(const Instance& instance,
                                     const Prediction& prediction,
                                     const GapConfig& config) {
  RequireGap(instance);
  if (!instance.has_dummy) {
    throw ValidationError("the GAP engine needs an instance with a dummy");
  }
  if (!(config.alpha >= 1.0) || !std::isfinite(config.alpha)) {
    throw std::invalid_argument("alpha must be a finite real >= 1");
  }
  RequireValid(instance);
  RequirePrediction(instance, prediction);
  const int k = instance.num_advertisers();
  const int num_t = instance.num_impressions();
  for (int t = 0; t < num_t; ++t) {
    for (int a = 0; a < instance.num_real_advertisers(); ++a) {
      if (instance.size(a, t) > config.max_size) {
        throw ValidationError("size of impression " + std::to_string(t) +
                              " for advertiser " + std::to_string(a) +
                              " exceeds u_max");
      }
    }
  }

  const int dummy = instance.dummy_id();
  GapState state = InitialState(instance);
  RunResult result;
  result.alpha = config.alpha;
  result.impression_duals.assign(num_t, 0.0);

  for (int t = 0; t < num_t; ++t) {
    const Impression& imp = instance.impressions[t];
    auto gain = [&](int a) {
      return imp.values[a] - imp.sizes[a] * state.thresholds[a];
    };
    int greedy = 0;
    double best_gain = gain(0);
    for (int a = 1; a < k; ++a) {
      const double g = gain(a);
      if (g > best_gain) {
        best_gain = g;
        greedy = a;
      }
    }
    const int predicted = prediction[t];
    const bool follow = config.alpha * gain(predicted) >= best_gain;
    const int chosen = follow ? predicted : greedy;

    StepRecord step;
    step.t = t;
    step.predicted = predicted;
    step.greedy = greedy;
    step.chosen = chosen;
    step.followed_prediction = follow;
    if (chosen != dummy) {
      const double w = imp.values[chosen];
      const double u = imp.sizes[chosen];
      const double before = state.thresholds[chosen];
      GapAdvertiserState& adv = state.advertisers[chosen];
      step.disposed_value = Place(adv, {w / u, t, w, u});
      adv.profile.Add(w / u, u);
      state.thresholds[chosen] = adv.profile.Threshold(config.alpha);
      step.delta_primal = w - step.disposed_value;
      step.impression_dual = std::max(0.0, config.alpha * (w - u * before));
      step.delta_dual =
          state.thresholds[chosen] - before + step.impression_dual;
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

RunResult RunGapWorstCase(const Instance& instance, GapConfig config) {
  RequireGap(instance);
  if (!instance.has_dummy) {
    throw ValidationError("the GAP engine needs an instance with a dummy");
  }
  config.alpha = 1.0;
  Prediction sink{
      std::vector<int>(instance.num_impressions(), instance.dummy_id())};
  return RunGapExponentialAveraging(instance, sink, config);
}

RunResult FollowGapPrediction(const Instance& instance,
                              const Prediction& prediction) {
  RequireGap(instance);
  RequirePrediction(instance, prediction);
  const int num_t = instance.num_impressions();
  GapState state = InitialState(instance);
  RunResult result;
  result.impression_duals.assign(num_t, 0.0);
  for (int t = 0; t < num_t; ++t) {
    const int a = prediction[t];
    const Impression& imp = instance.impressions[t];
    if (!instance.is_dummy(a)) {
      const double w = imp.values[a];
      const double u = imp.sizes[a];
      Place(state.advertisers[a], {w / u, t, w, u});
    }
    result.impression_duals[t] =
        imp.values.empty()
            ? 0.0
            : *std::max_element(imp.values.begin(), imp.values.end());
  }
  result.followed_steps = num_t;
  Finish(instance, state, result);
  return result;
}

RunResult RunGapMixture(const Instance& instance, const Prediction& prediction,
                        double q, std::uint64_t seed, double max_size) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("mixture probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < q) {
    GapConfig config;
    config.max_size = max_size;
    return RunGapWorstCase(instance, config);
  }
  return FollowGapPrediction(instance, prediction);
}

GapBoundReport CheckGapRobustness(const RunResult& result, double alpha,
                                  double opt_value, double u_max) {
  return Compare(
      result.alg_value,
      Allowance(alpha, u_max) * Robustness(alpha, Budget::Infinite()),
      opt_value);
}

GapBoundReport CheckGapConsistency(const RunResult& result, double alpha,
                                   double prd_value, double u_max) {
  return Compare(
      result.alg_value,
      Allowance(alpha, u_max) * Consistency(alpha, Budget::Infinite()),
      prd_value);
}

}  // namespace expavg
