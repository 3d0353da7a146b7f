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

#include "expavg/predictors.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "expavg/engine.h"
#include "expavg/gap.h"
#include "expavg/io.h"
#include "expavg/oracles.h"

namespace expavg {
namespace {

void RequireDummy(const Instance& instance) {
  if (!instance.has_dummy) {
    throw ValidationError(
        "predictions need an instance with a dummy advertiser");
  }
}

void RequireProbability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("corruption probability must lie in [0, 1]");
  }
}

// Capacity-feasible rounding: each impression goes to its best positive
// discounted gain among advertisers with room left.
Prediction RoundGap(const Instance& instance,
                    const std::vector<double>& betas) {
  const int k = instance.num_real_advertisers();
  std::vector<double> room(k, 1.0);
  Prediction out{
      std::vector<int>(instance.num_impressions(), instance.dummy_id())};
  std::vector<int> order(k);
  for (int t = 0; t < instance.num_impressions(); ++t) {
    std::iota(order.begin(), order.end(), 0);
    auto gain = [&](int a) {
      return instance.value(a, t) - instance.size(a, t) * betas[a];
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return gain(x) > gain(y); });
    for (int a : order) {
      if (gain(a) <= 0.0) break;
      if (instance.size(a, t) <= room[a]) {
        room[a] -= instance.size(a, t);
        out.assignment[t] = a;
        break;
      }
    }
  }
  return out;
}

}  // namespace

PredictorSpec PredictorSpec::Parse(std::string_view text) {
  PredictorSpec spec;
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos
                                    ? std::string_view()
                                    : text.substr(colon + 1);
  auto number = [&]() {
    if (colon == std::string_view::npos) {
      throw ValidationError("predictor '" + std::string(text) +
                            "' needs a parameter");
    }
    const double v = ParseDouble(tail, "predictor parameter");
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("predictor parameter must lie in [0, 1]");
    }
    return v;
  };
  if (head == "optimum") {
    spec.kind = PredictorKind::kOptimum;
  } else if (head == "corrupt_random") {
    spec.kind = PredictorKind::kCorruptRandom;
    spec.parameter = number();
  } else if (head == "corrupt_biased") {
    spec.kind = PredictorKind::kCorruptBiased;
    spec.parameter = number();
  } else if (head == "dual_base") {
    spec.kind = PredictorKind::kDualBase;
    spec.parameter = number();
  } else if (head == "previous_day") {
    spec.kind = PredictorKind::kPreviousDay;
  } else if (head == "file" && !tail.empty()) {
    spec.kind = PredictorKind::kFromFile;
    spec.path = std::string(tail);
  } else {
    throw ValidationError("unknown predictor '" + std::string(text) + "'");
  }
  if (colon != std::string_view::npos && !spec.has_parameter() &&
      spec.kind != PredictorKind::kFromFile) {
    throw ValidationError("predictor '" + std::string(head) +
                          "' takes no parameter");
  }
  return spec;
}

bool PredictorSpec::has_parameter() const {
  return kind == PredictorKind::kCorruptRandom ||
         kind == PredictorKind::kCorruptBiased ||
         kind == PredictorKind::kDualBase;
}

std::string PredictorSpec::Name() const {
  switch (kind) {
    case PredictorKind::kOptimum:
      return "optimum";
    case PredictorKind::kCorruptRandom:
      return "corrupt_random(p=" + FormatDouble(parameter) + ")";
    case PredictorKind::kCorruptBiased:
      return "corrupt_biased(p=" + FormatDouble(parameter) + ")";
    case PredictorKind::kDualBase:
      return "dual_base(eps=" + FormatDouble(parameter) + ")";
    case PredictorKind::kPreviousDay:
      return "previous_day";
    case PredictorKind::kFromFile:
      return "file(" + path + ")";
  }
  return "unknown";
}

Prediction BuildOptimum(const Instance& instance) {
  RequireDummy(instance);
  if (instance.kind == ProblemKind::kGap && !BruteForceFeasible(instance)) {
    return RoundGap(instance, GapFractionalBound(instance).betas);
  }
  const OfflineSolution opt = instance.kind == ProblemKind::kGap
                                  ? BruteForceOpt(instance)
                                  : SolveDisplayOpt(instance);
  Prediction out{opt.assignment};
  for (int& a : out.assignment) {
    if (a < 0) a = instance.dummy_id();
  }
  return out;
}

Prediction CorruptRandom(const Prediction& prediction, double p,
                         int num_real_advertisers, std::uint64_t seed) {
  RequireProbability(p);
  Prediction out = prediction;
  if (num_real_advertisers < 1) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, num_real_advertisers - 1);
  for (int& a : out.assignment) {
    if (coin(rng) < p) a = pick(rng);
  }
  return out;
}

Prediction CorruptWithPermutation(const Prediction& prediction, double p,
                                  const std::vector<int>& permutation,
                                  std::uint64_t seed) {
  RequireProbability(p);
  const int k = static_cast<int>(permutation.size());
  std::vector<int> check = permutation;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < k; ++i) {
    if (check[i] != i) throw ValidationError("not a permutation");
  }
  Prediction out = prediction;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int& a : out.assignment) {
    const bool hit = coin(rng) < p;
    if (hit && a >= 0 && a < k) a = permutation[a];
  }
  return out;
}

Prediction CorruptBiased(const Prediction& prediction, double p,
                         int num_real_advertisers, std::uint64_t seed) {
  std::vector<int> permutation(std::max(num_real_advertisers, 0));
  std::iota(permutation.begin(), permutation.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(permutation.begin(), permutation.end(), rng);
  return CorruptWithPermutation(prediction, p, permutation, rng());
}

Prediction DiscountedGainPrediction(const Instance& instance,
                                    const std::vector<double>& betas) {
  RequireDummy(instance);
  Prediction out{
      std::vector<int>(instance.num_impressions(), instance.dummy_id())};
  for (int t = 0; t < instance.num_impressions(); ++t) {
    double best = 0.0;
    for (int a = 0; a < instance.num_real_advertisers(); ++a) {
      const double gain = instance.value(a, t) - betas[a];
      if (gain > best) {
        best = gain;
        out.assignment[t] = a;
      }
    }
  }
  return out;
}

Prediction BuildDualBase(const Instance& instance, double epsilon) {
  RequireDummy(instance);
  if (instance.kind != ProblemKind::kDisplayAds) {
    throw ValidationError("dual_base supports Display Ads instances only");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ValidationError("dual_base needs epsilon in (0, 1]");
  }
  const int prefix_len =
      static_cast<int>(std::ceil(epsilon * instance.num_impressions() - 1e-9));
  Instance prefix = instance;
  prefix.impressions.resize(std::min(prefix_len, instance.num_impressions()));
  return DiscountedGainPrediction(instance, SolveScaledDuals(prefix, epsilon));
}

Prediction BuildPreviousDay(const Instance& yesterday, const Instance& today) {
  RequireDummy(today);
  if (yesterday.kind != ProblemKind::kDisplayAds ||
      today.kind != ProblemKind::kDisplayAds) {
    throw ValidationError("previous_day supports Display Ads instances only");
  }
  const int k = today.num_real_advertisers();
  bool same = yesterday.num_real_advertisers() == k;
  for (int a = 0; same && a < k; ++a) {
    same = yesterday.advertisers[a].budget == today.advertisers[a].budget;
  }
  if (!same) {
    throw ValidationError(
        "previous_day needs the same advertisers and budgets");
  }
  std::vector<double> betas = SolveDisplayOpt(yesterday).betas;
  betas.resize(today.num_advertisers(), 0.0);
  return DiscountedGainPrediction(today, betas);
}

double PredictionValue(const Instance& instance, const Prediction& prediction) {
  if (instance.kind == ProblemKind::kGap) {
    return FollowGapPrediction(instance, prediction).alg_value;
  }
  return FollowPrediction(instance, prediction).alg_value;
}

Prediction BuildPrediction(const PredictorSpec& spec, const Instance& instance,
                           const Instance* yesterday) {
  const int k = instance.num_real_advertisers();
  switch (spec.kind) {
    case PredictorKind::kOptimum:
      return BuildOptimum(instance);
    case PredictorKind::kCorruptRandom:
      return CorruptRandom(BuildOptimum(instance), spec.parameter, k,
                           spec.seed);
    case PredictorKind::kCorruptBiased:
      return CorruptBiased(BuildOptimum(instance), spec.parameter, k,
                           spec.seed);
    case PredictorKind::kDualBase:
      return BuildDualBase(instance, spec.parameter);
    case PredictorKind::kPreviousDay:
      if (yesterday == nullptr) {
        throw ValidationError("previous_day needs yesterday's instance");
      }
      return BuildPreviousDay(*yesterday, instance);
    case PredictorKind::kFromFile: {
      Prediction p = ReadPredictionCsvFile(spec.path);
      RequirePrediction(instance, p);
      return p;
    }
  }
  throw ValidationError("unknown predictor");
}

}  // namespace expavg
