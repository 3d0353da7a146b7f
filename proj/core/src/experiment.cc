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

#include "expavg/experiment.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "expavg/engine.h"
#include "expavg/gap.h"
#include "expavg/oracles.h"
#include "expavg/random.h"

namespace expavg {
namespace {

struct Task {
  PredictorSpec spec;
  std::string name;
  double alpha = NAN;
  double q = NAN;
  int rep = 0;
  bool mixture = false;
};

double Ratio(double num, double den) { return den > 0.0 ? num / den : NAN; }

bool NeedsOptimumBase(PredictorKind kind) {
  return kind == PredictorKind::kOptimum ||
         kind == PredictorKind::kCorruptRandom ||
         kind == PredictorKind::kCorruptBiased;
}

class RowRunner {
 public:
  RowRunner(const ExperimentConfig& config, const Instance& instance,
            std::optional<double> opt)
      : config_(config), instance_(instance), opt_(opt) {
    for (const PredictorSpec& spec : config.predictors) {
      if (NeedsOptimumBase(spec.kind)) {
        optimum_ = BuildOptimum(instance);
        break;
      }
    }
  }

  MetricsRow Run(const Task& task) const {
    const std::uint64_t seed =
        RowSeed(config_.seed, task.mixture ? "mixture/" + task.name : task.name,
                task.mixture ? task.q : task.alpha, task.rep);
    PredictorSpec spec = task.spec;
    spec.seed = seed;
    const Prediction prediction = Predict(spec);
    const bool gap = instance_.kind == ProblemKind::kGap;

    RunResult run;
    if (task.mixture) {
      const std::uint64_t coin = Hash64({seed, HashString("coin")});
      run = gap ? RunGapMixture(instance_, prediction, task.q, coin,
                                config_.u_max)
                : RunMixture(instance_, prediction, task.q, coin);
    } else if (gap) {
      GapConfig gc;
      gc.alpha = task.alpha;
      gc.max_size = config_.u_max;
      run = RunGapExponentialAveraging(instance_, prediction, gc);
    } else {
      EngineConfig ec;
      ec.alpha = task.alpha;
      run = RunExponentialAveraging(instance_, prediction, ec);
    }

    MetricsRow row;
    row.predictor = task.mixture ? "mixture/" + task.name : task.name;
    row.alpha = task.alpha;
    row.q = task.q;
    row.rep = task.rep;
    row.alg = run.alg_value;
    row.opt = opt_.value_or(NAN);
    row.prd = PredictionValue(instance_, prediction);
    row.robustness = opt_ ? Ratio(row.alg, *opt_) : NAN;
    row.consistency = Ratio(row.alg, row.prd);
    row.followed_fraction = instance_.num_impressions() > 0
                                ? static_cast<double>(run.followed_steps) /
                                      instance_.num_impressions()
                                : NAN;
    return row;
  }

 private:
  Prediction Predict(const PredictorSpec& spec) const {
    const int k = instance_.num_real_advertisers();
    switch (spec.kind) {
      case PredictorKind::kOptimum:
        return optimum_;
      case PredictorKind::kCorruptRandom:
        return CorruptRandom(optimum_, spec.parameter, k, spec.seed);
      case PredictorKind::kCorruptBiased:
        return CorruptBiased(optimum_, spec.parameter, k, spec.seed);
      default: {
        const Instance* yesterday =
            config_.yesterday ? &*config_.yesterday : nullptr;
        return BuildPrediction(spec, instance_, yesterday);
      }
    }
  }

  const ExperimentConfig& config_;
  const Instance& instance_;
  std::optional<double> opt_;
  Prediction optimum_;
};

}  // namespace

void ValidateExperimentConfig(const ExperimentConfig& config) {
  for (double a : config.alphas) {
    if (!(a >= 1.0) || !std::isfinite(a)) {
      throw ValidationError("alpha values must be finite and >= 1");
    }
  }
  for (double q : config.qs) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw ValidationError("q values must lie in [0, 1]");
    }
  }
  if (config.repetitions < 1) {
    throw ValidationError("repetitions must be >= 1");
  }
  if (config.threads < 1) throw ValidationError("threads must be >= 1");
}

std::optional<double> ComputeOpt(const Instance& instance) {
  try {
    if (instance.kind == ProblemKind::kDisplayAds) {
      return SolveDisplayOpt(instance).value;
    }
    if (BruteForceFeasible(instance)) return BruteForceOpt(instance).value;
    return GapFractionalBound(instance).upper;
  } catch (const GuardExceeded&) {
    return std::nullopt;
  }
}

std::uint64_t RowSeed(std::uint64_t master, const std::string& name,
                      double alpha, int rep) {
  return Hash64({master, HashString(name), HashDouble(alpha),
                 static_cast<std::uint64_t>(rep)});
}

std::vector<MetricsRow> RunExperiment(ExperimentConfig config) {
  ValidateExperimentConfig(config);
  if (config.alphas.empty()) config.alphas = {1.0};
  const Instance instance =
      config.instance.has_dummy ? config.instance : WithDummy(config.instance);
  RequireValid(instance);
  const std::optional<double> opt =
      config.opt_value ? config.opt_value : ComputeOpt(instance);

  std::vector<MetricsRow> rows;
  {
    const RunResult wc = instance.kind == ProblemKind::kGap
                             ? [&] {
                                 GapConfig gc;
                                 gc.max_size = config.u_max;
                                 return RunGapWorstCase(instance, gc);
                               }()
                             : RunWorstCase(instance);
    MetricsRow row;
    row.predictor = "worst_case";
    row.alpha = 1.0;
    row.q = NAN;
    row.rep = 0;
    row.alg = wc.alg_value;
    row.opt = opt.value_or(NAN);
    row.prd = NAN;
    row.robustness = opt ? Ratio(wc.alg_value, *opt) : NAN;
    row.consistency = NAN;
    row.followed_fraction = NAN;
    rows.push_back(row);
  }

  std::vector<Task> tasks;
  for (const PredictorSpec& spec : config.predictors) {
    for (double alpha : config.alphas) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        tasks.push_back({spec, spec.Name(), alpha, NAN, rep, false});
      }
    }
  }
  for (const PredictorSpec& spec : config.predictors) {
    if (config.qs.empty()) {
      for (double alpha : config.alphas) {
        for (int rep = 0; rep < config.repetitions; ++rep) {
          tasks.push_back({spec, spec.Name(), alpha, 1.0 / alpha, rep, true});
        }
      }
    } else {
      for (double q : config.qs) {
        for (int rep = 0; rep < config.repetitions; ++rep) {
          tasks.push_back({spec, spec.Name(), NAN, q, rep, true});
        }
      }
    }
  }

  const RowRunner runner(config, instance, opt);
  std::vector<MetricsRow> computed(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        computed[i] = runner.Run(tasks[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const int workers =
      std::min<int>(config.threads, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  rows.insert(rows.end(), computed.begin(), computed.end());
  return rows;
}

std::vector<MetricsRow> SweepQuality(ExperimentConfig config,
                                     const std::vector<double>& grid) {
  for (double v : grid) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("sweep values must lie in [0, 1]");
    }
  }
  std::vector<PredictorSpec> expanded;
  for (const PredictorSpec& spec : config.predictors) {
    if (!spec.has_parameter()) {
      throw ValidationError("predictor " + spec.Name() +
                            " has no parameter to sweep");
    }
    for (double v : grid) {
      if (spec.kind == PredictorKind::kDualBase && v == 0.0) {
        throw ValidationError("dual_base needs epsilon > 0");
      }
      PredictorSpec copy = spec;
      copy.parameter = v;
      expanded.push_back(copy);
    }
  }
  config.predictors = std::move(expanded);
  if (config.alphas.empty()) config.alphas = {5.0};
  return RunExperiment(config);
}

}  // namespace expavg
