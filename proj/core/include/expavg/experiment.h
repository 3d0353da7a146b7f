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

// Experiment driver: runs every (predictor, alpha, repetition) combination on
// one instance and reports ALG, OPT, PRD and the derived ratios.

#ifndef EXPAVG_EXPERIMENT_H_
#define EXPAVG_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "expavg/io.h"
#include "expavg/predictors.h"
#include "expavg/types.h"

namespace expavg {

struct ExperimentConfig {
  // With or without a dummy; one is added when missing.
  Instance instance;
  // Skips the oracle when set.
  std::optional<double> opt_value;
  std::vector<PredictorSpec> predictors;
  // Empty means {1} (RunExperiment) or {5} (SweepQuality).
  std::vector<double> alphas;
  // Mixture probabilities. Empty pairs q = 1 / alpha with every alpha.
  std::vector<double> qs;
  int repetitions = 1;
  std::uint64_t seed = 0;
  // Size cap for the GAP engine.
  double u_max = 0.05;
  // Needed by previous_day.
  std::optional<Instance> yesterday;
  // Worker threads for row computation; output order does not depend on it.
  int threads = 1;
};

// Throws ValidationError on alpha < 1, q outside [0, 1] or repetitions < 1.
void ValidateExperimentConfig(const ExperimentConfig& config);

// OPT of the instance: the flow optimum for Display Ads; for GAP the
// enumerated optimum when small, else the fractional upper bound. nullopt
// when a guard trips.
std::optional<double> ComputeOpt(const Instance& instance);

// Seed of one row.
std::uint64_t RowSeed(std::uint64_t master, const std::string& name,
                      double alpha, int rep);

// Rows in order: "worst_case"; then every (predictor, alpha, rep) in config
// order; then "mixture/<predictor>" for every (predictor, q, rep).
std::vector<MetricsRow> RunExperiment(ExperimentConfig config);

// Replaces each parameterized predictor by one copy per grid value and runs
// the experiment. Alphas default to {5} when the config leaves them empty.
// Throws ValidationError for grid values outside [0, 1] or predictors without
// a parameter.
std::vector<MetricsRow> SweepQuality(ExperimentConfig config,
                                     const std::vector<double>& grid);

}  // namespace expavg

#endif  // EXPAVG_EXPERIMENT_H_
