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

// expavg: command line harness.
//
//   expavg gen synthetic --k 12 --T 2000 --types 10 --sigma 1.5 --out day.csv
//   expavg gen triangular --k 20 --supply 50 --out hard.csv
//   expavg solve --instance day.csv --out optimum.csv
//   expavg predict --instance day.csv --predictor corrupt_random:0.5 --out
//   p.csv expavg run --instance day.csv --predictor optimum --alpha 1 --alpha 5
//   expavg sweep --instance day.csv --predictor corrupt_biased --grid 0,0.5,1
//   expavg curves --out curves.csv
//
// Exit codes: 0 success, 2 invalid input, 3 work guard exceeded.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "expavg/experiment.h"
#include "expavg/gen.h"
#include "expavg/io.h"
#include "expavg/oracles.h"
#include "expavg/predictors.h"
#include "expavg/theory.h"

namespace {

using namespace expavg;

constexpr double kMaxCurveRows = 1e6;

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::string out = "-";
  std::vector<double> alphas;
  std::vector<double> qs;
  double u_max = 0.05;
};

// Writes to --out, or stdout for "-".
template <typename Fn>
void Emit(const std::string& path, Fn&& write) {
  if (path == "-" || path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  write(out);
}

// "inst.csv" -> "inst.day2.csv".
std::string DayPath(const std::string& path, int day) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  const std::string tag = ".day" + std::to_string(day);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + tag;
  }
  return path.substr(0, dot) + tag + path.substr(dot);
}

Instance LoadWithDummy(const std::string& path) {
  Instance inst = ReadInstanceCsvFile(path);
  return inst.has_dummy ? inst : WithDummy(inst);
}

std::optional<Instance> LoadOptional(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return ReadInstanceCsvFile(path);
}

std::vector<PredictorSpec> ParseSpecs(const std::vector<std::string>& texts) {
  std::vector<PredictorSpec> specs;
  for (const std::string& t : texts) specs.push_back(PredictorSpec::Parse(t));
  return specs;
}

// Parses a bare name such as "corrupt_random" as well as "corrupt_random:0".
PredictorSpec ParseSweepBase(const std::string& text) {
  return PredictorSpec::Parse(text.find(':') == std::string::npos ? text + ":0"
                                                                  : text);
}

int Run(int argc, char** argv) {
  CLI::App app{"Exponential averaging with predictions: experiment harness"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out", g.out, "Output path ('-' for stdout)");
  app.add_option("--alpha", g.alphas, "Trade-off parameter (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--q", g.qs, "Mixture probability (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--u-max", g.u_max, "Largest admissible GAP size");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  SyntheticSpec syn;
  std::string kind = "display";
  auto* synthetic =
      gen->add_subcommand("synthetic", "Synthetic typed instance");
  synthetic->add_option("--k", syn.k, "Advertisers");
  synthetic->add_option("--T", syn.num_impressions, "Impressions per day");
  synthetic->add_option("--types", syn.num_types, "Impression types");
  synthetic->add_option("--sigma", syn.sigma, "Display-time spread");
  synthetic->add_option("--rate", syn.value_rate, "Exponential value rate");
  synthetic->add_option("--budget", syn.budget, "Budget (0: ceil(T/2k))");
  synthetic->add_option("--days", syn.days, "Number of days");
  synthetic->add_option("--kind", kind, "display or gap")
      ->check(CLI::IsMember({"display", "gap"}));
  int tri_k = 20;
  int supply = 50;
  auto* triangular =
      gen->add_subcommand("triangular", "Upper-triangular hard instance");
  triangular->add_option("--k", tri_k, "Advertisers");
  triangular->add_option("--supply", supply, "Impressions per type");

  // solve / predict / run / sweep share these.
  std::string instance_path;
  std::string yesterday_path;
  std::vector<std::string> predictor_texts;
  int reps = 1;
  int threads = 1;
  std::optional<double> opt_override;

  auto* solve = app.add_subcommand(
      "solve", "Write the OPT sidecar and optimal prediction");
  solve->add_option("--instance", instance_path)->required();

  auto* predict = app.add_subcommand("predict", "Build one prediction");
  predict->add_option("--instance", instance_path)->required();
  std::string predictor_text;
  predict->add_option("--predictor", predictor_text)->required();
  predict->add_option("--yesterday", yesterday_path);

  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--instance", instance_path)->required();
  run->add_option("--predictor", predictor_texts, "Predictor (repeatable)")
      ->allow_extra_args(false);
  run->add_option("--reps", reps);
  run->add_option("--threads", threads);
  run->add_option("--yesterday", yesterday_path);
  run->add_option("--opt", opt_override,
                  "OPT value to use instead of the oracle");

  auto* sweep = app.add_subcommand("sweep", "Sweep prediction quality");
  sweep->add_option("--instance", instance_path)->required();
  sweep
      ->add_option("--predictor", predictor_texts,
                   "corrupt_random, corrupt_biased or dual_base (repeatable)")
      ->allow_extra_args(false)
      ->required();
  std::vector<double> grid;
  sweep->add_option("--grid", grid, "Swept p or epsilon values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--reps", reps);
  sweep->add_option("--threads", threads);
  sweep->add_option("--opt", opt_override);

  auto* curves = app.add_subcommand("curves", "Robustness/consistency curves");
  double alpha_min = 1.0;
  double alpha_max = 10.0;
  double alpha_step = 0.1;
  std::vector<std::string> budget_texts = {"1", "10", "100", "inf"};
  curves->add_option("--alpha-min", alpha_min);
  curves->add_option("--alpha-max", alpha_max);
  curves->add_option("--alpha-step", alpha_step);
  curves->add_option("--budgets", budget_texts, "Budgets, 'inf' for the limit")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*synthetic) {
    syn.kind = kind == "gap" ? ProblemKind::kGap : ProblemKind::kDisplayAds;
    syn.seed = g.seed;
    syn.max_size = g.u_max;
    const std::vector<Instance> days = GenerateSynthetic(syn);
    if (days.size() == 1) {
      Emit(g.out, [&](std::ostream& o) { WriteInstanceCsv(o, days[0]); });
    } else {
      if (g.out == "-") throw ValidationError("multi-day output needs --out");
      for (int d = 0; d < (int)days.size(); ++d) {
        WriteInstanceCsvFile(DayPath(g.out, d), days[d]);
      }
    }
  } else if (*triangular) {
    const Instance inst = GenerateHardTriangular(tri_k, supply);
    Emit(g.out, [&](std::ostream& o) { WriteInstanceCsv(o, inst); });
  } else if (*solve) {
    const Instance inst = LoadWithDummy(instance_path);
    const std::optional<double> opt = ComputeOpt(inst);
    if (!opt) throw GuardExceeded("instance too large for the GAP oracle");
    WriteOptSidecar(instance_path, *opt);
    const Prediction prediction = BuildOptimum(inst);
    Emit(g.out, [&](std::ostream& o) { WritePredictionCsv(o, prediction); });
  } else if (*predict) {
    const Instance inst = LoadWithDummy(instance_path);
    PredictorSpec spec = PredictorSpec::Parse(predictor_text);
    spec.seed = g.seed;
    const std::optional<Instance> yesterday = LoadOptional(yesterday_path);
    const Prediction prediction =
        BuildPrediction(spec, inst, yesterday ? &*yesterday : nullptr);
    Emit(g.out, [&](std::ostream& o) { WritePredictionCsv(o, prediction); });
  } else if (*run || *sweep) {
    ExperimentConfig config;
    config.instance = ReadInstanceCsvFile(instance_path);
    config.opt_value =
        opt_override ? opt_override : ReadOptSidecar(instance_path);
    config.alphas = g.alphas;
    config.qs = g.qs;
    config.repetitions = reps;
    config.seed = g.seed;
    config.u_max = g.u_max;
    config.threads = threads;
    config.yesterday = LoadOptional(yesterday_path);
    std::vector<MetricsRow> rows;
    if (*run) {
      config.predictors = ParseSpecs(predictor_texts);
      rows = RunExperiment(config);
    } else {
      for (const std::string& t : predictor_texts) {
        config.predictors.push_back(ParseSweepBase(t));
      }
      rows = SweepQuality(config, grid);
    }
    Emit(g.out, [&](std::ostream& o) { WriteMetricsCsv(o, rows); });
  } else if (*curves) {
    std::vector<double> alphas = g.alphas;
    if (alphas.empty()) {
      if (!(alpha_step > 0.0) || alpha_max < alpha_min) {
        throw ValidationError("alpha range is empty");
      }
      const double steps_d = std::round((alpha_max - alpha_min) / alpha_step);
      if (steps_d + 1 > kMaxCurveRows) {
        throw GuardExceeded("alpha grid exceeds 1e6 points");
      }
      const long steps = static_cast<long>(steps_d);
      for (long i = 0; i <= steps; ++i)
        alphas.push_back(alpha_min + i * alpha_step);
    }
    std::vector<Budget> budgets;
    for (const std::string& b : budget_texts) {
      budgets.push_back(b == "inf" ? Budget::Infinite()
                                   : Budget::Finite(ParseInt(b, "budget")));
    }
    if (static_cast<double>(alphas.size()) * budgets.size() > kMaxCurveRows) {
      throw GuardExceeded("curve grid exceeds 1e6 rows");
    }
    const GuaranteeCurve curve = EmitCurve(alphas, budgets);
    Emit(g.out, [&](std::ostream& o) { WriteCurveCsv(o, curve); });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const expavg::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const expavg::GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
