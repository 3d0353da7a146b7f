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

#include "expavg/oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "expavg/min_cost_flow.h"

namespace expavg {
namespace {

constexpr double kCapacitySlack = 1e-9;

double MaxGain(const Instance& instance, int t,
               const std::vector<double>& betas) {
  double best = 0.0;
  for (int a = 0; a < instance.num_real_advertisers(); ++a) {
    best =
        std::max(best, instance.value(a, t) - instance.size(a, t) * betas[a]);
  }
  return best;
}

double DualObjective(const Instance& instance, const OfflineSolution& s) {
  double total = 0.0;
  for (int a = 0; a < instance.num_real_advertisers(); ++a) {
    total += instance.advertisers[a].budget * s.betas[a];
  }
  for (double z : s.zs) total += z;
  return total;
}

HeldSets ToHeldSets(const Instance& instance,
                    const std::vector<int>& assignment) {
  HeldSets held(instance.num_advertisers());
  for (int t = 0; t < (int)assignment.size(); ++t) {
    if (assignment[t] >= 0) held[assignment[t]].push_back(t);
  }
  return held;
}

}  // namespace

OfflineSolution SolveDisplayOpt(const Instance& instance) {
  if (instance.kind != ProblemKind::kDisplayAds) {
    throw ValidationError("SolveDisplayOpt needs a Display Ads instance");
  }
  const int k = instance.num_real_advertisers();
  const int num_t = instance.num_impressions();
  const int source = 0;
  const int sink = k + num_t + 1;
  auto adv_node = [](int a) { return 1 + a; };
  auto imp_node = [k](int t) { return 1 + k + t; };

  MinCostFlow flow(k + num_t + 2);
  for (int a = 0; a < k; ++a) {
    flow.AddArc(source, adv_node(a), instance.budget(a), 0.0);
  }
  // Wide arcs keep every pair in the residual graph, so the duals read off
  // below satisfy all pair constraints.
  const std::int64_t wide = std::max(num_t, 1);
  std::vector<std::vector<std::pair<int, int>>> pair_arcs(num_t);
  for (int t = 0; t < num_t; ++t) {
    for (int a = 0; a < k; ++a) {
      const double w = instance.value(a, t);
      if (w > 0.0) {
        pair_arcs[t].push_back(
            {a, flow.AddArc(adv_node(a), imp_node(t), wide, -w)});
      }
    }
    flow.AddArc(imp_node(t), sink, 1, 0.0);
  }
  flow.Solve(source, sink, /*stop_at_nonnegative=*/true);

  OfflineSolution solution;
  solution.assignment.assign(num_t, -1);
  for (int t = 0; t < num_t; ++t) {
    for (const auto& [a, arc] : pair_arcs[t]) {
      if (flow.Flow(arc) > 0) solution.assignment[t] = a;
    }
  }
  solution.value = AssignmentValue(instance, solution.assignment);

  const std::int64_t unbounded = static_cast<std::int64_t>(num_t) + 1;
  flow.AddArc(source, sink, unbounded, 0.0);
  flow.AddArc(sink, source, unbounded, 0.0);
  const std::vector<double> to_source = flow.ResidualDistancesTo(source);
  solution.betas.assign(instance.num_advertisers(), 0.0);
  for (int a = 0; a < k; ++a) {
    const double d = to_source[adv_node(a)];
    if (std::isfinite(d)) solution.betas[a] = std::max(0.0, -d);
  }
  solution.zs.resize(num_t);
  for (int t = 0; t < num_t; ++t) {
    solution.zs[t] = MaxGain(instance, t, solution.betas);
  }
  const double gap =
      std::abs(DualObjective(instance, solution) - solution.value);
  if (gap > 1e-6 * std::max(1.0, instance.max_value())) {
    throw std::logic_error("flow duals violate strong duality");
  }
  return solution;
}

bool BruteForceFeasible(const Instance& instance) {
  const double options = instance.num_real_advertisers() + 1.0;
  return std::pow(options, instance.num_impressions()) <= kBruteForceLimit;
}

OfflineSolution BruteForceOpt(const Instance& instance) {
  if (!BruteForceFeasible(instance)) {
    throw GuardExceeded(
        "brute force would enumerate more than 1e7 assignments");
  }
  const int k = instance.num_real_advertisers();
  const int num_t = instance.num_impressions();
  std::vector<double> remaining(k);
  for (int a = 0; a < k; ++a) remaining[a] = instance.advertisers[a].budget;
  const double slack =
      instance.kind == ProblemKind::kGap ? kCapacitySlack : 0.0;

  OfflineSolution best;
  best.assignment.assign(num_t, -1);
  std::vector<int> current(num_t, -1);
  std::function<void(int, double)> visit = [&](int t, double value) {
    if (t == num_t) {
      if (value > best.value) {
        best.value = value;
        best.assignment = current;
      }
      return;
    }
    current[t] = -1;
    visit(t + 1, value);
    for (int a = 0; a < k; ++a) {
      const double u = instance.size(a, t);
      if (u > remaining[a] + slack) continue;
      remaining[a] -= u;
      current[t] = a;
      visit(t + 1, value + instance.value(a, t));
      remaining[a] += u;
    }
    current[t] = -1;
  };
  visit(0, 0.0);
  return best;
}

std::vector<double> SolveScaledDuals(const Instance& prefix, double scale) {
  if (prefix.num_impressions() == 0) {
    throw ValidationError("scaled duals need a non-empty prefix");
  }
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ValidationError("dual scale must lie in (0, 1]");
  }
  Instance scaled = prefix;
  for (int a = 0; a < scaled.num_real_advertisers(); ++a) {
    Advertiser& adv = scaled.advertisers[a];
    adv.budget = std::max(1.0, std::ceil(scale * adv.budget - 1e-9));
  }
  return SolveDisplayOpt(scaled).betas;
}

std::vector<std::string> AuditOfflineSolution(const Instance& instance,
                                              const OfflineSolution& solution,
                                              double tol) {
  std::vector<std::string> problems;
  if ((int)solution.assignment.size() != instance.num_impressions()) {
    problems.push_back("assignment has the wrong length");
    return problems;
  }
  try {
    const double v =
        ValueOf(instance, ToHeldSets(instance, solution.assignment));
    if (std::abs(v - solution.value) > tol) {
      problems.push_back("value does not match the assignment");
    }
  } catch (const ValidationError& e) {
    problems.push_back(e.what());
  }
  if (solution.betas.empty()) return problems;
  for (double b : solution.betas) {
    if (b < 0.0) problems.push_back("negative beta");
  }
  for (double z : solution.zs) {
    if (z < 0.0) problems.push_back("negative z");
  }
  for (int t = 0; t < instance.num_impressions(); ++t) {
    for (int a = 0; a < instance.num_real_advertisers(); ++a) {
      if (solution.zs[t] + instance.size(a, t) * solution.betas[a] <
          instance.value(a, t) - tol) {
        problems.push_back("dual infeasible at impression " +
                           std::to_string(t) + ", advertiser " +
                           std::to_string(a));
        return problems;
      }
    }
  }
  if (std::abs(DualObjective(instance, solution) - solution.value) > tol) {
    problems.push_back("duality gap exceeds tolerance");
  }
  return problems;
}

}  // namespace expavg
