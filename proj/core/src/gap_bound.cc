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

// Fractional GAP bound by minimizing the Lagrangian dual
//   f(beta) = sum_a beta_a + sum_t max(0, max_a (w_at - u_at beta_a)).
// A log-sum-exp smoothing of the max is driven to zero by continuation, each
// level solved by exact coordinate minimization; a nonsmooth coordinate pass
// then polishes the result. Any beta >= 0 certifies f(beta) as an upper bound,
// and the soft assignment of the final level, scaled into the capacities,
// certifies a lower bound.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "expavg/oracles.h"

namespace expavg {
namespace {

constexpr int kMaxSweeps = 400;
constexpr int kMaxPolishSweeps = 100;

// Per-advertiser value and size rows over the real advertisers.
struct Tables {
  int k = 0;
  int num_t = 0;
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> u;
};

double Objective(const Tables& tab, const std::vector<double>& beta) {
  double total = std::accumulate(beta.begin(), beta.end(), 0.0);
  for (int t = 0; t < tab.num_t; ++t) {
    double best = 0.0;
    for (int a = 0; a < tab.k; ++a) {
      best = std::max(best, tab.w[a][t] - tab.u[a][t] * beta[a]);
    }
    total += best;
  }
  return total;
}

double Logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Smoothed max over {0} and every advertiser except a, per impression.
void OtherSoftMax(const Tables& tab, const std::vector<double>& beta, int a,
                  double mu, std::vector<double>& out) {
  for (int t = 0; t < tab.num_t; ++t) {
    double top = 0.0;
    for (int b = 0; b < tab.k; ++b) {
      if (b != a) top = std::max(top, tab.w[b][t] - tab.u[b][t] * beta[b]);
    }
    double sum = std::exp(-top / mu);
    for (int b = 0; b < tab.k; ++b) {
      if (b != a)
        sum += std::exp((tab.w[b][t] - tab.u[b][t] * beta[b] - top) / mu);
    }
    out[t] = top + mu * std::log(sum);
  }
}

// Solves sum_t u_at p_at(beta_a) = 1 for beta_a >= 0, where p_at is the soft
// share of advertiser a against the others' smoothed max.
double SolveCoordinate(const Tables& tab, int a, double mu,
                       const std::vector<double>& others, double start) {
  const auto& w = tab.w[a];
  const auto& u = tab.u[a];
  auto excess = [&](double beta, double* slope) {
    double used = 0.0;
    double d = 0.0;
    for (int t = 0; t < tab.num_t; ++t) {
      const double p = Logistic((w[t] - u[t] * beta - others[t]) / mu);
      used += u[t] * p;
      d += u[t] * u[t] * p * (1.0 - p) / mu;
    }
    if (slope) *slope = d;
    return 1.0 - used;
  };
  if (excess(0.0, nullptr) >= 0.0) return 0.0;

  double hi = std::max(start, 1.0);
  double min_u = 1.0;
  double max_ratio = 0.0;
  for (int t = 0; t < tab.num_t; ++t) {
    min_u = std::min(min_u, u[t]);
    max_ratio = std::max(max_ratio, w[t] / u[t]);
  }
  hi = std::max(hi, max_ratio + 60.0 * mu / min_u);
  while (excess(hi, nullptr) < 0.0) hi *= 2.0;
  double lo = 0.0;
  double beta = std::clamp(start, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    double slope = 0.0;
    const double e = excess(beta, &slope);
    if (e < 0.0) {
      lo = beta;
    } else {
      hi = beta;
    }
    if (e == 0.0 || hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    double next = slope > 0.0 ? beta - e / slope : -1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    beta = next;
  }
  return beta;
}

// Exact minimizer of f along coordinate a.
double PolishCoordinate(const Tables& tab, const std::vector<double>& beta,
                        int a) {
  std::vector<std::pair<double, double>> breaks;  // (breakpoint, size)
  for (int t = 0; t < tab.num_t; ++t) {
    double others = 0.0;
    for (int b = 0; b < tab.k; ++b) {
      if (b != a)
        others = std::max(others, tab.w[b][t] - tab.u[b][t] * beta[b]);
    }
    const double point = (tab.w[a][t] - others) / tab.u[a][t];
    if (point > 0.0) breaks.push_back({point, tab.u[a][t]});
  }
  std::sort(breaks.begin(), breaks.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  double used = 0.0;
  for (const auto& [point, size] : breaks) {
    used += size;
    if (used >= 1.0) return point;
  }
  return 0.0;
}

double SoftLowerBound(const Tables& tab, const std::vector<double>& beta,
                      double mu) {
  std::vector<std::vector<double>> share(tab.k, std::vector<double>(tab.num_t));
  for (int t = 0; t < tab.num_t; ++t) {
    double top = 0.0;
    for (int a = 0; a < tab.k; ++a) {
      top = std::max(top, tab.w[a][t] - tab.u[a][t] * beta[a]);
    }
    double sum = std::exp(-top / mu);
    for (int a = 0; a < tab.k; ++a) {
      share[a][t] = std::exp((tab.w[a][t] - tab.u[a][t] * beta[a] - top) / mu);
      sum += share[a][t];
    }
    for (int a = 0; a < tab.k; ++a) share[a][t] /= sum;
  }
  // Make the shares feasible: trim the lowest ratios of overfull
  // advertisers, then top up spare capacity with unassigned mass, highest
  // ratio first.
  std::vector<double> free_mass(tab.num_t, 1.0);
  for (int t = 0; t < tab.num_t; ++t) {
    for (int a = 0; a < tab.k; ++a) free_mass[t] -= share[a][t];
  }
  std::vector<int> order(tab.num_t);
  double value = 0.0;
  for (int a = 0; a < tab.k; ++a) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return tab.w[a][x] * tab.u[a][y] < tab.w[a][y] * tab.u[a][x];
    });
    double used = 0.0;
    for (int t = 0; t < tab.num_t; ++t) used += tab.u[a][t] * share[a][t];
    for (int t : order) {
      if (used <= 1.0) break;
      const double cut = std::min(share[a][t], (used - 1.0) / tab.u[a][t]);
      share[a][t] -= cut;
      free_mass[t] += cut;
      used -= cut * tab.u[a][t];
    }
    used = std::max(used, 0.0);
    for (auto it = order.rbegin(); it != order.rend() && used < 1.0; ++it) {
      const int t = *it;
      if (tab.w[a][t] <= 0.0 || free_mass[t] <= 0.0) continue;
      const double add = std::min(free_mass[t], (1.0 - used) / tab.u[a][t]);
      share[a][t] += add;
      free_mass[t] -= add;
      used += add * tab.u[a][t];
    }
  }
  for (int a = 0; a < tab.k; ++a) {
    double used = 0.0;
    for (int t = 0; t < tab.num_t; ++t) used += tab.u[a][t] * share[a][t];
    // Guards the rounding of the repair above.
    const double shrink = used > 1.0 ? 1.0 / used : 1.0;
    for (int t = 0; t < tab.num_t; ++t) {
      value += tab.w[a][t] * share[a][t] * shrink;
    }
  }
  return value;
}

}  // namespace

GapBound GapFractionalBound(const Instance& instance) {
  if (instance.kind != ProblemKind::kGap) {
    throw ValidationError("GapFractionalBound needs a GAP instance");
  }
  Tables tab;
  tab.k = instance.num_real_advertisers();
  tab.num_t = instance.num_impressions();
  if (static_cast<double>(tab.k) * tab.num_t > kGapBoundLimit) {
    throw GuardExceeded("GAP bound limited to k * T <= 5e6");
  }
  tab.w.assign(tab.k, std::vector<double>(tab.num_t));
  tab.u.assign(tab.k, std::vector<double>(tab.num_t));
  double scale = 0.0;
  for (int a = 0; a < tab.k; ++a) {
    for (int t = 0; t < tab.num_t; ++t) {
      tab.w[a][t] = instance.value(a, t);
      tab.u[a][t] = instance.size(a, t);
      scale = std::max(scale, tab.w[a][t]);
    }
  }
  GapBound bound;
  bound.betas.assign(instance.num_advertisers(), 0.0);
  if (scale == 0.0 || tab.k == 0) return bound;

  std::vector<double> beta(tab.k, 0.0);
  std::vector<double> others(tab.num_t);
  double mu = scale;
  const double final_mu = 1e-10 * scale;
  double max_ratio = 0.0;
  for (int a = 0; a < tab.k; ++a) {
    for (int t = 0; t < tab.num_t; ++t) {
      max_ratio = std::max(max_ratio, tab.w[a][t] / tab.u[a][t]);
    }
  }
  while (true) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      double change = 0.0;
      for (int a = 0; a < tab.k; ++a) {
        OtherSoftMax(tab, beta, a, mu, others);
        const double next = SolveCoordinate(tab, a, mu, others, beta[a]);
        change = std::max(change, std::abs(next - beta[a]));
        beta[a] = next;
      }
      if (change <= 1e-13 * max_ratio) break;
    }
    if (mu <= final_mu) break;
    mu = std::max(final_mu, mu / 4.0);
  }
  bound.lower = SoftLowerBound(tab, beta, mu);

  double best = Objective(tab, beta);
  for (int sweep = 0; sweep < kMaxPolishSweeps; ++sweep) {
    bool improved = false;
    for (int a = 0; a < tab.k; ++a) {
      const double saved = beta[a];
      beta[a] = PolishCoordinate(tab, beta, a);
      const double value = Objective(tab, beta);
      if (value < best) {
        improved = improved || value < best - 1e-15 * std::abs(best);
        best = value;
      } else {
        beta[a] = saved;
      }
    }
    if (!improved) break;
  }
  bound.upper = best;
  for (int a = 0; a < tab.k; ++a) bound.betas[a] = beta[a];
  return bound;
}

}  // namespace expavg
