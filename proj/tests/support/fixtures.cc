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

#include "fixtures.h"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace expavg::testing {

Instance RandomDisplay(std::uint64_t seed, int max_k, int max_t,
                       int max_budget) {
  std::mt19937_64 rng(seed);
  const int k = std::uniform_int_distribution<int>(1, max_k)(rng);
  const int num_t = std::uniform_int_distribution<int>(1, max_t)(rng);
  std::uniform_int_distribution<int> budget(1, max_budget);
  std::exponential_distribution<double> value(1.0);
  Instance inst;
  for (int a = 0; a < k; ++a) {
    inst.advertisers.push_back({a, static_cast<double>(budget(rng))});
  }
  for (int t = 0; t < num_t; ++t) {
    Impression imp{t, {}, {}};
    for (int a = 0; a < k; ++a) imp.values.push_back(value(rng));
    inst.impressions.push_back(imp);
  }
  return inst;
}

Instance RandomDisplayIntegral(std::uint64_t seed, int max_k, int max_t,
                               int max_budget, int max_value) {
  std::mt19937_64 rng(seed);
  const int k = std::uniform_int_distribution<int>(1, max_k)(rng);
  const int num_t = std::uniform_int_distribution<int>(0, max_t)(rng);
  std::uniform_int_distribution<int> budget(1, max_budget);
  std::uniform_int_distribution<int> value(0, max_value);
  Instance inst;
  for (int a = 0; a < k; ++a) {
    inst.advertisers.push_back({a, static_cast<double>(budget(rng))});
  }
  for (int t = 0; t < num_t; ++t) {
    Impression imp{t, {}, {}};
    for (int a = 0; a < k; ++a) imp.values.push_back(value(rng));
    inst.impressions.push_back(imp);
  }
  return inst;
}

Instance RandomGap(std::uint64_t seed, int max_k, int max_t, double max_size) {
  std::mt19937_64 rng(seed);
  const int k = std::uniform_int_distribution<int>(1, max_k)(rng);
  const int num_t = std::uniform_int_distribution<int>(1, max_t)(rng);
  std::exponential_distribution<double> value(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance inst;
  inst.kind = ProblemKind::kGap;
  for (int a = 0; a < k; ++a) inst.advertisers.push_back({a, 1.0});
  for (int t = 0; t < num_t; ++t) {
    Impression imp{t, {}, {}};
    for (int a = 0; a < k; ++a) {
      imp.values.push_back(value(rng));
      imp.sizes.push_back(max_size * (1.0 - unit(rng)));
    }
    inst.impressions.push_back(imp);
  }
  return inst;
}

Instance DisplayFromValues(const std::vector<int>& budgets,
                           const std::vector<std::vector<double>>& values) {
  Instance inst;
  for (int a = 0; a < (int)budgets.size(); ++a) {
    inst.advertisers.push_back({a, static_cast<double>(budgets[a])});
  }
  for (int t = 0; t < (int)values.size(); ++t) {
    inst.impressions.push_back({t, values[t], {}});
  }
  return inst;
}

ReferenceRun RunReference(const Instance& instance,
                          const std::vector<int>& prediction, double alpha) {
  const int k = instance.num_advertisers();
  const int dummy = k - 1;
  int b_min = 0;
  for (int a = 0; a < dummy; ++a) {
    const int b = instance.budget(a);
    if (b_min == 0 || b < b_min) b_min = b;
  }
  const double e_b = std::pow(1.0 + 1.0 / b_min, b_min);
  const double alpha_b = b_min * (std::pow(e_b, alpha / b_min) - 1.0);

  ReferenceRun out;
  out.betas.assign(k, 0.0);
  out.held_values.resize(k);
  for (int a = 0; a < dummy; ++a) {
    out.held_values[a].assign(instance.budget(a), 0.0);
  }
  for (int t = 0; t < instance.num_impressions(); ++t) {
    int best = 0;
    for (int a = 1; a < k; ++a) {
      if (instance.value(a, t) - out.betas[a] >
          instance.value(best, t) - out.betas[best]) {
        best = a;
      }
    }
    const int p = prediction[t];
    const int a = alpha_b * (instance.value(p, t) - out.betas[p]) >=
                          instance.value(best, t) - out.betas[best]
                      ? p
                      : best;
    out.chosen.push_back(a);
    if (a == dummy) continue;
    std::vector<double>& held = out.held_values[a];
    held.push_back(instance.value(a, t));
    std::sort(held.begin(), held.end());
    held.erase(held.begin());
    const int ba = instance.budget(a);
    const double e_ba = std::pow(1.0 + 1.0 / ba, ba);
    double sum = 0.0;
    for (int i = 1; i <= ba; ++i) {
      sum += held[i - 1] * std::pow(e_ba, alpha * (ba - i) / ba);
    }
    out.betas[a] = (std::pow(e_ba, alpha / ba) - 1.0) /
                   (std::pow(e_ba, alpha) - 1.0) * sum;
  }
  for (int a = 0; a < dummy; ++a) {
    for (double w : out.held_values[a]) out.alg += w;
  }
  return out;
}

double SolvePackingLp(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b,
                      const std::vector<double>& c) {
  const int m = static_cast<int>(b.size());
  const int n = static_cast<int>(c.size());
  // Tableau rows 0..m-1 are constraints, row m is the objective; slack
  // columns follow the structural ones and the last column is the rhs.
  std::vector<std::vector<double>> tab(m + 1, std::vector<double>(n + m + 1));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = a[i][j];
    tab[i][n + i] = 1.0;
    tab[i][n + m] = b[i];
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) tab[m][j] = -c[j];
  constexpr double kEps = 1e-12;
  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (tab[m][j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter] <= kEps) continue;
      const double ratio = tab[i][n + m] / tab[i][enter];
      if (leave < 0 || ratio < best - kEps ||
          (ratio <= best + kEps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return std::numeric_limits<double>::infinity();
    const double pivot = tab[leave][enter];
    for (double& x : tab[leave]) x /= pivot;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || tab[i][enter] == 0.0) continue;
      const double f = tab[i][enter];
      for (int j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }
  return tab[m][n + m];
}

double GapLpValue(const Instance& instance) {
  const int k = instance.num_real_advertisers();
  const int num_t = instance.num_impressions();
  const int n = k * num_t;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c(n);
  for (int adv = 0; adv < k; ++adv) {
    std::vector<double> row(n, 0.0);
    for (int t = 0; t < num_t; ++t) row[t * k + adv] = instance.size(adv, t);
    a.push_back(row);
    b.push_back(instance.advertisers[adv].budget);
  }
  for (int t = 0; t < num_t; ++t) {
    std::vector<double> row(n, 0.0);
    for (int adv = 0; adv < k; ++adv) {
      row[t * k + adv] = 1.0;
      c[t * k + adv] = instance.value(adv, t);
    }
    a.push_back(row);
    b.push_back(1.0);
  }
  return SolvePackingLp(a, b, c);
}

int RunCommand(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace expavg::testing
