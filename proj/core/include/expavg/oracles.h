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

// Offline optima: exact Display Ads optimum and duals via min-cost flow,
// exhaustive enumeration for tiny instances, and a certified fractional bound
// for GAP.

#ifndef EXPAVG_ORACLES_H_
#define EXPAVG_ORACLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "expavg/types.h"

namespace expavg {

struct OfflineSolution {
  // assignment[t] is an advertiser id or -1 (unassigned). Never the dummy.
  std::vector<int> assignment;
  double value = 0.0;
  // Optimal duals; empty for brute-force results. The dummy gets beta = 0.
  std::vector<double> betas;
  std::vector<double> zs;
};

// Exact optimum of a Display Ads instance. The dummy, if any, takes no flow.
// Duals are the smallest non-negative budget prices that satisfy
// complementary slackness; strong duality is verified before returning.
OfflineSolution SolveDisplayOpt(const Instance& instance);

// Enumerates every budget-feasible assignment (both problem kinds). Throws
// GuardExceeded when (k + 1)^T exceeds kBruteForceLimit, k counting real
// advertisers.
inline constexpr double kBruteForceLimit = 1e7;
OfflineSolution BruteForceOpt(const Instance& instance);
bool BruteForceFeasible(const Instance& instance);

// Optimal duals of the instance with every budget replaced by
// ceil(scale * B_a). Throws ValidationError on an empty instance or a scale
// outside (0, 1].
std::vector<double> SolveScaledDuals(const Instance& prefix, double scale);

// Problems with an OfflineSolution: budget violations, a value mismatch, and
// (when duals are present) infeasibility or a duality gap above tol.
std::vector<std::string> AuditOfflineSolution(const Instance& instance,
                                              const OfflineSolution& solution,
                                              double tol);

struct GapBound {
  // Dual objective at betas: an upper bound on the fractional optimum.
  double upper = 0.0;
  // Value of a feasible fractional assignment: a lower bound.
  double lower = 0.0;
  std::vector<double> betas;
};

// Fractional optimum of a GAP instance bracketed by [lower, upper]. The upper
// end minimizes sum_a beta_a + sum_t max(0, max_a (w_at - u_at beta_a)), which
// bounds every integral and fractional assignment from above. Throws
// GuardExceeded when k * T exceeds kGapBoundLimit.
inline constexpr double kGapBoundLimit = 5e6;
GapBound GapFractionalBound(const Instance& instance);

}  // namespace expavg

#endif  // EXPAVG_ORACLES_H_
