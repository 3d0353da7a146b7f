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

// Seeded instance builders and a straightforward reference implementation of
// the Display Ads algorithm used as a differential oracle.

#ifndef EXPAVG_TESTS_SUPPORT_FIXTURES_H_
#define EXPAVG_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "expavg/types.h"

namespace expavg::testing {

// k in [1, max_k], T in [1, max_t], budgets in [1, max_budget], values
// Exp(1). No dummy.
Instance RandomDisplay(std::uint64_t seed, int max_k, int max_t,
                       int max_budget);

// Small integer values in [0, max_value] so ties are common.
Instance RandomDisplayIntegral(std::uint64_t seed, int max_k, int max_t,
                               int max_budget, int max_value);

// k in [1, max_k], T in [1, max_t], sizes uniform on (0, max_size], values
// Exp(1). No dummy.
Instance RandomGap(std::uint64_t seed, int max_k, int max_t, double max_size);

// Builds a Display Ads instance from a value matrix values[t][a].
Instance DisplayFromValues(const std::vector<int>& budgets,
                           const std::vector<std::vector<double>>& values);

struct ReferenceRun {
  std::vector<int> chosen;
  std::vector<std::vector<double>> held_values;
  std::vector<double> betas;
  double alg = 0.0;
};

// Direct transcription of the algorithm with pow() constants and a full sort
// per step. The instance must carry a dummy.
ReferenceRun RunReference(const Instance& instance,
                          const std::vector<int>& prediction, double alpha);

// max c.x subject to A x <= b, x >= 0, for b >= 0, by the dense simplex
// method with Bland's rule. Returns +inf when unbounded.
double SolvePackingLp(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b,
                      const std::vector<double>& c);

// Fractional GAP optimum of a small instance through SolvePackingLp.
double GapLpValue(const Instance& instance);

// Runs a shell command and returns its exit status (-1 if it did not exit).
int RunCommand(const std::string& command);

std::string ReadFile(const std::string& path);

}  // namespace expavg::testing

#endif  // EXPAVG_TESTS_SUPPORT_FIXTURES_H_
