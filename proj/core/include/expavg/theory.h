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

// Closed-form guarantee constants for exponential averaging with predictions.
//
// With e_B = (1 + 1/B)^B and alpha_B = B (e_B^{alpha/B} - 1), the algorithm
// run with trade-off parameter alpha and minimum budget B satisfies
//   ALG >= Robustness(alpha, B) * OPT  and  ALG >= Consistency(alpha, B) * PRD.
// Every function also accepts the limit B = infinity, which uses the separate
// limit formulas rather than a large sentinel budget.

#ifndef EXPAVG_THEORY_H_
#define EXPAVG_THEORY_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace expavg {

// A finite positive budget or the limit B -> infinity.
class Budget {
 public:
  static Budget Finite(std::int64_t b);
  static Budget Infinite() { return Budget(0, true); }

  bool is_infinite() const { return infinite_; }
  // Requires !is_infinite().
  std::int64_t value() const { return value_; }
  std::string ToString() const;

  bool operator==(const Budget&) const = default;

 private:
  Budget(std::int64_t value, bool infinite)
      : value_(value), infinite_(infinite) {}
  std::int64_t value_;
  bool infinite_;
};

// ln(e_B) = B ln(1 + 1/B); 1 in the limit.
double LogDiscretizedE(Budget b);

// e_B = (1 + 1/B)^B; Euler's e in the limit.
double DiscretizedE(Budget b);

// alpha_B = B (e_B^{alpha/B} - 1); alpha in the limit. Throws
// std::invalid_argument for alpha < 1.
double DiscretizedAlpha(double alpha, Budget b);

// R(alpha, B).
double Robustness(double alpha, Budget b);

// C(alpha, B).
double Consistency(double alpha, Budget b);

// Average consistency factor of an advertiser with budget b_a when the global
// minimum budget is b (b_a >= b).
double ConsistencyAverageFactor(double alpha, Budget b, Budget b_a);

// Consistency factor on the predicted part of an advertiser's final allocation
// when ell of its b_a slots agree with the prediction; requires 1 <= ell <=
// b_a.
double ConsistencyOverlapFactor(double alpha, std::int64_t b_a,
                                std::int64_t ell);

struct GuaranteeRow {
  double alpha = 1.0;
  Budget budget = Budget::Infinite();
  double robustness = 0.0;
  double consistency = 0.0;
};

struct GuaranteeCurve {
  std::vector<GuaranteeRow> rows;
};

// Cartesian product of alphas x budgets, alpha varying fastest within each
// budget. Throws std::invalid_argument on empty lists or alpha < 1.
GuaranteeCurve EmitCurve(const std::vector<double>& alphas,
                         const std::vector<Budget>& budgets);

// CSV with header alpha,B,robustness,consistency; the limit is written "inf".
void WriteCurveCsv(std::ostream& out, const GuaranteeCurve& curve);

}  // namespace expavg

#endif  // EXPAVG_THEORY_H_
