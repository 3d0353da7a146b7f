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

#include "expavg/theory.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "expavg/io.h"

namespace expavg {
namespace {

void RequireAlpha(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be a finite real >= 1");
  }
}

}  // namespace

Budget Budget::Finite(std::int64_t b) {
  if (b < 1) throw std::invalid_argument("budget must be >= 1");
  return Budget(b, false);
}

std::string Budget::ToString() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

double LogDiscretizedE(Budget b) {
  if (b.is_infinite()) return 1.0;
  const double bb = static_cast<double>(b.value());
  return bb * std::log1p(1.0 / bb);
}

double DiscretizedE(Budget b) { return std::exp(LogDiscretizedE(b)); }

double DiscretizedAlpha(double alpha, Budget b) {
  RequireAlpha(alpha);
  if (b.is_infinite()) return alpha;
  const double bb = static_cast<double>(b.value());
  // e_B^{alpha/B} = (1 + 1/B)^alpha.
  return bb * std::expm1(alpha * std::log1p(1.0 / bb));
}

double Robustness(double alpha, Budget b) {
  const double scaled = alpha * LogDiscretizedE(b);  // ln(e_B^alpha)
  // (e_B^alpha - 1) / (e_B^alpha * alpha_B).
  return -std::expm1(-scaled) / DiscretizedAlpha(alpha, b);
}

double Consistency(double alpha, Budget b) {
  const double scaled = alpha * LogDiscretizedE(b);
  const double alpha_b = DiscretizedAlpha(alpha, b);
  // Both max-arguments divided by e_B^alpha - 1, rearranged so large alpha
  // does not overflow.
  const double averaged =
      (-1.0 / std::expm1(-scaled) - 1.0 / alpha_b) / alpha_b;
  const double logarithmic = scaled / std::expm1(scaled);
  return 1.0 / (1.0 + std::max(averaged, logarithmic));
}

double ConsistencyAverageFactor(double alpha, Budget b, Budget b_a) {
  const double scaled = alpha * LogDiscretizedE(b_a);
  const double alpha_b = DiscretizedAlpha(alpha, b);
  const double alpha_ba = DiscretizedAlpha(alpha, b_a);
  return 1.0 + (-1.0 / std::expm1(-scaled) - 1.0 / alpha_ba) / alpha_b;
}

double ConsistencyOverlapFactor(double alpha, std::int64_t b_a,
                                std::int64_t ell) {
  RequireAlpha(alpha);
  if (b_a < 1 || ell < 1 || ell > b_a) {
    throw std::invalid_argument("overlap must satisfy 1 <= ell <= B_a");
  }
  const double log_e = LogDiscretizedE(Budget::Finite(b_a));
  const double frac = static_cast<double>(ell) / static_cast<double>(b_a);
  return 1.0 + (1.0 / frac - 1.0) * std::expm1(alpha * frac * log_e) /
                   std::expm1(alpha * log_e);
}

GuaranteeCurve EmitCurve(const std::vector<double>& alphas,
                         const std::vector<Budget>& budgets) {
  if (alphas.empty() || budgets.empty()) {
    throw std::invalid_argument("curve needs at least one alpha and budget");
  }
  GuaranteeCurve curve;
  curve.rows.reserve(alphas.size() * budgets.size());
  for (const Budget& b : budgets) {
    for (double alpha : alphas) {
      curve.rows.push_back(
          {alpha, b, Robustness(alpha, b), Consistency(alpha, b)});
    }
  }
  return curve;
}

void WriteCurveCsv(std::ostream& out, const GuaranteeCurve& curve) {
  out << "alpha,B,robustness,consistency\n";
  for (const GuaranteeRow& row : curve.rows) {
    out << FormatDouble(row.alpha) << ',' << row.budget.ToString() << ','
        << FormatDouble(row.robustness) << ',' << FormatDouble(row.consistency)
        << '\n';
  }
}

}  // namespace expavg
