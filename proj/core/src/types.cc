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

#include "expavg/types.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace expavg {

const char* ToString(ProblemKind kind) {
  return kind == ProblemKind::kGap ? "gap" : "display";
}

int Instance::min_real_budget() const {
  int best = 0;
  for (int a = 0; a < num_real_advertisers(); ++a) {
    if (best == 0 || budget(a) < best) best = budget(a);
  }
  return best;
}

double Instance::max_value() const {
  double best = 0.0;
  for (const Impression& imp : impressions) {
    for (double w : imp.values) best = std::max(best, w);
  }
  return best;
}

double Instance::max_size() const {
  double best = 0.0;
  for (const Impression& imp : impressions) {
    for (int a = 0; a < num_real_advertisers() && a < (int)imp.sizes.size();
         ++a) {
      best = std::max(best, imp.sizes[a]);
    }
  }
  return best;
}

std::string ToString(const Violation& violation) {
  std::ostringstream out;
  out << violation.field;
  if (violation.impression >= 0) out << " impression " << violation.impression;
  if (violation.advertiser >= 0) out << " advertiser " << violation.advertiser;
  out << ": " << violation.message;
  return out.str();
}

std::vector<Violation> ValidateInstance(const Instance& instance) {
  std::vector<Violation> out;
  const int k = instance.num_advertisers();
  const int num_t = instance.num_impressions();
  const bool gap = instance.kind == ProblemKind::kGap;

  for (int a = 0; a < k; ++a) {
    const Advertiser& adv = instance.advertisers[a];
    if (adv.id != a) {
      out.push_back({"advertisers.id", -1, a, "ids must be dense 0..k-1"});
    }
    if (!std::isfinite(adv.budget)) {
      out.push_back({"advertisers.budget", -1, a, "budget must be finite"});
    } else if (gap) {
      if (adv.budget != 1.0) {
        out.push_back({"advertisers.budget", -1, a,
                       "GAP capacities are normalized to 1"});
      }
    } else if (adv.budget < 1.0 || adv.budget != std::floor(adv.budget)) {
      out.push_back({"advertisers.budget", -1, a,
                     "Display Ads budget must be an integer >= 1"});
    }
  }

  for (int t = 0; t < num_t; ++t) {
    const Impression& imp = instance.impressions[t];
    if (imp.id != t) {
      out.push_back({"impressions.id", t, -1, "id must equal arrival index"});
    }
    if ((int)imp.values.size() != k) {
      out.push_back({"impressions.values", t, -1, "expected k values"});
    } else {
      for (int a = 0; a < k; ++a) {
        const double w = imp.values[a];
        if (!std::isfinite(w) || w < 0.0) {
          out.push_back({"impressions.values", t, a,
                         "value must be finite and non-negative"});
        }
      }
    }
    if (gap) {
      if ((int)imp.sizes.size() != k) {
        out.push_back(
            {"impressions.sizes", t, -1, "GAP impressions need k sizes"});
      } else {
        for (int a = 0; a < k; ++a) {
          const double u = imp.sizes[a];
          if (!(u > 0.0 && u <= 1.0)) {
            out.push_back(
                {"impressions.sizes", t, a, "size must lie in (0, 1]"});
          }
        }
      }
    } else if (!imp.sizes.empty()) {
      out.push_back({"impressions.sizes", t, -1,
                     "Display Ads impressions carry no sizes"});
    }
  }

  if (instance.has_dummy) {
    if (k == 0) {
      out.push_back(
          {"has_dummy", -1, -1, "dummy flag set without advertisers"});
    } else {
      const int d = k - 1;
      for (int t = 0; t < num_t; ++t) {
        const Impression& imp = instance.impressions[t];
        if ((int)imp.values.size() == k && imp.values[d] != 0.0) {
          out.push_back({"impressions.values", t, d,
                         "the dummy only receives zero values"});
        }
      }
      if (!gap && instance.advertisers[d].budget < num_t) {
        out.push_back(
            {"advertisers.budget", -1, d, "dummy budget must be at least T"});
      }
    }
  }
  return out;
}

void RequireValid(const Instance& instance) {
  const auto violations = ValidateInstance(instance);
  if (!violations.empty()) {
    throw ValidationError("invalid instance: " + ToString(violations.front()));
  }
}

Instance WithDummy(const Instance& instance) {
  if (instance.has_dummy) {
    throw ValidationError("instance already carries a dummy advertiser");
  }
  Instance out = instance;
  const int k = instance.num_advertisers();
  const int num_t = instance.num_impressions();
  const bool gap = instance.kind == ProblemKind::kGap;
  out.advertisers.push_back(
      {k, gap ? 1.0 : static_cast<double>(std::max(num_t, 1))});
  for (Impression& imp : out.impressions) {
    imp.values.push_back(0.0);
    if (gap) {
      // The dummy only ever sees ratio 0; any admissible size will do, so use
      // the smallest real one to stay inside every size cap.
      double u = 1.0;
      for (double s : imp.sizes) u = std::min(u, s);
      imp.sizes.push_back(u);
    }
  }
  out.has_dummy = true;
  return out;
}

Instance WithoutDummy(const Instance& instance) {
  if (!instance.has_dummy) return instance;
  Instance out = instance;
  out.advertisers.pop_back();
  for (Impression& imp : out.impressions) {
    imp.values.pop_back();
    if (!imp.sizes.empty()) imp.sizes.pop_back();
  }
  out.has_dummy = false;
  return out;
}

double ValueOf(const Instance& instance, const HeldSets& held) {
  if ((int)held.size() > instance.num_advertisers()) {
    throw ValidationError("held sets reference unknown advertisers");
  }
  double total = 0.0;
  for (int a = 0; a < (int)held.size(); ++a) {
    double used = 0.0;
    for (int t : held[a]) {
      if (t < 0 || t >= instance.num_impressions()) {
        throw ValidationError("held set of advertiser " + std::to_string(a) +
                              " references unknown impression");
      }
      used += instance.size(a, t);
      total += instance.value(a, t);
    }
    const double cap = instance.advertisers[a].budget;
    const double slack = instance.kind == ProblemKind::kGap ? 1e-9 : 0.0;
    if (used > cap + slack) {
      throw ValidationError("held set of advertiser " + std::to_string(a) +
                            " exceeds its budget");
    }
  }
  return total;
}

double AssignmentValue(const Instance& instance,
                       const std::vector<int>& assignment) {
  double total = 0.0;
  for (int t = 0; t < (int)assignment.size(); ++t) {
    const int a = assignment[t];
    if (a < 0 || instance.is_dummy(a)) continue;
    total += instance.value(a, t);
  }
  return total;
}

void RequirePrediction(const Instance& instance, const Prediction& prediction) {
  if (prediction.size() != instance.num_impressions()) {
    throw ValidationError("prediction has " +
                          std::to_string(prediction.size()) + " entries for " +
                          std::to_string(instance.num_impressions()) +
                          " impressions");
  }
  for (int t = 0; t < prediction.size(); ++t) {
    if (prediction[t] < 0 || prediction[t] >= instance.num_advertisers()) {
      throw ValidationError("prediction for impression " + std::to_string(t) +
                            " names unknown advertiser " +
                            std::to_string(prediction[t]));
    }
  }
}

std::vector<std::string> VerifyRunResult(const Instance& instance,
                                         const RunResult& result) {
  std::vector<std::string> problems;
  const double recomputed = ValueOf(instance, result.final_allocation);
  if (recomputed != result.alg_value) {
    problems.push_back("alg_value does not match the final allocation");
  }
  const int k = instance.num_advertisers();
  if ((int)result.thresholds.size() != k ||
      (int)result.impression_duals.size() != instance.num_impressions()) {
    problems.push_back("dual vectors have the wrong length");
    return problems;
  }
  const double tol = 1e-9 * instance.max_value();
  for (int t = 0; t < instance.num_impressions(); ++t) {
    for (int a = 0; a < k; ++a) {
      const double lhs = result.impression_duals[t] +
                         instance.size(a, t) * result.thresholds[a];
      if (lhs < instance.value(a, t) - tol) {
        problems.push_back("dual infeasible at impression " +
                           std::to_string(t) + ", advertiser " +
                           std::to_string(a));
        return problems;
      }
    }
  }
  return problems;
}

}  // namespace expavg
