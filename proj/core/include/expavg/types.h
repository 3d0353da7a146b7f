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

// Domain types shared by every module: instances, predictions, allocation
// state and run results for online Display Ads and GAP with free disposal.

#ifndef EXPAVG_TYPES_H_
#define EXPAVG_TYPES_H_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace expavg {

// Input that fails a documented precondition. The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or discretization would exceed its work guard. Exit code 3.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { kDisplayAds, kGap };

const char* ToString(ProblemKind kind);

struct Advertiser {
  int id = 0;
  // Number of impressions (Display Ads) or capacity, normalized to 1 (GAP).
  double budget = 1.0;

  bool operator==(const Advertiser&) const = default;
};

struct Impression {
  int id = 0;
  // values[a] is the value advertiser a derives from this impression.
  std::vector<double> values;
  // sizes[a] is the budget consumption for advertiser a; empty for Display Ads.
  std::vector<double> sizes;

  bool operator==(const Impression&) const = default;
};

struct Instance {
  ProblemKind kind = ProblemKind::kDisplayAds;
  std::vector<Advertiser> advertisers;
  std::vector<Impression> impressions;
  // When set, the last advertiser is the zero-value dummy sink.
  bool has_dummy = false;

  int num_advertisers() const { return static_cast<int>(advertisers.size()); }
  int num_impressions() const { return static_cast<int>(impressions.size()); }
  int num_real_advertisers() const {
    return num_advertisers() - (has_dummy ? 1 : 0);
  }
  // Id of the dummy advertiser, or -1.
  int dummy_id() const { return has_dummy ? num_advertisers() - 1 : -1; }
  bool is_dummy(int a) const { return has_dummy && a == num_advertisers() - 1; }

  double value(int a, int t) const { return impressions[t].values[a]; }
  // Budget consumption; one unit per impression for Display Ads.
  double size(int a, int t) const {
    return kind == ProblemKind::kGap ? impressions[t].sizes[a] : 1.0;
  }
  // Integer budget of a Display Ads advertiser.
  int budget(int a) const { return static_cast<int>(advertisers[a].budget); }
  // min_a B_a over the real advertisers; 0 when there are none.
  int min_real_budget() const;
  double max_value() const;
  double max_size() const;

  bool operator==(const Instance&) const = default;
};

// Streaming map impression -> advertiser. Budget feasibility is not required.
struct Prediction {
  std::vector<int> assignment;

  int size() const { return static_cast<int>(assignment.size()); }
  int operator[](int t) const { return assignment[t]; }
  bool operator==(const Prediction&) const = default;
};

struct Violation {
  std::string field;
  int impression = -1;
  int advertiser = -1;
  std::string message;
};

std::string ToString(const Violation& violation);

// Checks every type invariant. An empty result means the instance is valid.
std::vector<Violation> ValidateInstance(const Instance& instance);

// Throws ValidationError carrying the first violation, if any.
void RequireValid(const Instance& instance);

// Copy with a zero-value dummy appended as the last advertiser. The dummy has
// budget T (Display Ads, at least 1) or capacity 1 (GAP).
Instance WithDummy(const Instance& instance);

// The copy without its dummy advertiser (identity if there is none).
Instance WithoutDummy(const Instance& instance);

// held[a] lists the impression ids currently assigned to advertiser a.
using HeldSets = std::vector<std::vector<int>>;

// Sum of held values. Throws ValidationError naming the advertiser when a held
// set exceeds its budget or capacity.
double ValueOf(const Instance& instance, const HeldSets& held);

// Total value of an offline assignment (-1 or the dummy means unassigned),
// summed in arrival order.
double AssignmentValue(const Instance& instance,
                       const std::vector<int>& assignment);

// One held impression, ordered by (value, id) so the least valuable is unique.
struct HeldImpression {
  double value = 0.0;
  int id = 0;

  auto operator<=>(const HeldImpression&) const = default;
};

// Mutable state of the Display Ads engine.
struct AllocationState {
  // Sorted ascending; exactly B_a entries per real advertiser. Zero-value
  // fillers carry synthetic ids T, T+1, ...
  std::vector<std::vector<HeldImpression>> held;
  std::vector<double> thresholds;
  // Append-only log of every impression ever assigned (the set X_a).
  std::vector<std::vector<int>> ever_assigned;
};

struct StepRecord {
  int t = 0;
  int predicted = 0;
  int greedy = 0;
  int chosen = 0;
  bool followed_prediction = false;
  double disposed_value = 0.0;
  double delta_primal = 0.0;
  double delta_dual = 0.0;
  double impression_dual = 0.0;
  double threshold_after = 0.0;
};

struct RunResult {
  double alpha = 1.0;
  // Real impression ids held at the end, ascending per advertiser. The dummy's
  // list stays empty since it contributes nothing.
  HeldSets final_allocation;
  double alg_value = 0.0;
  // Final thresholds (dual prices of the budget constraints).
  std::vector<double> thresholds;
  // Dual variable of every impression constraint.
  std::vector<double> impression_duals;
  std::vector<StepRecord> trace;
  int followed_steps = 0;
};

// Throws ValidationError unless the prediction has one entry per impression,
// each in [0, k).
void RequirePrediction(const Instance& instance, const Prediction& prediction);

// Recomputes ALG from the final allocation and checks dual feasibility
// z_t + u_at * beta_a >= w_at - tol with tol = 1e-9 * max w.
std::vector<std::string> VerifyRunResult(const Instance& instance,
                                         const RunResult& result);

}  // namespace expavg

#endif  // EXPAVG_TYPES_H_
