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

// Successive-shortest-path min-cost flow on a residual arc list. Costs are
// real; Dijkstra runs on reduced costs after a Bellman-Ford initialization so
// negative arc costs are allowed as long as the graph has no negative cycle.

#ifndef EXPAVG_MIN_COST_FLOW_H_
#define EXPAVG_MIN_COST_FLOW_H_

#include <cstdint>
#include <vector>

namespace expavg {

class MinCostFlow {
 public:
  explicit MinCostFlow(int num_nodes);

  // Returns the arc index. Its residual twin is index ^ 1.
  int AddArc(int from, int to, std::int64_t capacity, double cost);

  struct Result {
    std::int64_t flow = 0;
    double cost = 0.0;
  };

  // Augments along cheapest paths while the path cost is negative (or, with
  // stop_at_nonnegative == false, while any path exists).
  Result Solve(int source, int sink, bool stop_at_nonnegative);

  std::int64_t Flow(int arc) const { return flow_[arc]; }
  int num_nodes() const { return static_cast<int>(head_.size()); }

  // Shortest distance from every node to target over arcs with residual
  // capacity; +inf where target is unreachable.
  std::vector<double> ResidualDistancesTo(int target) const;

 private:
  struct Arc {
    int to;
    int next;
    std::int64_t capacity;
    double cost;
  };

  std::int64_t Residual(int arc) const {
    return arcs_[arc].capacity - flow_[arc];
  }
  bool InitialPotentials(int source);

  std::vector<Arc> arcs_;
  std::vector<std::int64_t> flow_;
  std::vector<int> head_;
  std::vector<double> potential_;
};

}  // namespace expavg

#endif  // EXPAVG_MIN_COST_FLOW_H_
