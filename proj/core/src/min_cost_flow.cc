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

#include "expavg/min_cost_flow.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace expavg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

MinCostFlow::MinCostFlow(int num_nodes) : head_(num_nodes, -1) {}

int MinCostFlow::AddArc(int from, int to, std::int64_t capacity, double cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[from], capacity, cost});
  head_[from] = id;
  arcs_.push_back({from, head_[to], 0, -cost});
  head_[to] = id + 1;
  flow_.push_back(0);
  flow_.push_back(0);
  return id;
}

// Queue-based Bellman-Ford from the source; false on a negative cycle.
bool MinCostFlow::InitialPotentials(int source) {
  const int n = num_nodes();
  potential_.assign(n, kInf);
  std::vector<int> relaxations(n, 0);
  std::vector<char> queued(n, 0);
  std::deque<int> queue{source};
  potential_[source] = 0.0;
  queued[source] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    for (int e = head_[v]; e != -1; e = arcs_[e].next) {
      if (Residual(e) <= 0) continue;
      const double d = potential_[v] + arcs_[e].cost;
      const int w = arcs_[e].to;
      if (d < potential_[w]) {
        potential_[w] = d;
        if (!queued[w]) {
          if (++relaxations[w] > n) return false;
          queued[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  for (double& p : potential_) {
    if (p == kInf) p = 0.0;
  }
  return true;
}

MinCostFlow::Result MinCostFlow::Solve(int source, int sink,
                                       bool stop_at_nonnegative) {
  if (!InitialPotentials(source)) {
    throw std::logic_error("min-cost flow network has a negative cycle");
  }
  const int n = num_nodes();
  Result result;
  std::vector<double> dist(n);
  std::vector<int> parent_arc(n);
  using Entry = std::pair<double, int>;
  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (int e = head_[v]; e != -1; e = arcs_[e].next) {
        if (Residual(e) <= 0) continue;
        const int w = arcs_[e].to;
        // Rounding can leave reduced costs a hair below zero.
        const double reduced =
            std::max(0.0, arcs_[e].cost + potential_[v] - potential_[w]);
        if (d + reduced < dist[w]) {
          dist[w] = d + reduced;
          parent_arc[w] = e;
          heap.push({dist[w], w});
        }
      }
    }
    if (dist[sink] == kInf) break;

    double path_cost = 0.0;
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (int v = sink; v != source; v = arcs_[parent_arc[v] ^ 1].to) {
      path_cost += arcs_[parent_arc[v]].cost;
      push = std::min(push, Residual(parent_arc[v]));
    }
    if (stop_at_nonnegative && path_cost >= 0.0) break;

    for (int v = sink; v != source; v = arcs_[parent_arc[v] ^ 1].to) {
      flow_[parent_arc[v]] += push;
      flow_[parent_arc[v] ^ 1] -= push;
    }
    result.flow += push;
    result.cost += path_cost * static_cast<double>(push);
    for (int v = 0; v < n; ++v) {
      potential_[v] += std::min(dist[v], dist[sink]);
    }
  }
  return result;
}

std::vector<double> MinCostFlow::ResidualDistancesTo(int target) const {
  const int n = num_nodes();
  // Reverse adjacency over residual arcs.
  std::vector<std::vector<std::pair<int, double>>> incoming(n);
  for (int v = 0; v < n; ++v) {
    for (int e = head_[v]; e != -1; e = arcs_[e].next) {
      if (Residual(e) > 0) incoming[arcs_[e].to].push_back({v, arcs_[e].cost});
    }
  }
  std::vector<double> dist(n, kInf);
  std::vector<int> relaxations(n, 0);
  std::vector<char> queued(n, 0);
  std::deque<int> queue{target};
  dist[target] = 0.0;
  queued[target] = 1;
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    queued[w] = 0;
    for (const auto& [v, cost] : incoming[w]) {
      const double d = dist[w] + cost;
      // Zero-cost cycles may sum to a tiny negative number after rounding;
      // demand a relative improvement so they cannot loop forever.
      if (d < dist[v] - 1e-12 * (1.0 + std::abs(d))) {
        dist[v] = d;
        if (!queued[v]) {
          if (++relaxations[v] > n) {
            throw std::logic_error("residual graph has a negative cycle");
          }
          queued[v] = 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

}  // namespace expavg
