//
// Copyright 2026 The kanon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Integer min-cost circulation with arc lower bounds.
//
// Lower bounds are removed by the usual transformation: an arc u->v with
// bounds [l, c] becomes an arc of capacity c - l, v gains l units of supply
// and u gains l units of demand. A super source feeds every supply and a super
// sink drains every demand; the circulation is feasible iff that auxiliary
// flow saturates. The auxiliary flow is found by successive shortest paths
// with Dijkstra on reduced costs, which requires nonnegative arc costs.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "kanon/error.hpp"

namespace kanon {

class MinCostCirculation {
 public:
  using Flow = std::int64_t;
  using Cost = std::int64_t;

  explicit MinCostCirculation(std::size_t nodes)
      : graph_(nodes + 2), supply_(nodes, 0), source_(nodes), sink_(nodes + 1) {}

  /// Adds arc u->v carrying between `lower` and `upper` units at `cost` per
  /// unit. Returns an arc handle for flow().
  std::size_t add_arc(std::size_t u, std::size_t v, Flow lower, Flow upper,
                      Cost cost) {
    if (u >= supply_.size() || v >= supply_.size()) {
      throw ArgumentError("arc endpoint out of range");
    }
    if (lower < 0 || upper < lower) throw ArgumentError("bad arc bounds");
    if (cost < 0) throw ArgumentError("arc costs must be nonnegative");
    supply_[v] += lower;
    supply_[u] -= lower;
    const std::size_t handle = arcs_.size();
    arcs_.push_back({u, graph_[u].size(), lower});
    push_edge(u, v, upper - lower, cost);
    return handle;
  }

  /// Solves for a minimum-cost feasible circulation. Returns its total cost,
  /// or nullopt when the bounds admit no circulation.
  std::optional<Cost> solve() {
    if (attempted_) throw InternalError("circulation already solved");
    attempted_ = true;
    Flow required = 0;
    for (std::size_t v = 0; v < supply_.size(); ++v) {
      if (supply_[v] > 0) {
        push_edge(source_, v, supply_[v], 0);
        required += supply_[v];
      } else if (supply_[v] < 0) {
        push_edge(v, sink_, -supply_[v], 0);
      }
    }
    Cost total = 0;
    for (const auto& a : arcs_) total += a.lower * graph_[a.from][a.index].cost;

    const std::size_t n = graph_.size();
    std::vector<Cost> potential(n, 0);
    std::vector<Cost> dist(n);
    std::vector<std::size_t> prev_node(n), prev_edge(n);
    Flow pushed = 0;
    while (pushed < required) {
      std::fill(dist.begin(), dist.end(), kInfinity);
      dist[source_] = 0;
      using Item = std::pair<Cost, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
      queue.emplace(0, source_);
      while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (std::size_t e = 0; e < graph_[u].size(); ++e) {
          const Edge& edge = graph_[u][e];
          if (edge.capacity <= 0) continue;
          const Cost nd = d + edge.cost + potential[u] - potential[edge.to];
          if (nd < dist[edge.to]) {
            dist[edge.to] = nd;
            prev_node[edge.to] = u;
            prev_edge[edge.to] = e;
            queue.emplace(nd, edge.to);
          }
        }
      }
      if (dist[sink_] == kInfinity) return std::nullopt;
      // Capping at the sink distance keeps reduced costs nonnegative for
      // nodes the search did not reach.
      for (std::size_t v = 0; v < n; ++v) {
        potential[v] += std::min(dist[v], dist[sink_]);
      }
      Flow amount = required - pushed;
      for (std::size_t v = sink_; v != source_; v = prev_node[v]) {
        amount = std::min(amount, graph_[prev_node[v]][prev_edge[v]].capacity);
      }
      for (std::size_t v = sink_; v != source_; v = prev_node[v]) {
        Edge& edge = graph_[prev_node[v]][prev_edge[v]];
        edge.capacity -= amount;
        graph_[v][edge.reverse].capacity += amount;
        total += amount * edge.cost;
      }
      pushed += amount;
    }
    solved_ = true;
    return total;
  }

  /// Flow on an arc added by add_arc, including its lower bound.
  Flow flow(std::size_t handle) const {
    if (!solved_) throw InternalError("flow queried before a successful solve");
    const ArcRef& a = arcs_.at(handle);
    const Edge& edge = graph_[a.from][a.index];
    return a.lower + graph_[edge.to][edge.reverse].capacity;
  }

 private:
  static constexpr Cost kInfinity = std::numeric_limits<Cost>::max() / 4;

  struct Edge {
    std::size_t to;
    std::size_t reverse;
    Flow capacity;
    Cost cost;
  };
  struct ArcRef {
    std::size_t from;
    std::size_t index;
    Flow lower;
  };

  void push_edge(std::size_t u, std::size_t v, Flow capacity, Cost cost) {
    graph_[u].push_back({v, graph_[v].size(), capacity, cost});
    graph_[v].push_back({u, graph_[u].size() - 1, 0, -cost});
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<Flow> supply_;
  std::vector<ArcRef> arcs_;
  std::size_t source_;
  std::size_t sink_;
  bool attempted_ = false;
  bool solved_ = false;
};

}  // namespace kanon
