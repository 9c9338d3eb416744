// Copyright 2026 The Fairplace Authors
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

#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fairplace/common.hpp"

namespace fairplace {

// A point in whichever metric variant the instance uses. `index` addresses
// explicit-matrix rows and tree vertices; `x` (and `y`) hold coordinates for
// the line and plane variants. Unused fields stay at their defaults.
struct PointRef {
  int index = -1;
  double x = 0.0;
  double y = 0.0;
};

struct ExplicitMetric {
  std::vector<std::vector<double>> d;
  int size() const { return static_cast<int>(d.size()); }
};

struct LineMetric {};

struct PlaneMetric {};

struct TreeMetric {
  struct Edge {
    int u = 0;
    int v = 0;
    double w = 0.0;
  };

  int n = 0;
  std::vector<Edge> edges;
  // All-pairs path lengths, filled by build(). Trees here are small (the
  // refinement algorithms enumerate them exhaustively), so a dense matrix
  // is the simplest cache.
  std::vector<std::vector<double>> dist;
  std::vector<std::vector<std::pair<int, double>>> adj;

  bool built() const { return !dist.empty(); }

  // Computes adjacency and all-pairs distances. Throws if the edge list is
  // not a tree on [0, n) with nonnegative weights.
  void build() {
    if (n <= 0) throw std::invalid_argument("tree metric: no vertices");
    if (static_cast<int>(edges.size()) != n - 1)
      throw std::invalid_argument("tree metric: edge count must be n - 1");
    adj.assign(n, {});
    for (const Edge& e : edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw std::invalid_argument("tree metric: edge endpoint out of range");
      if (e.w < 0) throw std::invalid_argument("tree metric: negative edge weight");
      adj[e.u].push_back({e.v, e.w});
      adj[e.v].push_back({e.u, e.w});
    }
    dist.assign(n, std::vector<double>(n, -1.0));
    for (int s = 0; s < n; ++s) {
      dist[s][s] = 0.0;
      std::queue<int> q;
      q.push(s);
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, w] : adj[u]) {
          if (dist[s][v] < 0) {
            dist[s][v] = dist[s][u] + w;
            q.push(v);
          }
        }
      }
      for (int v = 0; v < n; ++v)
        if (dist[s][v] < 0)
          throw std::invalid_argument("tree metric: graph is not connected");
    }
  }
};

struct MetricSpace {
  std::variant<ExplicitMetric, LineMetric, TreeMetric, PlaneMetric> variant;

  bool is_line() const { return std::holds_alternative<LineMetric>(variant); }
  bool is_tree() const { return std::holds_alternative<TreeMetric>(variant); }
  bool is_explicit() const { return std::holds_alternative<ExplicitMetric>(variant); }
  bool is_plane() const { return std::holds_alternative<PlaneMetric>(variant); }

  const TreeMetric& tree() const { return std::get<TreeMetric>(variant); }

  std::string type_name() const {
    if (is_explicit()) return "explicit";
    if (is_line()) return "line";
    if (is_tree()) return "tree";
    return "euclidean";
  }
};

inline double distance(const MetricSpace& m, const PointRef& a, const PointRef& b) {
  if (const auto* e = std::get_if<ExplicitMetric>(&m.variant)) {
    if (a.index < 0 || a.index >= e->size() || b.index < 0 || b.index >= e->size())
      throw std::invalid_argument("distance: unknown point id for explicit metric");
    return e->d[a.index][b.index];
  }
  if (std::holds_alternative<LineMetric>(m.variant)) {
    return std::abs(a.x - b.x);
  }
  if (const auto* t = std::get_if<TreeMetric>(&m.variant)) {
    if (a.index < 0 || a.index >= t->n || b.index < 0 || b.index >= t->n)
      throw std::invalid_argument("distance: unknown point id for tree metric");
    return t->dist[a.index][b.index];
  }
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline MetricSpace make_line_metric() { return MetricSpace{LineMetric{}}; }

inline MetricSpace make_plane_metric() { return MetricSpace{PlaneMetric{}}; }

inline MetricSpace make_explicit_metric(std::vector<std::vector<double>> d) {
  return MetricSpace{ExplicitMetric{std::move(d)}};
}

inline MetricSpace make_tree_metric(int n, std::vector<TreeMetric::Edge> edges) {
  TreeMetric t;
  t.n = n;
  t.edges = std::move(edges);
  t.build();
  return MetricSpace{std::move(t)};
}

}  // namespace fairplace
