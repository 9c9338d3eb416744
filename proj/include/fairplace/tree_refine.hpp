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

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "fairplace/line_refine.hpp"
#include "fairplace/metric.hpp"

namespace fairplace {

// Vertices of the Steiner subtree T_S: the minimal subtree spanning S.
// Computed by repeatedly pruning leaves outside S.
inline std::set<int> steiner_vertices(const TreeMetric& tree, const std::set<int>& s,
                                      const std::set<int>& universe) {
  std::map<int, int> degree;
  std::set<int> alive = universe;
  for (int v : universe) {
    int d = 0;
    for (auto [w, wt] : tree.adj[v])
      if (universe.count(w)) ++d;
    degree[v] = d;
  }
  std::vector<int> queue;
  for (int v : alive)
    if (degree[v] <= 1 && !s.count(v)) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    if (!alive.count(v) || s.count(v) || degree[v] > 1) continue;
    alive.erase(v);
    for (auto [w, wt] : tree.adj[v])
      if (alive.count(w)) {
        if (--degree[w] <= 1 && !s.count(w)) queue.push_back(w);
      }
  }
  return alive;
}

// G'_k = G_k plus every branch vertex (degree >= 3) of the Steiner subtree
// T_{G_k}. A tree has no more branch vertices than leaves, so |G'_k| <= 2|G_k|.
inline std::set<int> augment_branch_vertices(const TreeMetric& tree,
                                             const std::set<int>& gk) {
  if (gk.empty()) throw std::invalid_argument("augment_branch_vertices: empty set");
  std::set<int> universe;
  for (int v = 0; v < tree.n; ++v) universe.insert(v);
  std::set<int> sub = steiner_vertices(tree, gk, universe);
  std::set<int> out = gk;
  for (int v : sub) {
    int deg = 0;
    for (auto [w, wt] : tree.adj[v])
      if (sub.count(w)) ++deg;
    if (deg >= 3) out.insert(v);
  }
  return out;
}

namespace detail {

struct TreePath {
  std::vector<int> vertices;     // endpoints in G'_t
  std::vector<double> position;  // cumulative edge weight from vertices[0]
};

// Splits the Steiner subtree of `top` into paths between consecutive
// vertices of `top`; valid when `top` contains every branch vertex.
inline std::vector<TreePath> decompose_paths(const TreeMetric& tree,
                                             const std::set<int>& sub,
                                             const std::set<int>& top) {
  std::vector<TreePath> paths;
  std::set<std::pair<int, int>> seen_edges;
  for (int v : top) {
    if (!sub.count(v)) continue;
    for (auto [w0, wt0] : tree.adj[v]) {
      if (!sub.count(w0)) continue;
      if (seen_edges.count({v, w0})) continue;
      TreePath p;
      p.vertices = {v};
      p.position = {0.0};
      int prev = v, cur = w0;
      double pos = wt0;
      seen_edges.insert({v, w0});
      seen_edges.insert({w0, v});
      while (true) {
        p.vertices.push_back(cur);
        p.position.push_back(pos);
        if (top.count(cur)) break;
        int nxt = -1;
        double wnext = 0.0;
        for (auto [w, wt] : tree.adj[cur]) {
          if (!sub.count(w) || w == prev) continue;
          if (nxt >= 0)
            throw std::logic_error("decompose_paths: branch vertex outside the top set");
          nxt = w;
          wnext = wt;
        }
        if (nxt < 0) throw std::logic_error("decompose_paths: dangling path");
        seen_edges.insert({cur, nxt});
        seen_edges.insert({nxt, cur});
        prev = cur;
        cur = nxt;
        pos += wnext;
      }
      paths.push_back(std::move(p));
    }
  }
  return paths;
}

}  // namespace detail

// Strong-refinement assignments on a tree: decompose the Steiner subtree of
// the top level into paths, run the line algorithm on each, and absorb the
// off-tree components into their attachment vertex (recursing where a
// component still holds lower-level facilities). Returns one vertex-to-
// vertex map per level; entries for vertices outside the given universe
// stay -1.
inline std::vector<std::vector<int>> branch_and_linearize(
    const TreeMetric& tree, int t, const std::vector<std::set<int>>& gprime,
    const std::set<int>& universe) {
  std::vector<std::vector<int>> assign(t, std::vector<int>(tree.n, -1));
  if (t == 0) return assign;
  if (static_cast<int>(gprime.size()) < t)
    throw std::invalid_argument("branch_and_linearize: missing levels");
  for (int k = 0; k < t; ++k) {
    std::set<int> in_universe;
    for (int v : gprime[k])
      if (universe.count(v)) in_universe.insert(v);
    if (in_universe.empty())
      throw std::invalid_argument("branch_and_linearize: a level has no facility here");
    if (k + 1 < t)
      for (int v : gprime[k + 1])
        if (universe.count(v) && !gprime[k].count(v))
          throw std::invalid_argument("branch_and_linearize: levels are not nested");
  }

  std::set<int> top;
  for (int v : gprime[t - 1])
    if (universe.count(v)) top.insert(v);
  std::set<int> sub = steiner_vertices(tree, top, universe);

  // Highest level each vertex reaches; used to pick a deterministic
  // representative among vertices at the same path position.
  auto top_level = [&](int v) {
    for (int k = t; k >= 1; --k)
      if (gprime[k - 1].count(v)) return k;
    return 0;
  };

  if (top.size() == 1) {
    int v0 = *top.begin();
    for (int k = 0; k < t; ++k) assign[k][v0] = v0;
  }
  for (const detail::TreePath& path : detail::decompose_paths(tree, sub, top)) {
    std::vector<std::vector<LineEntry>> levels(t);
    for (int k = 1; k <= t; ++k) {
      std::map<double, int> rep;  // position -> representative vertex
      for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        int v = path.vertices[i];
        if (!gprime[k - 1].count(v)) continue;
        auto [it, fresh] = rep.try_emplace(path.position[i], v);
        if (!fresh) {
          int& cur = it->second;
          if (top_level(v) > top_level(cur) || (top_level(v) == top_level(cur) && v < cur))
            cur = v;
        }
      }
      for (auto [x, v] : rep) levels[k - 1].push_back({x, v});
    }
    ExpandResult er = expand_intervals(levels);
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
      int v = path.vertices[i];
      for (int k = 1; k <= t; ++k) {
        int target = er.tree.assign(k, path.position[i]);
        if (assign[k - 1][v] < 0) assign[k - 1][v] = target;
      }
    }
  }

  // Off-tree components hang off a unique attachment vertex of the subtree.
  std::set<int> remaining;
  for (int v : universe)
    if (!sub.count(v)) remaining.insert(v);
  while (!remaining.empty()) {
    int start = *remaining.begin();
    std::set<int> comp;
    std::vector<int> stack = {start};
    comp.insert(start);
    int attach = -1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, wt] : tree.adj[v]) {
        if (!universe.count(w)) continue;
        if (sub.count(w)) {
          attach = w;
        } else if (!comp.count(w)) {
          comp.insert(w);
          stack.push_back(w);
        }
      }
    }
    if (attach < 0) throw std::logic_error("branch_and_linearize: detached component");
    for (int v : comp) remaining.erase(v);

    int s = t + 1;  // least level whose facilities miss this component
    for (int k = 1; k <= t; ++k) {
      bool has = false;
      for (int v : comp)
        if (gprime[k - 1].count(v)) {
          has = true;
          break;
        }
      if (!has) {
        s = k;
        break;
      }
    }
    for (int k = s; k <= t; ++k)
      for (int v : comp) assign[k - 1][v] = assign[k - 1][attach];
    if (s > 1) {
      std::set<int> sub_universe = comp;
      sub_universe.insert(attach);
      auto rec = branch_and_linearize(tree, s - 1, gprime, sub_universe);
      for (int k = 0; k < s - 1; ++k)
        for (int v : comp)
          if (assign[k][v] < 0) assign[k][v] = rec[k][v];
    }
  }
  return assign;
}

}  // namespace fairplace
