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
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fairplace/portfolio.hpp"
#include "fairplace/refine.hpp"
#include "fairplace/line_refine.hpp"
#include "fairplace/rounding.hpp"
#include "fairplace/tree_refine.hpp"

namespace fairplace {

enum class RefineBackend { kAuto, kGeneral, kLine, kTree };

struct RefineOptions {
  double gamma = 0.0;  // 0 = automatic 1 + 1/sqrt(l)
  ApproxOptions approx;
  RefineBackend backend = RefineBackend::kAuto;
};

struct RefineResult {
  RefinementChain chain;
  // General-metric backend diagnostics (recurrence table, measured blowup).
  std::optional<LookaheadDiagnostics> lookahead;
  // Line backend artifact for structural verification.
  std::optional<LineHierarchy> line_tree;
};

namespace detail {

inline std::vector<Solution> per_norm_solutions(const Instance& inst,
                                                const std::vector<NormParam>& norms,
                                                Model model, const ApproxOptions& approx) {
  std::vector<Solution> sols;
  for (NormParam p : norms) sols.push_back(approx_solve(inst, p, model, approx).solution);
  return sols;
}

inline double auto_gamma(int l) { return 1.0 + 1.0 / std::sqrt(static_cast<double>(l)); }

// Facility chain -> dedeuplicated line levels. Colocated facilities within a
// level merge into the one surviving to the highest level (id-rank ties).
inline std::vector<std::vector<LineEntry>> line_levels_from_chain(
    const Instance& inst, const RefinementChain& chain) {
  int l = chain.num_levels();
  std::vector<int> rank = inst.facility_id_rank();
  std::vector<int> top_level(inst.num_facilities(), 0);
  for (int k = 0; k < l; ++k)
    for (int i : chain.levels[k].open) top_level[i] = std::max(top_level[i], k + 1);
  std::vector<std::vector<LineEntry>> levels(l);
  for (int k = 0; k < l; ++k) {
    std::map<double, int> rep;
    for (int i : chain.levels[k].open) {
      double x = inst.facilities[i].point.x;
      auto [it, fresh] = rep.try_emplace(x, i);
      if (!fresh) {
        int& cur = it->second;
        if (top_level[i] > top_level[cur] ||
            (top_level[i] == top_level[cur] && rank[i] < rank[cur]))
          cur = i;
      }
    }
    for (auto [x, i] : rep) levels[k].push_back({x, i});
  }
  return levels;
}

inline RefinementChain line_reassign(const Instance& inst, const RefinementChain& weak,
                                     std::optional<LineHierarchy>* artifact) {
  auto levels = line_levels_from_chain(inst, weak);
  ExpandResult er = expand_intervals(levels);
  RefinementChain out = weak;
  for (int k = 0; k < weak.num_levels(); ++k) {
    out.levels[k].assign.assign(inst.num_clients(), -1);
    for (int j = 0; j < inst.num_clients(); ++j)
      out.levels[k].assign[j] = er.tree.assign(k + 1, inst.clients[j].point.x);
  }
  if (artifact) *artifact = std::move(er.tree);
  return out;
}

// Tree backend preconditions: uniform facility costs and a candidate
// facility at every vertex (so branch vertices can actually be opened).
inline void require_tree_assumptions(const Instance& inst) {
  if (!inst.metric.is_tree())
    throw UnsupportedConfiguration("tree refinement: instance metric is not a tree");
  for (const Facility& f : inst.facilities)
    if (f.cost != inst.facilities.front().cost)
      throw UnsupportedConfiguration("tree refinement: facility costs are not uniform");
  const TreeMetric& tree = inst.metric.tree();
  std::vector<char> has(tree.n, 0);
  for (const Facility& f : inst.facilities) has[f.point.index] = 1;
  for (int v = 0; v < tree.n; ++v)
    if (!has[v])
      throw UnsupportedConfiguration("tree refinement: vertex " + std::to_string(v) +
                                     " has no candidate facility");
}

inline RefinementChain tree_reassign(const Instance& inst, const RefinementChain& weak) {
  require_tree_assumptions(inst);
  const TreeMetric& tree = inst.metric.tree();
  int l = weak.num_levels();
  std::vector<int> rank = inst.facility_id_rank();
  // Representative facility per vertex (uniform costs: smallest id).
  std::vector<int> fac_at(tree.n, -1);
  for (int i = 0; i < inst.num_facilities(); ++i) {
    int v = inst.facilities[i].point.index;
    if (fac_at[v] < 0 || rank[i] < rank[fac_at[v]]) fac_at[v] = i;
  }

  std::vector<std::set<int>> gprime(l);
  for (int k = 0; k < l; ++k) {
    std::set<int> vertices;
    for (int i : weak.levels[k].open) vertices.insert(inst.facilities[i].point.index);
    gprime[k] = augment_branch_vertices(tree, vertices);
  }
  std::set<int> universe;
  for (int v = 0; v < tree.n; ++v) universe.insert(v);
  auto vertex_assign = branch_and_linearize(tree, l, gprime, universe);

  RefinementChain out = weak;
  for (int k = 0; k < l; ++k) {
    out.levels[k].open.clear();
    for (int v : gprime[k]) out.levels[k].open.push_back(fac_at[v]);
    std::sort(out.levels[k].open.begin(), out.levels[k].open.end());
    out.levels[k].assign.assign(inst.num_clients(), -1);
    for (int j = 0; j < inst.num_clients(); ++j) {
      int v = vertex_assign[k][inst.clients[j].point.index];
      out.levels[k].assign[j] = fac_at[v];
    }
  }
  return out;
}

inline bool tree_assumptions_hold(const Instance& inst) {
  try {
    require_tree_assumptions(inst);
    return true;
  } catch (const UnsupportedConfiguration&) {
    return false;
  }
}

inline RefineBackend resolve_backend(const Instance& inst, RefineBackend backend) {
  if (backend != RefineBackend::kAuto) return backend;
  if (inst.metric.is_line()) return RefineBackend::kLine;
  if (inst.metric.is_tree() && tree_assumptions_hold(inst)) return RefineBackend::kTree;
  return RefineBackend::kGeneral;
}

}  // namespace detail

// Strong refinement on arbitrary metrics: 4-approximate solutions per norm,
// suffix-union weak refinement, then the discounted lookahead reassignment
// with gamma = 1 + 1/sqrt(l) unless overridden.
inline RefineResult strong_refine(const Instance& inst, const std::vector<NormParam>& norms,
                                  Model model = Model::kStandard, RefineOptions opts = {}) {
  if (norms.empty()) throw std::invalid_argument("strong_refine: empty norm set");
  RefinementChain weak =
      weak_refine(inst, detail::per_norm_solutions(inst, norms, model, opts.approx), norms);
  RefineResult out;
  if (weak.num_levels() == 1) {
    out.chain = std::move(weak);
    return out;
  }
  double gamma = opts.gamma > 0 ? opts.gamma : detail::auto_gamma(weak.num_levels());
  LookaheadResult res = discounted_lookahead(inst, weak, gamma);
  out.chain = std::move(res.chain);
  out.lookahead = std::move(res.diag);
  return out;
}

// Line-metric strong refinement via interval expansion (O(l) blowup).
inline RefineResult line_strong_refine(const Instance& inst,
                                       const std::vector<NormParam>& norms,
                                       Model model = Model::kStandard,
                                       RefineOptions opts = {}) {
  if (!inst.metric.is_line())
    throw UnsupportedConfiguration("line_strong_refine: instance metric is not a line");
  RefinementChain weak =
      weak_refine(inst, detail::per_norm_solutions(inst, norms, model, opts.approx), norms);
  RefineResult out;
  out.chain = detail::line_reassign(inst, weak, &out.line_tree);
  return out;
}

// Tree-metric strong refinement: suffix unions, branch-vertex augmentation,
// then path-wise interval expansion.
inline RefineResult tree_strong_refine(const Instance& inst,
                                       const std::vector<NormParam>& norms,
                                       Model model = Model::kStandard,
                                       RefineOptions opts = {}) {
  RefinementChain weak =
      weak_refine(inst, detail::per_norm_solutions(inst, norms, model, opts.approx), norms);
  RefineResult out;
  out.chain = detail::tree_reassign(inst, weak);
  return out;
}

inline RefineResult strong_refine_auto(const Instance& inst,
                                       const std::vector<NormParam>& norms,
                                       Model model = Model::kStandard,
                                       RefineOptions opts = {}) {
  switch (detail::resolve_backend(inst, opts.backend)) {
    case RefineBackend::kLine:
      return line_strong_refine(inst, norms, model, opts);
    case RefineBackend::kTree:
      return tree_strong_refine(inst, norms, model, opts);
    default:
      return strong_refine(inst, norms, model, opts);
  }
}

namespace detail {

inline RefinementChain reverse_chain(const RefinementChain& chain) {
  RefinementChain out = chain;
  std::reverse(out.levels.begin(), out.levels.end());
  std::reverse(out.norms.begin(), out.norms.end());
  out.direction = chain.direction == ChainDirection::kDecreasing
                      ? ChainDirection::kIncreasing
                      : ChainDirection::kDecreasing;
  return out;
}

}  // namespace detail

enum class RefineMode { kWeak, kGreedy, kStrong };

// Increasing refinements for the normalized model: OPT grows with p there,
// so facility sets accumulate toward higher norms (prefix unions). The
// strong reassignment reuses the decreasing machinery on the reversed
// chain.
inline RefineResult increasing_refine(const Instance& inst,
                                      const std::vector<NormParam>& norms,
                                      RefineMode mode = RefineMode::kWeak,
                                      RefineOptions opts = {}) {
  if (norms.empty()) throw std::invalid_argument("increasing_refine: empty norm set");
  for (std::size_t k = 0; k + 1 < norms.size(); ++k)
    if (!(norms[k] < norms[k + 1]))
      throw std::invalid_argument("increasing_refine: norms must be strictly ascending");
  std::vector<Solution> sols =
      detail::per_norm_solutions(inst, norms, Model::kNormalized, opts.approx);

  int l = static_cast<int>(sols.size());
  std::vector<std::vector<int>> unions(l);
  std::set<int> acc;
  for (int k = 0; k < l; ++k) {
    acc.insert(sols[k].open.begin(), sols[k].open.end());
    unions[k].assign(acc.begin(), acc.end());
  }
  RefinementChain weak =
      chain_from_open_sets(inst, std::move(unions), ChainDirection::kIncreasing, norms);

  RefineResult out;
  if (mode == RefineMode::kWeak || l == 1) {
    out.chain = std::move(weak);
    return out;
  }
  RefinementChain reversed = detail::reverse_chain(weak);
  if (mode == RefineMode::kGreedy) {
    out.chain = detail::reverse_chain(greedy_strong_refine(inst, reversed));
    return out;
  }
  switch (detail::resolve_backend(inst, opts.backend)) {
    case RefineBackend::kLine:
      out.chain = detail::reverse_chain(detail::line_reassign(inst, reversed, &out.line_tree));
      break;
    case RefineBackend::kTree:
      out.chain = detail::reverse_chain(detail::tree_reassign(inst, reversed));
      break;
    default: {
      double gamma = opts.gamma > 0 ? opts.gamma : detail::auto_gamma(l);
      LookaheadResult res = discounted_lookahead(inst, reversed, gamma);
      out.chain = detail::reverse_chain(res.chain);
      out.lookahead = std::move(res.diag);
      break;
    }
  }
  return out;
}

}  // namespace fairplace
