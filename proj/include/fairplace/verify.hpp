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
#include <string>
#include <vector>

#include "fairplace/brute_force.hpp"
#include "fairplace/line_refine.hpp"
#include "fairplace/portfolio.hpp"
#include "fairplace/refine.hpp"

namespace fairplace {

// Facility-set nesting in the chain's declared direction. Pure set
// comparisons, no tolerances.
inline Report check_weak(const RefinementChain& chain) {
  Report rep;
  for (int k = 0; k + 1 < chain.num_levels(); ++k) {
    const auto& wide = chain.direction == ChainDirection::kDecreasing
                           ? chain.levels[k].open
                           : chain.levels[k + 1].open;
    const auto& narrow = chain.direction == ChainDirection::kDecreasing
                             ? chain.levels[k + 1].open
                             : chain.levels[k].open;
    std::set<int> wide_set(wide.begin(), wide.end());
    for (int i : narrow)
      if (!wide_set.count(i))
        rep.add("weak-refinement", "levels " + std::to_string(k + 1) + "/" + std::to_string(k + 2),
                "facility " + std::to_string(i) + " missing from the wider level");
  }
  return rep;
}

// Client blocks must nest: every block of the finer level maps into a
// single block one level coarser.
inline Report check_strong(const RefinementChain& chain) {
  Report rep = check_weak(chain);
  for (int k = 0; k + 1 < chain.num_levels(); ++k) {
    int fine = chain.direction == ChainDirection::kDecreasing ? k : k + 1;
    int coarse = chain.direction == ChainDirection::kDecreasing ? k + 1 : k;
    const auto& fa = chain.levels[fine].assign;
    const auto& ca = chain.levels[coarse].assign;
    if (fa.size() != ca.size()) {
      rep.add("strong-refinement", "levels " + std::to_string(k + 1) + "/" + std::to_string(k + 2),
              "assignments differ in length");
      continue;
    }
    std::map<int, int> block_target;  // fine facility -> coarse facility
    for (std::size_t j = 0; j < fa.size(); ++j) {
      auto [it, fresh] = block_target.try_emplace(fa[j], ca[j]);
      if (!fresh && it->second != ca[j])
        rep.add("strong-refinement",
                "levels " + std::to_string(fine + 1) + "->" + std::to_string(coarse + 1),
                "clients of facility " + std::to_string(fa[j]) +
                    " split across coarser facilities " + std::to_string(it->second) + " and " +
                    std::to_string(ca[j]));
    }
  }
  return rep;
}

// The three hierarchy-tree conditions on a line-refinement artifact:
// interval tree (containment + sibling disjointness), immediate parent,
// and completeness (children partition their parent; per-level intervals
// partition the line). Exact comparisons throughout.
inline Report check_interval_tree(const LineHierarchy& h) {
  Report rep;
  int top = h.num_levels_with_aux();
  for (int k = 1; k <= top; ++k) {
    for (int i = 0; i < static_cast<int>(h.levels[k - 1].size()); ++i) {
      auto par = h.parent[k - 1][i];
      if (par.level < 0) {
        if (k != top)
          rep.add("interval-tree", "level " + std::to_string(k),
                  "non-root node without a parent");
        continue;
      }
      if (par.level != k + 1)
        rep.add("immediate-parent", "level " + std::to_string(k),
                "parent sits at level " + std::to_string(par.level));
      if (!h.intervals[par.level - 1][par.idx].contains(h.intervals[k - 1][i]))
        rep.add("interval-tree", "level " + std::to_string(k),
                "child interval escapes its parent");
    }
  }
  // Sibling disjointness and per-parent completeness.
  for (int k = 2; k <= top; ++k) {
    for (int i = 0; i < static_cast<int>(h.levels[k - 1].size()); ++i) {
      auto kids = h.children_of(k, i);
      if (kids.empty()) continue;
      std::vector<Interval> ivs;
      for (auto kid : kids) ivs.push_back(h.intervals[kid.level - 1][kid.idx]);
      std::sort(ivs.begin(), ivs.end(),
                [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
      for (std::size_t t = 0; t + 1 < ivs.size(); ++t) {
        if (ivs[t].hi > ivs[t + 1].lo)
          rep.add("interval-tree", "level " + std::to_string(k - 1),
                  "sibling intervals overlap internally");
        if (ivs[t].hi != ivs[t + 1].lo)
          rep.add("completeness", "level " + std::to_string(k - 1),
                  "gap between sibling intervals");
      }
      const Interval& parent_iv = h.intervals[k - 1][i];
      if (ivs.front().lo != parent_iv.lo || ivs.back().hi != parent_iv.hi)
        rep.add("completeness", "level " + std::to_string(k - 1),
                "children do not span their parent");
    }
  }
  for (int k = 1; k < top; ++k) {
    std::vector<Interval> ivs = h.intervals[k - 1];
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    if (ivs.front().lo != -kInf || ivs.back().hi != kInf)
      rep.add("completeness", "level " + std::to_string(k), "level does not span the line");
    for (std::size_t t = 0; t + 1 < ivs.size(); ++t)
      if (ivs[t].hi != ivs[t + 1].lo)
        rep.add("completeness", "level " + std::to_string(k),
                "level intervals do not partition the line");
  }
  return rep;
}

struct RatioRow {
  NormParam p;
  double cost = 0.0;
  double opt = 0.0;    // meaningful only when oracle is true
  double ratio = 0.0;  // cost / opt
  bool oracle = false;
};

struct RatioTable {
  std::vector<RatioRow> rows;
  bool oracle_available = false;
  double max_ratio = 0.0;
  // For chains: distribution of per-client blowups d(j, Pi_k(j)) relative
  // to the nearest open facility at the same level.
  std::vector<double> client_blowups;
};

namespace detail {

inline void fill_opt(const Instance& inst, Model model, RatioTable& table, int cap) {
  std::vector<NormParam> norms;
  for (const auto& row : table.rows) norms.push_back(row.p);
  table.oracle_available = inst.num_facilities() <= cap;
  if (!table.oracle_available) return;
  std::vector<double> opt = brute_force_values(inst, norms, model, cap);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.rows[i].opt = opt[i];
    table.rows[i].oracle = true;
    table.rows[i].ratio = opt[i] > 0 ? table.rows[i].cost / opt[i]
                                     : (table.rows[i].cost > 0 ? kInf : 1.0);
    table.max_ratio = std::max(table.max_ratio, table.rows[i].ratio);
  }
}

}  // namespace detail

inline RatioTable measure_ratios(const Instance& inst, const Solution& sol,
                                 const std::vector<NormParam>& grid, Model model,
                                 int cap = default_bf_cap()) {
  RatioTable table;
  for (NormParam p : grid) table.rows.push_back({p, total_cost(inst, sol, p, model).total});
  detail::fill_opt(inst, model, table, cap);
  return table;
}

inline RatioTable measure_ratios(const Instance& inst, const Portfolio& port,
                                 const std::vector<NormParam>& grid, Model model,
                                 int cap = default_bf_cap()) {
  RatioTable table;
  for (NormParam p : grid) {
    const PortfolioEntry& e = cover_lookup(port, p);
    table.rows.push_back({p, total_cost(inst, e.solution, p, model).total});
  }
  detail::fill_opt(inst, model, table, cap);
  return table;
}

// Per-level ratios at the chain's own norms plus the per-client blowup
// distribution against nearest same-level facilities.
inline RatioTable measure_ratios(const Instance& inst, const RefinementChain& chain,
                                 Model model, int cap = default_bf_cap()) {
  RatioTable table;
  std::vector<NormParam> norms = chain.norms;
  if (static_cast<int>(norms.size()) != chain.num_levels())
    norms.assign(chain.num_levels(), NormParam::one());
  for (int k = 0; k < chain.num_levels(); ++k) {
    Solution sol{chain.levels[k].open, chain.levels[k].assign};
    table.rows.push_back({norms[k], total_cost(inst, sol, norms[k], model).total});
    for (int j = 0; j < inst.num_clients(); ++j) {
      double assigned = inst.client_facility_dist(j, chain.levels[k].assign[j]);
      double nearest = kInf;
      for (int i : chain.levels[k].open)
        nearest = std::min(nearest, inst.client_facility_dist(j, i));
      table.client_blowups.push_back(nearest > 0 ? assigned / nearest
                                                 : (assigned > 0 ? kInf : 1.0));
    }
  }
  detail::fill_opt(inst, model, table, cap);
  return table;
}

}  // namespace fairplace
