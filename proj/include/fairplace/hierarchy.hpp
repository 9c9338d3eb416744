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

#include <vector>

#include "fairplace/pipelines.hpp"
#include "fairplace/verify.hpp"

namespace fairplace {

// l nested facility-location problems sharing one metric and client set;
// level k pays a uniform opening cost c_k, with c_1 <= ... <= c_l. The base
// instance's own facility costs are ignored.
struct HierarchicalInstance {
  Instance base;
  std::vector<double> level_costs;
  NormParam p;
  Model model = Model::kStandard;

  int num_levels() const { return static_cast<int>(level_costs.size()); }

  void validate() const {
    if (level_costs.empty())
      throw std::invalid_argument("hierarchical instance: no levels");
    for (std::size_t k = 0; k < level_costs.size(); ++k) {
      if (level_costs[k] < 0)
        throw std::invalid_argument("hierarchical instance: negative level cost");
      if (k > 0 && level_costs[k] < level_costs[k - 1])
        throw std::invalid_argument("hierarchical instance: level costs must not decrease");
    }
  }

  Instance level_instance(int k) const {
    Instance inst = base;
    for (Facility& f : inst.facilities) f.cost = level_costs[k];
    return inst;
  }
};

struct HierarchyLevelReport {
  double cost = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  bool oracle = false;
};

struct HierarchyResult {
  RefinementChain chain;  // level-indexed, no norms
  std::vector<HierarchyLevelReport> levels;
  double worst_ratio = 0.0;
  bool oracle_available = false;
};

struct HierarchyCheck {
  Report report;
  std::vector<double> level_ratios;
  double worst_ratio = 0.0;
  bool oracle_available = false;
};

// Verifies the two hierarchical constraints (facility nesting and client-
// block nesting) and measures per-level ratios against brute-force optima
// when the facility count permits.
inline HierarchyCheck check_hierarchy(const HierarchicalInstance& hinst,
                                      const RefinementChain& chain,
                                      int cap = default_bf_cap()) {
  hinst.validate();
  HierarchyCheck out;
  if (chain.num_levels() != hinst.num_levels()) {
    out.report.add("hierarchy", "levels", "one solution per level required");
    return out;
  }
  RefinementChain plain = chain;
  plain.direction = ChainDirection::kDecreasing;
  out.report = check_strong(plain);

  out.oracle_available = hinst.base.num_facilities() <= cap;
  for (int k = 0; k < chain.num_levels(); ++k) {
    Instance inst = hinst.level_instance(k);
    Solution sol{chain.levels[k].open, chain.levels[k].assign};
    double cost = total_cost(inst, sol, hinst.p, hinst.model).total;
    double ratio = 0.0;
    if (out.oracle_available) {
      double opt = brute_force_opt(inst, hinst.p, hinst.model, cap).cost.total;
      ratio = opt > 0 ? cost / opt : (cost > 0 ? kInf : 1.0);
      out.worst_ratio = std::max(out.worst_ratio, ratio);
    }
    out.level_ratios.push_back(ratio);
  }
  return out;
}

// Solves the hierarchical problem: a 4-approximation per level with cost
// c_k, suffix-union facility sets, and a strong-refinement reassignment by
// the selected backend. Verifies the aggregation inequality
// c_k |G_k| + C_theta_k <= 4 l C_S_k along the way.
inline HierarchyResult solve_hierarchical(const HierarchicalInstance& hinst,
                                          RefineBackend backend = RefineBackend::kAuto,
                                          ApproxOptions approx = {},
                                          int cap = default_bf_cap()) {
  hinst.validate();
  int l = hinst.num_levels();

  std::vector<Solution> per_level;
  std::vector<double> approx_cost;  // C_{S_k} at the level's own cost
  for (int k = 0; k < l; ++k) {
    Instance inst = hinst.level_instance(k);
    ApproxResult res = approx_solve(inst, hinst.p, hinst.model, approx);
    approx_cost.push_back(res.cost.total);
    per_level.push_back(std::move(res.solution));
  }

  std::vector<std::vector<int>> unions(l);
  std::set<int> acc;
  for (int k = l - 1; k >= 0; --k) {
    acc.insert(per_level[k].open.begin(), per_level[k].open.end());
    unions[k].assign(acc.begin(), acc.end());
  }

  RefinementChain weak;
  weak.direction = ChainDirection::kDecreasing;
  for (int k = 0; k < l; ++k) {
    Instance inst = hinst.level_instance(k);
    Solution sol = nearest_assignment(inst, unions[k]);
    weak.levels.push_back({std::move(sol.open), std::move(sol.assign)});
    // C_{R_k} <= 4 l C_{S_k}: the union's facility bill plus the level's own
    // assignment cost stays within 4l of the level's 4-approximation.
    double union_facility = hinst.level_costs[k] * unions[k].size();
    Solution theta{unions[k], per_level[k].assign};
    double theta_assign =
        total_cost(inst, theta, hinst.p, hinst.model).total - union_facility;
    if (!approx_le(union_facility + theta_assign, 4.0 * l * approx_cost[k], 1e-6))
      throw std::logic_error("solve_hierarchical: union cost bound violated");
  }

  HierarchyResult out;
  // Backend fitness is judged on a level instance: level costs are uniform
  // by construction even when the base instance's stored costs are not.
  switch (detail::resolve_backend(hinst.level_instance(l - 1), backend)) {
    case RefineBackend::kLine:
      out.chain = detail::line_reassign(hinst.base, weak, nullptr);
      break;
    case RefineBackend::kTree:
      out.chain = detail::tree_reassign(hinst.level_instance(l - 1), weak);
      break;
    default: {
      LookaheadResult res =
          discounted_lookahead(hinst.base, weak, detail::auto_gamma(l));
      out.chain = std::move(res.chain);
      break;
    }
  }

  HierarchyCheck check = check_hierarchy(hinst, out.chain, cap);
  out.oracle_available = check.oracle_available;
  out.worst_ratio = check.worst_ratio;
  for (int k = 0; k < l; ++k) {
    HierarchyLevelReport rep;
    Instance inst = hinst.level_instance(k);
    Solution sol{out.chain.levels[k].open, out.chain.levels[k].assign};
    rep.cost = total_cost(inst, sol, hinst.p, hinst.model).total;
    rep.oracle = check.oracle_available;
    if (rep.oracle) {
      rep.ratio = check.level_ratios[k];
      rep.opt = rep.ratio > 0 ? rep.cost / rep.ratio : 0.0;
    }
    out.levels.push_back(rep);
  }
  return out;
}

}  // namespace fairplace
