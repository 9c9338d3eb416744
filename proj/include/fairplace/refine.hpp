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
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "fairplace/objective.hpp"

namespace fairplace {

enum class ChainDirection { kDecreasing, kIncreasing };

struct ChainLevel {
  std::vector<int> open;    // facility indices, sorted
  std::vector<int> assign;  // client -> facility
};

// Nested facility sets with one assignment per level. Decreasing chains
// shrink as the level (norm) grows; increasing chains (normalized model)
// grow instead.
struct RefinementChain {
  ChainDirection direction = ChainDirection::kDecreasing;
  std::vector<NormParam> norms;  // empty for hierarchical (level-indexed) chains
  std::vector<ChainLevel> levels;

  int num_levels() const { return static_cast<int>(levels.size()); }
};

inline RefinementChain chain_from_open_sets(const Instance& inst,
                                            std::vector<std::vector<int>> open_sets,
                                            ChainDirection direction,
                                            std::vector<NormParam> norms = {}) {
  RefinementChain chain;
  chain.direction = direction;
  chain.norms = std::move(norms);
  for (auto& open : open_sets) {
    Solution sol = nearest_assignment(inst, std::move(open));
    chain.levels.push_back({std::move(sol.open), std::move(sol.assign)});
  }
  return chain;
}

// Suffix unions of per-norm open sets: G_k = F_k u F_{k+1} u ... u F_l.
// Assignments are re-derived by nearest_assignment on each level, which is
// never worse than the inherited one.
inline RefinementChain weak_refine(const Instance& inst,
                                   const std::vector<Solution>& solutions,
                                   const std::vector<NormParam>& norms) {
  if (solutions.empty()) throw std::invalid_argument("weak_refine: no solutions");
  if (norms.size() != solutions.size())
    throw std::invalid_argument("weak_refine: one norm per solution required");
  for (std::size_t k = 0; k + 1 < norms.size(); ++k)
    if (!(norms[k] < norms[k + 1]))
      throw std::invalid_argument("weak_refine: norms must be strictly ascending");

  int l = static_cast<int>(solutions.size());
  std::vector<std::vector<int>> unions(l);
  std::set<int> acc;
  for (int k = l - 1; k >= 0; --k) {
    acc.insert(solutions[k].open.begin(), solutions[k].open.end());
    unions[k].assign(acc.begin(), acc.end());
  }
  return chain_from_open_sets(inst, std::move(unions), ChainDirection::kDecreasing, norms);
}

// One-step-lookahead baseline: level k+1 reassigns each client to the
// facility nearest its level-k facility. Forms a strong refinement but can
// drag clients 2^l away from their nearest facility.
inline RefinementChain greedy_strong_refine(const Instance& inst,
                                            const RefinementChain& chain) {
  if (chain.direction != ChainDirection::kDecreasing)
    throw std::invalid_argument("greedy_strong_refine: expected a decreasing chain");
  std::vector<int> rank = inst.facility_id_rank();
  auto nearest_in = [&](const PointRef& from, const std::vector<int>& open) {
    int best = -1;
    double best_d = 0.0;
    for (int i : open) {
      double d = inst.dist(from, inst.facilities[i].point);
      if (best < 0 || d < best_d || (d == best_d && rank[i] < rank[best])) {
        best = i;
        best_d = d;
      }
    }
    return best;
  };

  RefinementChain out = chain;
  int m = inst.num_clients();
  for (int k = 0; k < chain.num_levels(); ++k) {
    out.levels[k].assign.resize(m);
    for (int j = 0; j < m; ++j) {
      PointRef from = k == 0 ? inst.clients[j].point
                             : inst.facilities[out.levels[k - 1].assign[j]].point;
      out.levels[k].assign[j] = nearest_in(from, chain.levels[k].open);
    }
  }
  return out;
}

struct RecurrenceTable {
  // u[t-1][k] for levels t in [1, l] and k in [0, t-1].
  std::vector<std::vector<double>> u;
  double max = 1.0;
  double analytic_bound = 1.0;  // e^{2 gamma/(gamma-1)} gamma^{l-1}
};

// The blowup recurrence behind the lookahead reassignment:
//   u_{t-1,t} = gamma^{l-t}
//   u_{k,t}   = max(gamma^{l-t}, max_{k<s<t} gamma^{s-t} + u_{s,t}(1 + gamma^{s-t}))
// Its maximum stays below e^{2 gamma/(gamma-1)} gamma^{l-1}.
inline RecurrenceTable recurrence_bound(int l, double gamma) {
  if (l < 1) throw std::invalid_argument("recurrence_bound: l must be >= 1");
  if (!(gamma > 1.0)) throw std::invalid_argument("recurrence_bound: gamma must be > 1");
  RecurrenceTable tab;
  tab.u.resize(l);
  tab.max = 0.0;
  for (int t = 1; t <= l; ++t) {
    std::vector<double>& row = tab.u[t - 1];
    row.assign(t, 0.0);
    row[t - 1] = std::pow(gamma, l - t);
    tab.max = std::max(tab.max, row[t - 1]);
    for (int k = t - 2; k >= 0; --k) {
      double best = std::pow(gamma, l - t);
      for (int s = k + 1; s < t; ++s) {
        double g = std::pow(gamma, s - t);
        best = std::max(best, g + row[s] * (1.0 + g));
      }
      row[k] = best;
      tab.max = std::max(tab.max, best);
    }
  }
  tab.analytic_bound = std::exp(2.0 * gamma / (gamma - 1.0)) * std::pow(gamma, l - 1);
  if (!approx_le(tab.max, tab.analytic_bound, 1e-9))
    throw std::logic_error("recurrence_bound: analytic bound violated");
  return tab;
}

struct LookaheadDiagnostics {
  RecurrenceTable recurrence;
  double max_blowup = 1.0;  // max over clients and levels of d(j,Pi_k(j))/d(j,h_k(j))
  double gamma = 1.0;
};

struct LookaheadResult {
  RefinementChain chain;
  LookaheadDiagnostics diag;
};

// Reassigns a weak refinement into a strong one. Each point scores every
// higher level t by d(f, h_t(f))/gamma^t (h_t = nearest facility in G_t),
// commits to the best level's facility and recursively inherits that
// facility's own assignments above it. Processes levels top-down so the
// inherited maps are already final. Verifies the recurrence bound
// d(f, Pi_t^{(k)}(f)) <= u_{k,t} d(f, h_t(f)) and the composition identity
// on every stored map as it runs.
inline LookaheadResult discounted_lookahead(const Instance& inst,
                                            const RefinementChain& chain, double gamma) {
  if (!(gamma > 1.0)) throw std::invalid_argument("discounted_lookahead: gamma must be > 1");
  if (chain.direction != ChainDirection::kDecreasing)
    throw std::invalid_argument("discounted_lookahead: expected a decreasing chain");
  int l = chain.num_levels();
  if (l == 0) throw std::invalid_argument("discounted_lookahead: empty chain");

  LookaheadResult out;
  out.chain = chain;
  out.diag.gamma = gamma;
  out.diag.recurrence = recurrence_bound(l, gamma);
  const auto& u = out.diag.recurrence.u;

  int nf = inst.num_facilities();
  int m = inst.num_clients();
  std::vector<int> rank = inst.facility_id_rank();

  auto nearest_in = [&](const PointRef& from, int level /*1-based*/) {
    int best = -1;
    double best_d = 0.0;
    for (int i : chain.levels[level - 1].open) {
      double d = inst.dist(from, inst.facilities[i].point);
      if (best < 0 || d < best_d || (d == best_d && rank[i] < rank[best])) {
        best = i;
        best_d = d;
      }
    }
    return best;
  };

  // maps[k][f] = assignments of facility f in G_k to levels k+1..l
  // (computed for k = l-1 down to 1); client rows are handled separately.
  std::vector<std::vector<std::vector<int>>> maps(l);

  auto assign_point = [&](const PointRef& from, int k) {
    // Returns the row Pi_{k+1..l}; k is 0 for clients, else the facility's
    // own level.
    std::vector<int> row(l - k, -1);
    int s_star = -1;
    double best_score = 0.0;
    int h = -1;
    for (int t = k + 1; t <= l; ++t) {
      int cand = nearest_in(from, t);
      double score = inst.dist(from, inst.facilities[cand].point) / std::pow(gamma, t);
      if (s_star < 0 || score < best_score) {
        s_star = t;
        best_score = score;
        h = cand;
      }
    }
    for (int t = k + 1; t <= s_star; ++t) row[t - k - 1] = h;
    if (s_star < l) {
      const std::vector<int>& hrow = maps[s_star][h];
      for (int t = s_star + 1; t <= l; ++t) row[t - k - 1] = hrow[t - s_star - 1];
    }
    // Recurrence-bound check (exact inequality up to float noise).
    for (int t = k + 1; t <= l; ++t) {
      double assigned = inst.dist(from, inst.facilities[row[t - k - 1]].point);
      double nearest = inst.dist(from, inst.facilities[nearest_in(from, t)].point);
      if (!approx_le(assigned, u[t - 1][k] * nearest, 1e-9))
        throw std::logic_error("discounted_lookahead: recurrence bound violated");
    }
    return row;
  };

  for (int k = l - 1; k >= 1; --k) {
    maps[k].assign(nf, {});
    for (int i : chain.levels[k - 1].open) maps[k][i] = assign_point(inst.facilities[i].point, k);
  }

  // Composition identity: Pi_t^{(k)} = Pi_t^{(s)} o Pi_s^{(k)} on stored maps.
  for (int k = 1; k < l; ++k)
    for (int i : chain.levels[k - 1].open)
      for (int s = k + 1; s <= l; ++s)
        for (int t = s + 1; t <= l; ++t) {
          int via = maps[k][i][s - k - 1];
          int direct = maps[k][i][t - k - 1];
          int composed = s < l ? maps[s][via][t - s - 1] : -1;
          if (s < l && composed != direct)
            throw std::logic_error("discounted_lookahead: composition identity violated");
        }

  for (int k = 0; k < l; ++k) out.chain.levels[k].assign.assign(m, -1);
  for (int j = 0; j < m; ++j) {
    std::vector<int> row = assign_point(inst.clients[j].point, 0);
    for (int t = 1; t <= l; ++t) {
      out.chain.levels[t - 1].assign[j] = row[t - 1];
      double assigned = inst.dist(inst.clients[j].point, inst.facilities[row[t - 1]].point);
      double nearest =
          inst.dist(inst.clients[j].point,
                    inst.facilities[nearest_in(inst.clients[j].point, t)].point);
      double blowup = nearest > 0 ? assigned / nearest : 1.0;
      out.diag.max_blowup = std::max(out.diag.max_blowup, blowup);
    }
  }
  return out;
}

}  // namespace fairplace
