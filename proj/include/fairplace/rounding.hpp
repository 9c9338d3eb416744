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
#include <stdexcept>
#include <vector>

#include "fairplace/relaxation.hpp"

namespace fairplace {

struct FilterResult {
  FractionalSolution filtered;  // (x-bar, y-bar), feasible again
  std::vector<double> radius;   // d_j(alpha) per client
  double alpha = 0.25;
};

// Lin-Vitter filtering: d_j(alpha) is the alpha-quantile of client j's
// sorted assignment mass; mass beyond that distance is dropped and the rest
// scaled by 1/alpha.
inline FilterResult filter(const FractionalSolution& frac, const Instance& inst,
                           double alpha = 0.25) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("filter: alpha must lie in (0, 1]");
  if (!frac.feasible()) throw std::invalid_argument("filter: infeasible input");

  const int m = inst.num_clients();
  const int nf = inst.num_facilities();
  std::vector<int> rank = inst.facility_id_rank();

  FilterResult out;
  out.alpha = alpha;
  out.radius.assign(m, 0.0);
  out.filtered.x.assign(m, std::vector<double>(nf, 0.0));
  out.filtered.y.resize(nf);
  for (int i = 0; i < nf; ++i) out.filtered.y[i] = frac.y[i] / alpha;

  for (int j = 0; j < m; ++j) {
    std::vector<int> support;
    for (int i = 0; i < nf; ++i)
      if (frac.x[j][i] > 0.0) support.push_back(i);
    std::sort(support.begin(), support.end(), [&](int a, int b) {
      double da = inst.client_facility_dist(j, a);
      double db = inst.client_facility_dist(j, b);
      if (da != db) return da < db;
      return rank[a] < rank[b];
    });
    double cum = 0.0;
    double dj = 0.0;
    for (int i : support) {
      cum += frac.x[j][i];
      dj = inst.client_facility_dist(j, i);
      if (cum >= alpha - 1e-12) break;
    }
    out.radius[j] = dj;
    for (int i = 0; i < nf; ++i)
      if (frac.x[j][i] > 0.0 && inst.client_facility_dist(j, i) <= dj)
        out.filtered.x[j][i] = frac.x[j][i] / alpha;
  }
  out.filtered.value = frac.value;
  out.filtered.converged = frac.converged;
  return out;
}

// Clustering rounding: repeatedly take the unassigned client with the
// smallest filtered radius, open the cheapest facility in its positive-mass
// neighborhood, and capture every client sharing a neighbor. Checks the
// per-client distance bound d(i_k, j) <= 3 d_j(alpha) as it goes.
inline Solution round_filtered(const FilterResult& filt, const Instance& inst) {
  const int m = inst.num_clients();
  const int nf = inst.num_facilities();
  std::vector<int> frank = inst.facility_id_rank();
  std::vector<int> crank = inst.client_id_rank();

  std::vector<std::vector<int>> nbr(m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < nf; ++i)
      if (filt.filtered.x[j][i] > 0.0) nbr[j].push_back(i);

  std::vector<char> unassigned(m, 1);
  Solution sol;
  sol.assign.assign(m, -1);
  std::vector<char> facility_hit(nf, 0);

  int remaining = m;
  while (remaining > 0) {
    int jk = -1;
    for (int j = 0; j < m; ++j) {
      if (!unassigned[j]) continue;
      if (jk < 0 || filt.radius[j] < filt.radius[jk] ||
          (filt.radius[j] == filt.radius[jk] && crank[j] < crank[jk]))
        jk = j;
    }
    if (nbr[jk].empty())
      throw InvalidSolutionError("round: client " + inst.clients[jk].id +
                                 " has an empty filtered neighborhood");
    int ik = -1;
    for (int i : nbr[jk]) {
      if (ik < 0 || inst.facilities[i].cost < inst.facilities[ik].cost ||
          (inst.facilities[i].cost == inst.facilities[ik].cost && frank[i] < frank[ik]))
        ik = i;
    }
    sol.open.push_back(ik);

    std::fill(facility_hit.begin(), facility_hit.end(), 0);
    for (int i : nbr[jk]) facility_hit[i] = 1;
    for (int j = 0; j < m; ++j) {
      if (!unassigned[j]) continue;
      bool shares = false;
      for (int i : nbr[j])
        if (facility_hit[i]) {
          shares = true;
          break;
        }
      if (!shares) continue;
      // d(i_k, j) <= 2 d_{j_k}(alpha) + d_j(alpha) <= 3 d_j(alpha)
      double dist = inst.client_facility_dist(j, ik);
      if (!approx_le(dist, 3.0 * filt.radius[j], 1e-9))
        throw std::logic_error("round: per-client distance bound violated");
      if (sol.assign[j] != -1)
        throw std::logic_error("round: client clusters are not disjoint");
      sol.assign[j] = ik;
      unassigned[j] = 0;
      --remaining;
    }
  }
  sol.normalize();
  return sol;
}

struct ApproxOptions {
  double tol = 1e-6;
  int max_iters = 0;
  double alpha = 0.25;
};

struct ApproxResult {
  Solution solution;
  CostBreakdown cost;
  double relaxation_value = 0.0;
  bool converged = true;
};

// The end-to-end 4-approximation: relax, filter, round, then swap in the
// nearest assignment for the opened set (which never costs more).
inline ApproxResult approx_solve(const Instance& inst, NormParam p,
                                 Model model = Model::kStandard, ApproxOptions opts = {}) {
  FractionalSolution frac =
      solve_relaxation(inst, p, model, RelaxOptions{opts.tol, opts.max_iters});
  FilterResult filt = filter(frac, inst, opts.alpha);
  Solution rounded = round_filtered(filt, inst);
  ApproxResult out;
  out.solution = nearest_assignment(inst, rounded.open);
  out.cost = total_cost(inst, out.solution, p, model);
  out.relaxation_value = frac.value;
  out.converged = frac.converged;
  return out;
}

}  // namespace fairplace
