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

#include <cstdlib>
#include <string>
#include <vector>

#include "fairplace/objective.hpp"

namespace fairplace {

inline int default_bf_cap() {
  if (const char* env = std::getenv("FAIRPLACE_BF_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 20;
}

struct BruteForceResult {
  Solution solution;
  CostBreakdown cost;
};

namespace detail {

// Enumerates every nonempty open set with its nearest assignment; calls
// visit(open_sorted_by_id, solution, facility_cost, group_vector).
template <typename Visit>
void enumerate_open_sets(const Instance& inst, int cap, Visit&& visit) {
  int nf = inst.num_facilities();
  if (nf > cap)
    throw ResourceError("brute force: " + std::to_string(nf) +
                        " facilities exceed the cap of " + std::to_string(cap));
  std::vector<int> rank = inst.facility_id_rank();
  // by_rank[r] = facility index with id-rank r; subsets are generated over
  // ranks so the id-lexicographic tie order falls out of the bitmask order.
  std::vector<int> by_rank(nf);
  for (int i = 0; i < nf; ++i) by_rank[rank[i]] = i;

  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nf); ++mask) {
    std::vector<int> open;
    std::vector<int> open_ranks;
    for (int r = 0; r < nf; ++r)
      if (mask & (std::uint64_t{1} << r)) {
        open.push_back(by_rank[r]);
        open_ranks.push_back(r);
      }
    Solution sol = nearest_assignment(inst, open);
    double fc = 0.0;
    for (int i : sol.open) fc += inst.facilities[i].cost;
    std::vector<double> gv = group_cost_vector(inst, sol);
    visit(open_ranks, sol, fc, gv);
  }
}

inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// Exact optimum by exhaustive enumeration of all nonempty facility subsets.
// Nearest assignment is optimal for a fixed open set, so enumeration over
// open sets suffices. Ties go to the lexicographically smallest open set
// (by facility id). Refuses when |F| exceeds the cap.
inline BruteForceResult brute_force_opt(const Instance& inst, NormParam p,
                                        Model model = Model::kStandard,
                                        int cap = default_bf_cap()) {
  BruteForceResult best;
  bool have = false;
  std::vector<int> best_ranks;
  int r = inst.num_groups();
  detail::enumerate_open_sets(
      inst, cap,
      [&](const std::vector<int>& open_ranks, const Solution& sol, double fc,
          const std::vector<double>& gv) {
        double total = fc + model_weight(model, r, p) * pnorm(gv, p);
        if (!have || total < best.cost.total ||
            (total == best.cost.total && detail::lex_less(open_ranks, best_ranks))) {
          have = true;
          best.solution = sol;
          best_ranks = open_ranks;
          best.cost.facility_cost = fc;
          best.cost.group_vector = gv;
          best.cost.assignment_cost = pnorm(gv, p);
          best.cost.weight = model_weight(model, r, p);
          best.cost.total = total;
          best.cost.p = p;
          best.cost.model = model;
        }
      });
  return best;
}

// Optimal values over a whole norm grid in one enumeration pass.
inline std::vector<double> brute_force_values(const Instance& inst,
                                              const std::vector<NormParam>& norms,
                                              Model model = Model::kStandard,
                                              int cap = default_bf_cap()) {
  int r = inst.num_groups();
  std::vector<double> best(norms.size(), kInf);
  detail::enumerate_open_sets(
      inst, cap,
      [&](const std::vector<int>&, const Solution&, double fc,
          const std::vector<double>& gv) {
        for (std::size_t t = 0; t < norms.size(); ++t) {
          double total = fc + model_weight(model, r, norms[t]) * pnorm(gv, norms[t]);
          best[t] = std::min(best[t], total);
        }
      });
  return best;
}

// As above but also keeps a witness solution per norm (id-lexicographic ties).
inline std::vector<BruteForceResult> brute_force_sweep(
    const Instance& inst, const std::vector<NormParam>& norms,
    Model model = Model::kStandard, int cap = default_bf_cap()) {
  int r = inst.num_groups();
  std::vector<BruteForceResult> best(norms.size());
  std::vector<std::vector<int>> best_ranks(norms.size());
  std::vector<char> have(norms.size(), 0);
  detail::enumerate_open_sets(
      inst, cap,
      [&](const std::vector<int>& open_ranks, const Solution& sol, double fc,
          const std::vector<double>& gv) {
        for (std::size_t t = 0; t < norms.size(); ++t) {
          double total = fc + model_weight(model, r, norms[t]) * pnorm(gv, norms[t]);
          if (!have[t] || total < best[t].cost.total ||
              (total == best[t].cost.total && detail::lex_less(open_ranks, best_ranks[t]))) {
            have[t] = 1;
            best[t].solution = sol;
            best_ranks[t] = open_ranks;
            best[t].cost.facility_cost = fc;
            best[t].cost.group_vector = gv;
            best[t].cost.assignment_cost = pnorm(gv, norms[t]);
            best[t].cost.weight = model_weight(model, r, norms[t]);
            best[t].cost.total = total;
            best[t].cost.p = norms[t];
            best[t].cost.model = model;
          }
        }
      });
  return best;
}

}  // namespace fairplace
