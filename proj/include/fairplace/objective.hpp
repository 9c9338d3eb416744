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
#include <stdexcept>
#include <vector>

#include "fairplace/instance.hpp"

namespace fairplace {

class InvalidSolutionError : public std::invalid_argument {
public:
  explicit InvalidSolutionError(const std::string& what) : std::invalid_argument(what) {}
};

// An integral solution: open facilities plus a total client -> facility map.
// Indices refer into Instance::facilities / Instance::clients.
struct Solution {
  std::vector<int> open;    // sorted, no duplicates
  std::vector<int> assign;  // assign[client] = facility index

  bool is_open(int facility) const {
    return std::binary_search(open.begin(), open.end(), facility);
  }
  void normalize() {
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
  }
};

struct CostBreakdown {
  double facility_cost = 0.0;
  std::vector<double> group_vector;
  double assignment_cost = 0.0;  // p-norm of group_vector
  double weight = 1.0;           // 1 (standard) or r^{1 - 1/p} (normalized)
  double total = 0.0;            // facility_cost + weight * assignment_cost
  NormParam p;
  Model model = Model::kStandard;
};

// Minkowski p-norm of a nonnegative vector. Entries are scaled by the max
// before exponentiation so large p cannot overflow. For finite p beyond
// 1/inv_p = 1e6 the max-entry value is returned directly; the relative
// error of that shortcut is at most r^{1/p} - 1 <= exp(1e-6 ln r) - 1.
inline double pnorm(const std::vector<double>& v, NormParam p) {
  if (v.empty()) return 0.0;
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  if (m == 0.0) return 0.0;
  if (p.inv_p() == 1.0) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  if (p.inv_p() < 1e-6) return m;
  double pw = p.p();
  double s = 0.0;
  for (double x : v) s += std::pow(x / m, pw);
  return m * std::pow(s, p.inv_p());
}

inline double mean_or_total(double sum, int count, bool totals) {
  return totals ? sum : sum / count;
}

// Entry s = average distance of group s's clients to their assigned
// facilities (sum instead of average when totals is set).
inline std::vector<double> group_cost_vector(const Instance& inst, const Solution& sol,
                                             bool totals = false) {
  if (static_cast<int>(sol.assign.size()) != inst.num_clients())
    throw InvalidSolutionError("group_cost_vector: assignment is not total");
  if (sol.open.empty()) throw InvalidSolutionError("group_cost_vector: no open facility");
  int r = inst.num_groups();
  std::vector<double> sums(r, 0.0);
  std::vector<int> counts(r, 0);
  for (int j = 0; j < inst.num_clients(); ++j) {
    int i = sol.assign[j];
    if (i < 0 || i >= inst.num_facilities() || !sol.is_open(i))
      throw InvalidSolutionError("group_cost_vector: client " + inst.clients[j].id +
                                 " assigned to a closed facility");
    sums[inst.clients[j].group] += inst.client_facility_dist(j, i);
    ++counts[inst.clients[j].group];
  }
  std::vector<double> out(r);
  for (int s = 0; s < r; ++s) out[s] = mean_or_total(sums[s], counts[s], totals);
  return out;
}

inline double model_weight(Model model, int r, NormParam p) {
  if (model == Model::kStandard) return 1.0;
  return std::pow(static_cast<double>(r), 1.0 - p.inv_p());
}

inline CostBreakdown total_cost(const Instance& inst, const Solution& sol, NormParam p,
                                Model model = Model::kStandard) {
  CostBreakdown cb;
  cb.p = p;
  cb.model = model;
  cb.group_vector = group_cost_vector(inst, sol);
  cb.assignment_cost = pnorm(cb.group_vector, p);
  for (int i : sol.open) cb.facility_cost += inst.facilities[i].cost;
  cb.weight = model_weight(model, inst.num_groups(), p);
  cb.total = cb.facility_cost + cb.weight * cb.assignment_cost;
  return cb;
}

// Maps every client to a nearest open facility, ties broken by smallest
// facility id. Optimal for a fixed open set because the objective is
// non-decreasing in every client distance.
inline Solution nearest_assignment(const Instance& inst, std::vector<int> open) {
  if (open.empty()) throw std::invalid_argument("nearest_assignment: empty open set");
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  std::vector<int> rank = inst.facility_id_rank();

  Solution sol;
  sol.open = open;
  sol.assign.resize(inst.num_clients());
  for (int j = 0; j < inst.num_clients(); ++j) {
    int best = -1;
    double best_d = kInf;
    for (int i : open) {
      double d = inst.client_facility_dist(j, i);
      if (best < 0 || d < best_d || (d == best_d && rank[i] < rank[best])) {
        best = i;
        best_d = d;
      }
    }
    sol.assign[j] = best;
  }
  return sol;
}

// r^{1/p - 1/q} from the norm comparison ||x||_q <= ||x||_p <= r^{1/p-1/q} ||x||_q.
inline double cross_norm_factor(int r, NormParam p, NormParam q) {
  if (p.inv_p() < q.inv_p())
    throw std::invalid_argument("cross_norm_factor: requires p <= q");
  return std::pow(static_cast<double>(r), p.inv_p() - q.inv_p());
}

}  // namespace fairplace
