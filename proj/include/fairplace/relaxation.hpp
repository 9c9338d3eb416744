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
#include <vector>

#include "fairplace/lp.hpp"
#include "fairplace/objective.hpp"

namespace fairplace {

// Fractional (x, y) with x[client][facility] assignment mass and y[facility]
// opening mass. Feasibility: sum_i x_ij >= 1, x_ij <= y_i, x, y >= 0.
struct FractionalSolution {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  double value = 0.0;
  bool converged = true;

  bool feasible(double tol = 1e-9) const {
    for (const auto& row : x) {
      double s = 0.0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] < -tol) return false;
        if (row[i] > y[i] + tol) return false;
        s += row[i];
      }
      if (s < 1.0 - tol) return false;
    }
    for (double v : y)
      if (v < -tol) return false;
    return true;
  }
};

struct RelaxOptions {
  double tol = 1e-6;
  int max_iters = 0;  // maximum norm-linearization rounds; 0 = automatic
};

namespace detail {

// Builds the relaxation as a linear program over (x, y, theta) where theta
// overestimates the p-norm of the group-average vector through a growing
// set of supporting hyperplanes u with theta >= <u, V(x)>. Each u lies in
// the dual-norm unit ball, so every cut underestimates the true norm.
class RelaxationProgram {
public:
  RelaxationProgram(const Instance& inst, NormParam p, Model model)
      : inst_(inst),
        p_(p),
        d_(inst.distance_table()),
        groups_(inst.groups()),
        weight_(model_weight(model, inst.num_groups(), p)) {
    m_ = inst.num_clients();
    nf_ = inst.num_facilities();
    r_ = static_cast<int>(groups_.size());
    base_.num_vars = m_ * nf_ + nf_ + 1;
    base_.objective.assign(base_.num_vars, 0.0);
    for (int i = 0; i < nf_; ++i)
      base_.objective[y_var(i)] = inst.facilities[i].cost;
    base_.objective[theta_var()] = weight_;

    for (int j = 0; j < m_; ++j) {
      std::vector<double> row(base_.num_vars, 0.0);
      for (int i = 0; i < nf_; ++i) row[x_var(j, i)] = 1.0;
      base_.add_row(std::move(row), lp::Sense::kGe, 1.0);
    }
    for (int j = 0; j < m_; ++j)
      for (int i = 0; i < nf_; ++i) {
        std::vector<double> row(base_.num_vars, 0.0);
        row[x_var(j, i)] = 1.0;
        row[y_var(i)] = -1.0;
        base_.add_row(std::move(row), lp::Sense::kLe, 0.0);
      }
  }

  int x_var(int j, int i) const { return j * nf_ + i; }
  int y_var(int i) const { return m_ * nf_ + i; }
  int theta_var() const { return m_ * nf_ + nf_; }

  void add_norm_cut(const std::vector<double>& u) {
    std::vector<double> row(base_.num_vars, 0.0);
    for (int s = 0; s < r_; ++s) {
      if (u[s] == 0.0) continue;
      double coef = u[s] / static_cast<double>(groups_[s].size());
      for (int j : groups_[s])
        for (int i = 0; i < nf_; ++i) row[x_var(j, i)] += coef * d_[j][i];
    }
    row[theta_var()] = -1.0;
    base_.add_row(std::move(row), lp::Sense::kLe, 0.0);
  }

  lp::Result solve() const { return lp::solve(base_); }

  std::vector<double> group_vector(const FractionalSolution& sol) const {
    std::vector<double> v(r_, 0.0);
    for (int s = 0; s < r_; ++s) {
      for (int j : groups_[s])
        for (int i = 0; i < nf_; ++i) v[s] += sol.x[j][i] * d_[j][i];
      v[s] /= static_cast<double>(groups_[s].size());
    }
    return v;
  }

  // True relaxation objective at a fractional point.
  double true_value(const FractionalSolution& sol) const {
    double fac = 0.0;
    for (int i = 0; i < nf_; ++i) fac += inst_.facilities[i].cost * sol.y[i];
    return fac + weight_ * pnorm(group_vector(sol), p_);
  }

  // Clips simplex roundoff: negatives to zero, client rows rescaled up to
  // unit mass, y at least the row maxima. The returned point is exactly
  // feasible and its true objective differs from the LP point by O(eps).
  FractionalSolution extract(const std::vector<double>& z) const {
    FractionalSolution out;
    out.x.assign(m_, std::vector<double>(nf_, 0.0));
    out.y.assign(nf_, 0.0);
    for (int j = 0; j < m_; ++j) {
      double sum = 0.0;
      for (int i = 0; i < nf_; ++i) {
        out.x[j][i] = std::max(0.0, z[x_var(j, i)]);
        sum += out.x[j][i];
      }
      if (sum < 1.0 && sum > 0.0)
        for (int i = 0; i < nf_; ++i) out.x[j][i] /= sum;
    }
    for (int i = 0; i < nf_; ++i) {
      out.y[i] = std::max(0.0, z[y_var(i)]);
      for (int j = 0; j < m_; ++j) out.y[i] = std::max(out.y[i], out.x[j][i]);
    }
    return out;
  }

  int num_groups() const { return r_; }
  double weight() const { return weight_; }
  NormParam p() const { return p_; }

private:
  const Instance& inst_;
  NormParam p_;
  std::vector<std::vector<double>> d_;
  std::vector<std::vector<int>> groups_;
  double weight_;
  int m_ = 0, nf_ = 0, r_ = 0;
  lp::Problem base_;
};

}  // namespace detail

// Solves the convex relaxation. For p = 1 and p = infinity the norm is
// polyhedral and one LP is exact; for finite p > 1 supporting hyperplanes
// of the norm are added until the linearization gap drops below tolerance
// (the gap also certifies how far the returned value can sit above the true
// optimum). Deterministic: the simplex uses Bland's rule throughout.
inline FractionalSolution solve_relaxation(const Instance& inst, NormParam p,
                                           Model model = Model::kStandard,
                                           RelaxOptions opts = {}) {
  detail::RelaxationProgram prog(inst, p, model);
  int r = prog.num_groups();

  std::vector<std::vector<double>> seeds;
  if (p.inv_p() == 1.0) {
    seeds.push_back(std::vector<double>(r, 1.0));  // exact for the 1-norm
  } else {
    for (int s = 0; s < r; ++s) {
      std::vector<double> e(r, 0.0);
      e[s] = 1.0;
      seeds.push_back(std::move(e));  // exact for the max-norm
    }
    if (!p.is_infinity()) {
      // Hoelder floor ||V||_p >= r^{1/p - 1} sum_s V_s tightens round one.
      seeds.push_back(std::vector<double>(r, std::pow(static_cast<double>(r), p.inv_p() - 1.0)));
    }
  }
  for (const auto& u : seeds) prog.add_norm_cut(u);

  bool exact_single_lp = p.inv_p() == 1.0 || p.is_infinity();
  int max_rounds = exact_single_lp ? 1 : (opts.max_iters > 0 ? opts.max_iters : 60);
  double cut_tol = std::max(0.3 * opts.tol, 1e-9);

  auto norm_gradient = [&](const std::vector<double>& v, double norm) {
    std::vector<double> u(r);
    double pw = p.p();
    for (int s = 0; s < r; ++s) u[s] = std::pow(v[s] / norm, pw - 1.0);
    return u;
  };

  FractionalSolution best;
  bool have_best = false;
  std::vector<double> v_best;
  for (int round = 0; round < max_rounds; ++round) {
    lp::Result res = prog.solve();
    if (res.status != lp::Status::kOptimal) {
      // The master is bounded and feasible by construction, so a failed
      // solve is numerical exhaustion of the cut stack; fall back to the
      // best certified iterate.
      if (have_best) {
        best.converged = false;
        return best;
      }
      throw std::logic_error("solve_relaxation: LP solver failed on a feasible program");
    }
    FractionalSolution cur = prog.extract(res.z);
    double value = prog.true_value(cur);
    std::vector<double> v = prog.group_vector(cur);
    if (!have_best || value < best.value) {
      best = std::move(cur);
      best.value = value;
      v_best = v;
      have_best = true;
    }
    if (exact_single_lp) {
      best.converged = true;
      break;
    }
    double norm = pnorm(v, p);
    double gap = prog.weight() * (norm - res.z[prog.theta_var()]);
    if (gap <= cut_tol * std::max(1.0, value) || norm <= 0.0) {
      best.converged = true;
      break;
    }
    best.converged = false;
    prog.add_norm_cut(norm_gradient(v, norm));
    // A second, deeper cut halfway toward the incumbent damps the zigzag
    // that pure Kelley iterations produce on smooth norms.
    std::vector<double> mid(r);
    for (int s = 0; s < r; ++s) mid[s] = 0.5 * (v[s] + v_best[s]);
    double mid_norm = pnorm(mid, p);
    if (mid_norm > 0.0) prog.add_norm_cut(norm_gradient(mid, mid_norm));
  }
  return best;
}

}  // namespace fairplace
