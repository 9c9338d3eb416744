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
#include <stdexcept>
#include <vector>

namespace fairplace::lp {

enum class Sense { kLe, kGe, kEq };

struct Constraint {
  std::vector<double> a;
  Sense sense = Sense::kLe;
  double b = 0.0;
};

// minimize c^T z subject to the rows, z >= 0
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> rows;

  void add_row(std::vector<double> a, Sense sense, double b) {
    rows.push_back({std::move(a), sense, b});
  }
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kOptimal;
  std::vector<double> z;
  double value = 0.0;
};

// Dense two-phase tableau simplex with Bland's rule. Intended for the small
// programs this project builds (tens of variables); determinism matters
// more than speed here, and Bland's rule rules out cycling.
class Simplex {
public:
  explicit Simplex(const Problem& p) : p_(p) {}

  Result solve() {
    build();
    // Phase 1: minimize artificial mass. With the negated objective row the
    // rhs cell tracks the current phase value, which must reach ~zero.
    set_phase_objective(true);
    if (!run()) return {Status::kUnbounded, {}, 0.0};  // cannot happen in phase 1
    if (tab_[rows_][cols_] > 1e-7) return {Status::kInfeasible, {}, 0.0};
    pivot_out_artificials();
    // Phase 2: original objective, artificials barred from entering.
    set_phase_objective(false);
    if (!run()) return {Status::kUnbounded, {}, 0.0};

    Result res;
    res.status = Status::kOptimal;
    res.z.assign(p_.num_vars, 0.0);
    for (int r = 0; r < rows_; ++r)
      if (basis_[r] < p_.num_vars) res.z[basis_[r]] = tab_[r][cols_];
    res.value = 0.0;
    for (int v = 0; v < p_.num_vars; ++v) res.value += p_.objective[v] * res.z[v];
    return res;
  }

private:
  static constexpr double kEps = 1e-9;

  void build() {
    rows_ = static_cast<int>(p_.rows.size());
    // Column layout: structural vars, then one slack/surplus per inequality,
    // then one artificial per >=/= row (and per <= row with negative b after
    // normalization, handled uniformly by giving every row an artificial
    // when its slack cannot seed the basis).
    int slacks = 0;
    for (const auto& row : p_.rows)
      if (row.sense != Sense::kEq) ++slacks;
    n_struct_ = p_.num_vars;
    cols_ = n_struct_ + slacks + rows_;  // worst case artificial per row
    first_artificial_ = n_struct_ + slacks;
    tab_.assign(rows_ + 1, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(rows_, -1);
    artificial_used_.assign(rows_, -1);

    int slack_at = n_struct_;
    int art_at = first_artificial_;
    for (int r = 0; r < rows_; ++r) {
      const Constraint& c = p_.rows[r];
      double scale = 0.0;
      for (double a : c.a) scale = std::max(scale, std::abs(a));
      if (scale == 0.0) scale = 1.0;
      double sign = (c.b < 0 ? -1.0 : 1.0) / scale;
      for (int v = 0; v < n_struct_; ++v)
        tab_[r][v] = sign * (v < static_cast<int>(c.a.size()) ? c.a[v] : 0.0);
      tab_[r][cols_] = sign * c.b;
      Sense sense = c.sense;
      if (sign < 0 && sense == Sense::kLe) sense = Sense::kGe;
      else if (sign < 0 && sense == Sense::kGe) sense = Sense::kLe;
      if (c.sense != Sense::kEq) {
        tab_[r][slack_at] = (sense == Sense::kLe) ? 1.0 : -1.0;
        if (sense == Sense::kLe) {
          basis_[r] = slack_at;  // slack seeds the basis
        }
        ++slack_at;
      }
      if (basis_[r] < 0) {
        tab_[r][art_at] = 1.0;
        basis_[r] = art_at;
        artificial_used_[r] = art_at;
        ++art_at;
      }
    }
    num_artificials_end_ = art_at;
  }

  void set_phase_objective(bool phase1) {
    phase1_ = phase1;
    for (int v = 0; v <= cols_; ++v) tab_[rows_][v] = 0.0;
    if (phase1) {
      for (int r = 0; r < rows_; ++r)
        if (artificial_used_[r] >= 0) tab_[rows_][artificial_used_[r]] = 1.0;
    } else {
      for (int v = 0; v < n_struct_; ++v) tab_[rows_][v] = p_.objective[v];
    }
    obj_scale_ = 1.0;
    for (int v = 0; v < cols_; ++v)
      obj_scale_ = std::max(obj_scale_, std::abs(tab_[rows_][v]));
    // Price out the current basis.
    for (int r = 0; r < rows_; ++r) {
      double coef = tab_[rows_][basis_[r]];
      if (coef != 0.0)
        for (int v = 0; v <= cols_; ++v) tab_[rows_][v] -= coef * tab_[r][v];
    }
    // Objective row stores -value in the rhs cell under this sign convention.
    for (int v = 0; v <= cols_; ++v) tab_[rows_][v] = -tab_[rows_][v];
  }

  bool run() {
    // Objective row now holds negated reduced costs; a positive entry means
    // the variable improves the minimization. Dantzig pricing by default,
    // permanent Bland fallback once the iteration count suggests cycling.
    const long bland_after = 50L * (cols_ + rows_ + 1);
    const double enter_tol = kEps * obj_scale_;
    for (long iter = 0;; ++iter) {
      if (iter > 400L * (cols_ + rows_ + 1))
        throw std::runtime_error("simplex: iteration guard tripped");
      bool bland = iter >= bland_after;
      int enter = -1;
      double best_rc = enter_tol;
      for (int v = 0; v < cols_; ++v) {
        if (!phase1_ && v >= first_artificial_) break;  // artificials barred
        if (tab_[rows_][v] > best_rc) {
          enter = v;
          if (bland) break;  // smallest improving index
          best_rc = tab_[rows_][v];
        }
      }
      if (enter < 0) return true;
      // Two-pass ratio test. Pass 1 finds the limiting ratio over pivots of
      // decent magnitude; pass 2 picks the largest pivot within tolerance of
      // that ratio (smallest basis index under Bland). Tiny pivots are only
      // considered when nothing else limits the ratio, since dividing a row
      // by ~1e-9 wrecks the tableau.
      double pivot_tol = 1e-7;
      int leave = -1;
      for (int pass_tol = 0; pass_tol < 2 && leave < 0; ++pass_tol) {
        double tol = pass_tol == 0 ? pivot_tol : kEps;
        double theta = -1.0;
        for (int r = 0; r < rows_; ++r) {
          if (tab_[r][enter] > tol) {
            double ratio = std::max(0.0, tab_[r][cols_]) / tab_[r][enter];
            if (theta < 0 || ratio < theta) theta = ratio;
          }
        }
        if (theta < 0) continue;
        double window = theta * 1e-9 + 1e-10;
        for (int r = 0; r < rows_; ++r) {
          if (tab_[r][enter] > tol) {
            double ratio = std::max(0.0, tab_[r][cols_]) / tab_[r][enter];
            if (ratio <= theta + window) {
              if (leave < 0) {
                leave = r;
              } else if (bland ? basis_[r] < basis_[leave]
                               : tab_[r][enter] > tab_[leave][enter]) {
                leave = r;
              }
            }
          }
        }
      }
      if (leave < 0) {
        // No positive column entry. In phase 1 the objective is bounded
        // below by zero, so an "improving ray" is always roundoff; in
        // phase 2 the same holds for near-zero reduced costs. Neutralize
        // those columns rather than declare unboundedness.
        if (phase1_ || tab_[rows_][enter] <= 1e-6 * obj_scale_) {
          tab_[rows_][enter] = 0.0;
          continue;
        }
        return false;
      }
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    double piv = tab_[r][c];
    for (int v = 0; v <= cols_; ++v) tab_[r][v] /= piv;
    for (int rr = 0; rr <= rows_; ++rr) {
      if (rr == r) continue;
      double coef = tab_[rr][c];
      if (coef == 0.0) continue;
      for (int v = 0; v <= cols_; ++v) tab_[rr][v] -= coef * tab_[r][v];
    }
    basis_[r] = c;
  }

  void pivot_out_artificials() {
    for (int r = rows_ - 1; r >= 0; --r) {
      if (basis_[r] < first_artificial_) continue;
      // Pivot on the largest-magnitude structural/slack coefficient; a
      // near-zero pivot would blow the row up to 1/eps scale.
      int enter = -1;
      double best = 1e-7;
      for (int v = 0; v < first_artificial_; ++v)
        if (std::abs(tab_[r][v]) > best) {
          enter = v;
          best = std::abs(tab_[r][v]);
        }
      if (enter >= 0) {
        pivot(r, enter);
      } else {
        // Redundant row (all structural and slack coefficients vanished);
        // drop it so the artificial cannot drift positive in phase 2.
        tab_.erase(tab_.begin() + r);
        basis_.erase(basis_.begin() + r);
        artificial_used_.erase(artificial_used_.begin() + r);
        --rows_;
      }
    }
  }

  const Problem& p_;
  std::vector<std::vector<double>> tab_;
  std::vector<int> basis_;
  std::vector<int> artificial_used_;
  int rows_ = 0, cols_ = 0, n_struct_ = 0, first_artificial_ = 0,
      num_artificials_end_ = 0;
  double obj_scale_ = 1.0;
  bool phase1_ = false;
};

inline Result solve(const Problem& p) { return Simplex(p).solve(); }

}  // namespace fairplace::lp
