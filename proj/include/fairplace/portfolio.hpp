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
#include <vector>

#include "fairplace/brute_force.hpp"
#include "fairplace/rounding.hpp"

namespace fairplace {

// One portfolio member: the norm it was solved for, the closed p-interval
// it covers (intervals of consecutive entries share endpoints and tile
// [1, inf]), the solution, and the approximate-OPT level at its norm.
struct PortfolioEntry {
  NormParam q;
  NormParam cover_lo;
  NormParam cover_hi;
  Solution solution;
  double value = 0.0;
};

struct Portfolio {
  std::vector<PortfolioEntry> entries;  // ascending in p
  int r = 1;
  Model model = Model::kStandard;
};

struct PortfolioOptions {
  int grid_size = 0;    // 0 = automatic: 4 ceil(log2 r) + 2
  bool oracle = false;  // exact brute-force values instead of approx_solve
  ApproxOptions approx;
  int bf_cap = -1;  // -1 = default_bf_cap()
};

inline int default_norm_grid_size(int r) {
  int lg = r <= 1 ? 0 : static_cast<int>(std::ceil(std::log2(static_cast<double>(r))));
  return 4 * lg + 2;
}

// alpha * r^{|1/p - 1/q|}: the approximation factor a p-norm solution
// carries over to the q-norm problem.
inline double transfer_ratio(double alpha, int r, NormParam p, NormParam q) {
  if (alpha < 1.0) throw std::invalid_argument("transfer_ratio: alpha must be >= 1");
  return alpha * std::pow(static_cast<double>(r), std::abs(p.inv_p() - q.inv_p()));
}

namespace detail {

struct NormGrid {
  std::vector<NormParam> norms;       // in traversal order of decreasing OPT
  std::vector<double> values;         // cost of the solution solved at each norm
  std::vector<Solution> solutions;    // one per grid point
  std::vector<double> envelope;       // running minimum of values
  std::vector<int> envelope_arg;      // index achieving the running minimum
};

// Evaluates solutions along a uniform 1/p grid. The traversal direction is
// the direction of non-increasing OPT: ascending p for the standard model,
// descending p for the normalized one.
inline NormGrid evaluate_norm_grid(const Instance& inst, Model model,
                                   const PortfolioOptions& opts) {
  NormGrid grid;
  int g = opts.grid_size > 0 ? opts.grid_size : default_norm_grid_size(inst.num_groups());
  if (g < 2) g = 2;
  for (int i = 0; i < g; ++i) {
    double frac = static_cast<double>(i) / (g - 1);
    double inv = model == Model::kStandard ? 1.0 - frac : frac;
    grid.norms.push_back(NormParam(inv));
  }
  if (opts.oracle) {
    int cap = opts.bf_cap >= 0 ? opts.bf_cap : default_bf_cap();
    auto sweep = brute_force_sweep(inst, grid.norms, model, cap);
    for (auto& res : sweep) {
      grid.values.push_back(res.cost.total);
      grid.solutions.push_back(std::move(res.solution));
    }
  } else {
    for (const NormParam& q : grid.norms) {
      ApproxResult res = approx_solve(inst, q, model, opts.approx);
      grid.values.push_back(res.cost.total);
      grid.solutions.push_back(std::move(res.solution));
    }
  }
  grid.envelope.resize(g);
  grid.envelope_arg.resize(g);
  for (int i = 0; i < g; ++i) {
    if (i == 0 || grid.values[i] < grid.envelope[i - 1]) {
      grid.envelope[i] = grid.values[i];
      grid.envelope_arg[i] = i;
    } else {
      grid.envelope[i] = grid.envelope[i - 1];
      grid.envelope_arg[i] = grid.envelope_arg[i - 1];
    }
  }
  return grid;
}

// Indices (in traversal order) where the envelope first drops strictly
// below value(anchor)/2^{k-1}, plus the anchor itself, and the level each
// selected index was picked at.
inline void select_representative(const NormGrid& grid, std::vector<int>* indices,
                                  std::vector<double>* levels) {
  indices->assign(1, 0);
  levels->assign(1, grid.envelope[0]);
  double base = grid.envelope[0];
  if (base <= 0.0) return;
  int g = static_cast<int>(grid.norms.size());
  int last = 0;
  for (int k = 2;; ++k) {
    double thr = base * std::pow(0.5, k - 1);
    if (thr <= 0.0) break;
    int found = -1;
    for (int i = 0; i < g; ++i)
      if (grid.envelope[i] < thr * (1.0 - 1e-12)) {
        found = i;
        break;
      }
    if (found < 0) break;
    if (found != last) {
      indices->push_back(found);
      levels->push_back(thr);
      last = found;
    }
    if (grid.envelope[found] <= 0.0) break;
  }
}

}  // namespace detail

// The norms at which the (approximate) optimum halves; solving at just
// these norms covers every p in [1, inf] within a constant factor. Always
// includes the anchor norm (p = 1 standard, p = infinity normalized).
// Returned ascending in p.
inline std::vector<NormParam> representative_norms(const Instance& inst, Model model,
                                                   int grid_size = 0,
                                                   PortfolioOptions opts = {}) {
  opts.grid_size = grid_size;
  detail::NormGrid grid = detail::evaluate_norm_grid(inst, model, opts);
  std::vector<int> indices;
  std::vector<double> levels;
  detail::select_representative(grid, &indices, &levels);
  std::vector<NormParam> norms;
  for (int i : indices) norms.push_back(grid.norms[i]);
  std::sort(norms.begin(), norms.end());
  return norms;
}

inline Portfolio build_portfolio(const Instance& inst, Model model,
                                 PortfolioOptions opts = {}) {
  detail::NormGrid grid = detail::evaluate_norm_grid(inst, model, opts);
  std::vector<int> indices;
  std::vector<double> levels;
  detail::select_representative(grid, &indices, &levels);

  Portfolio port;
  port.r = inst.num_groups();
  port.model = model;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    PortfolioEntry e;
    e.q = grid.norms[indices[k]];
    // The covering solution is the best one seen up to this grid point; its
    // cost at this norm is no worse than the envelope value here.
    e.solution = grid.solutions[grid.envelope_arg[indices[k]]];
    e.value = levels[k];
    port.entries.push_back(std::move(e));
  }
  std::sort(port.entries.begin(), port.entries.end(),
            [](const PortfolioEntry& a, const PortfolioEntry& b) { return a.q < b.q; });

  // Cover intervals: consecutive entries share endpoints. For the standard
  // model each entry anchors the left end of its interval (its solution
  // covers larger p); for the normalized model the right end (its solution
  // covers smaller p).
  int m = static_cast<int>(port.entries.size());
  for (int i = 0; i < m; ++i) {
    if (model == Model::kStandard) {
      port.entries[i].cover_lo = port.entries[i].q;
      port.entries[i].cover_hi = i + 1 < m ? port.entries[i + 1].q : NormParam::infinity();
    } else {
      port.entries[i].cover_lo = i > 0 ? port.entries[i - 1].q : NormParam::one();
      port.entries[i].cover_hi = port.entries[i].q;
    }
  }
  if (m > 0) {
    port.entries.front().cover_lo = NormParam::one();
    port.entries.back().cover_hi = NormParam::infinity();
  }
  return port;
}

// Entry whose cover interval contains p; at shared endpoints the left
// (smaller-p) entry wins.
inline const PortfolioEntry& cover_lookup(const Portfolio& port, NormParam p) {
  if (port.entries.empty()) throw std::invalid_argument("cover_lookup: empty portfolio");
  for (const PortfolioEntry& e : port.entries)
    if (p.inv_p() >= e.cover_hi.inv_p()) return e;  // p <= hi in p-space
  return port.entries.back();
}

}  // namespace fairplace
