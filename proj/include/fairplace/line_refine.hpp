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

#include "fairplace/common.hpp"

namespace fairplace {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

struct LineEntry {
  double x = 0.0;
  int key = -1;  // facility index (or tree vertex), whatever the caller tracks
};

// Base intervals around strictly sorted facility positions: the boundary
// toward a neighbor sits at the alpha : (1 - alpha) split of the gap, and
// the extremes run to +-infinity.
inline std::vector<Interval> base_intervals(const std::vector<double>& xs, double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw std::invalid_argument("base_intervals: alpha must lie in (0, 1/2]");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw std::invalid_argument("base_intervals: positions must be strictly sorted");
  std::vector<Interval> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i].lo = i == 0 ? -kInf : (1.0 - alpha) * xs[i] + alpha * xs[i - 1];
    out[i].hi = i + 1 == xs.size() ? kInf : alpha * xs[i + 1] + (1.0 - alpha) * xs[i];
  }
  return out;
}

// The hierarchy tree over (facility, level) pairs built by the interval
// expansion: per-level entries and intervals, parent links, and the
// auxiliary root level l+1.
struct LineHierarchy {
  double alpha = 0.0;
  // Index k-1 holds level k, for k in [1, l+1]; the last level is the
  // single-root auxiliary one.
  std::vector<std::vector<LineEntry>> levels;
  std::vector<std::vector<Interval>> intervals;
  struct NodeRef {
    int level = -1;  // 1-based; -1 = none
    int idx = -1;
  };
  std::vector<std::vector<NodeRef>> parent;

  int num_levels_with_aux() const { return static_cast<int>(levels.size()); }

  std::vector<NodeRef> children_of(int level, int idx) const {
    std::vector<NodeRef> out;
    for (int k = 0; k < num_levels_with_aux(); ++k)
      for (int i = 0; i < static_cast<int>(levels[k].size()); ++i)
        if (parent[k][i].level == level && parent[k][i].idx == idx)
          out.push_back({k + 1, i});
    return out;
  }

  // Key assigned to point x at the given level; shared boundary points go
  // to the left interval.
  int assign(int level, double x) const {
    const auto& ivs = intervals[level - 1];
    for (std::size_t i = 0; i < ivs.size(); ++i)
      if (ivs[i].contains(x)) return levels[level - 1][i].key;
    throw std::logic_error("line hierarchy: point not covered at level " +
                           std::to_string(level));
  }
};

struct ExpandTrace {
  std::vector<std::vector<Interval>> after_step1;
  std::vector<std::vector<Interval>> after_step2;
};

struct ExpandResult {
  LineHierarchy tree;
  ExpandTrace trace;
};

// Step 3: recursively stretch the children of (level, idx) so they
// partition the parent interval. Gaps between consecutive children split
// at the midpoint; the outermost children absorb the flanks.
inline void complete_assignment(LineHierarchy& h, int level, int idx) {
  if (level <= 1) return;
  std::vector<LineHierarchy::NodeRef> kids = h.children_of(level, idx);
  if (kids.empty())
    throw std::logic_error("complete_assignment: interior node without children");
  for (const auto& kid : kids)
    if (kid.level != level - 1)
      throw std::logic_error("complete_assignment: immediate-parent condition violated");
  std::sort(kids.begin(), kids.end(),
            [&](const LineHierarchy::NodeRef& a, const LineHierarchy::NodeRef& b) {
              return h.intervals[a.level - 1][a.idx].lo < h.intervals[b.level - 1][b.idx].lo;
            });
  const Interval parent_iv = h.intervals[level - 1][idx];
  int n = static_cast<int>(kids.size());
  for (int i = 0; i < n; ++i) {
    Interval& iv = h.intervals[kids[i].level - 1][kids[i].idx];
    if (i == 0) {
      iv.lo = parent_iv.lo;
    }
    if (i + 1 < n) {
      Interval& next = h.intervals[kids[i + 1].level - 1][kids[i + 1].idx];
      if (next.lo < iv.hi)
        throw std::logic_error("complete_assignment: overlapping sibling intervals");
      double cut = 0.5 * (iv.hi + next.lo);
      iv.hi = cut;
      next.lo = cut;
    } else {
      iv.hi = parent_iv.hi;
    }
  }
  for (const auto& kid : kids) complete_assignment(h, kid.level, kid.idx);
}

// Interval expansion for strong refinements on a line. Input: nested entry
// levels (positions strictly sorted within a level, every level-(k+1)
// position present at level k), 1-based levels 1..l. An auxiliary level
// l+1 holding the leftmost entry of level l roots the hierarchy. Three
// phases: (1) upward interval merging that yields an interval tree, (2)
// re-parenting to the immediate-parent condition, (3) recursive gap
// filling. The final per-level intervals partition the line and always
// contain their base intervals, so no point is assigned farther than
// (1 - alpha)/alpha times its nearest same-level facility.
inline ExpandResult expand_intervals(const std::vector<std::vector<LineEntry>>& input_levels,
                                     double alpha = 0.0) {
  int l = static_cast<int>(input_levels.size());
  if (l == 0 || input_levels.back().empty())
    throw std::invalid_argument("expand_intervals: empty top level");
  if (alpha == 0.0) alpha = 1.0 / (2.0 * l);
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw std::invalid_argument("expand_intervals: alpha must lie in (0, 1/2]");
  for (int k = 0; k + 1 < l; ++k) {
    for (const LineEntry& e : input_levels[k + 1]) {
      bool found = false;
      for (const LineEntry& f : input_levels[k]) found |= f.x == e.x;
      if (!found)
        throw std::invalid_argument("expand_intervals: levels are not nested by position");
    }
  }

  ExpandResult out;
  LineHierarchy& h = out.tree;
  h.alpha = alpha;
  h.levels = input_levels;
  h.levels.push_back({input_levels[l - 1].front()});  // auxiliary root level l+1

  h.intervals.resize(l + 1);
  h.parent.resize(l + 1);
  for (int k = 0; k <= l; ++k) {
    std::vector<double> xs;
    for (const LineEntry& e : h.levels[k]) xs.push_back(e.x);
    h.intervals[k] = base_intervals(xs, alpha);
    h.parent[k].assign(h.levels[k].size(), {});
  }

  // Step 1: sweep levels bottom-up; each node absorbs the still-unassigned
  // lower intervals it intersects, which keeps every component an interval
  // tree.
  for (int k = 2; k <= l + 1; ++k) {
    for (int i = 0; i < static_cast<int>(h.levels[k - 1].size()); ++i) {
      Interval& a = h.intervals[k - 1][i];
      double lo = a.lo, hi = a.hi;
      for (int kk = 1; kk < k; ++kk)
        for (int ii = 0; ii < static_cast<int>(h.levels[kk - 1].size()); ++ii) {
          if (h.parent[kk - 1][ii].level >= 0) continue;
          if (!a.intersects(h.intervals[kk - 1][ii])) continue;
          h.parent[kk - 1][ii] = {k, i};
          lo = std::min(lo, h.intervals[kk - 1][ii].lo);
          hi = std::max(hi, h.intervals[kk - 1][ii].hi);
        }
      a.lo = lo;
      a.hi = hi;
    }
  }
  out.trace.after_step1 = h.intervals;

  // Growth bound after step 1: toward a same-level neighbor at gap x, an
  // interval end may have moved at most k * alpha * x past its facility.
  for (int k = 1; k <= l; ++k) {
    for (std::size_t i = 0; i + 1 < h.levels[k - 1].size(); ++i) {
      double gap = h.levels[k - 1][i + 1].x - h.levels[k - 1][i].x;
      double right = h.intervals[k - 1][i].hi - h.levels[k - 1][i].x;
      double left = h.levels[k - 1][i + 1].x - h.intervals[k - 1][i + 1].lo;
      if (right > k * alpha * gap * (1 + 1e-9) || left > k * alpha * gap * (1 + 1e-9))
        throw std::logic_error("expand_intervals: step-1 interval growth bound violated");
    }
  }

  // Step 2: reroute any child hanging more than one level below its parent
  // to the parent's closest level-(k-1) child, expanding that child's
  // interval to cover it.
  for (int k = l + 1; k >= 2; --k) {
    for (int i = 0; i < static_cast<int>(h.levels[k - 1].size()); ++i) {
      auto kids = h.children_of(k, i);
      for (const auto& kid : kids) {
        if (kid.level >= k - 1) continue;
        double hx = h.levels[kid.level - 1][kid.idx].x;
        int g = -1;
        for (const auto& other : kids) {
          if (other.level != k - 1) continue;
          if (g < 0) {
            g = other.idx;
            continue;
          }
          double dg = std::abs(h.levels[k - 2][g].x - hx);
          double dn = std::abs(h.levels[k - 2][other.idx].x - hx);
          if (dn < dg || (dn == dg && h.levels[k - 2][other.idx].x < h.levels[k - 2][g].x))
            g = other.idx;
        }
        if (g < 0)
          throw std::logic_error("expand_intervals: node lacks a child one level down");
        h.parent[kid.level - 1][kid.idx] = {k - 1, g};
        Interval& gi = h.intervals[k - 2][g];
        const Interval& ki = h.intervals[kid.level - 1][kid.idx];
        gi.lo = std::min(gi.lo, ki.lo);
        gi.hi = std::max(gi.hi, ki.hi);
      }
    }
  }
  out.trace.after_step2 = h.intervals;

  // Step 3: close the gaps top-down.
  complete_assignment(h, l + 1, 0);

  // Per-level intervals must now partition the line and still contain
  // their base intervals (the invariant behind the 1/alpha cost bound).
  for (int k = 1; k <= l; ++k) {
    std::vector<double> xs;
    for (const LineEntry& e : h.levels[k - 1]) xs.push_back(e.x);
    std::vector<Interval> base = base_intervals(xs, alpha);
    for (std::size_t i = 0; i < base.size(); ++i)
      if (!h.intervals[k - 1][i].contains(base[i]))
        throw std::logic_error("expand_intervals: interval shrank below its base");
    std::vector<Interval> ivs = h.intervals[k - 1];
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    if (ivs.front().lo != -kInf || ivs.back().hi != kInf)
      throw std::logic_error("expand_intervals: level does not span the line");
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
      if (ivs[i].hi != ivs[i + 1].lo)
        throw std::logic_error("expand_intervals: level intervals do not partition the line");
  }
  return out;
}

}  // namespace fairplace
