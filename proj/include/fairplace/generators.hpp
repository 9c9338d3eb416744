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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairplace/instance.hpp"

namespace fairplace {

// Star instance witnessing that portfolios need many solutions: r = t^k
// singleton-group clients at the center, leaf j holding a facility of cost
// t^j at distance t^{(k-j)/k}. Opening only f_i is the unique good choice
// for the norm p_i = k/i, and those choices are mutually exclusive.
inline Instance gen_star_lower_bound(std::int64_t t, int k) {
  if (t < 2) throw std::invalid_argument("gen_star_lower_bound: t must be >= 2");
  if (k < 1) throw std::invalid_argument("gen_star_lower_bound: k must be >= 1");
  std::int64_t r = 1;
  for (int j = 0; j < k; ++j) {
    if (r > (std::int64_t{1} << 31) / t)
      throw std::range_error("gen_star_lower_bound: t^k overflows the client range");
    r *= t;
  }

  double eps = 1.0 / k;
  std::vector<TreeMetric::Edge> edges;
  for (int j = 1; j <= k; ++j)
    edges.push_back({0, j, std::pow(static_cast<double>(t), (k - j) * eps)});

  Instance inst;
  inst.metric = make_tree_metric(k + 1, std::move(edges));
  for (int j = 1; j <= k; ++j) {
    Facility f;
    f.id = "f" + std::to_string(j);
    f.cost = std::pow(static_cast<double>(t), j);
    f.point.index = j;
    inst.facilities.push_back(std::move(f));
  }
  for (std::int64_t c = 0; c < r; ++c) {
    Client cl;
    cl.id = "c" + std::to_string(c);
    cl.group = static_cast<int>(c);  // singleton groups
    cl.point.index = 0;
    inst.clients.push_back(std::move(cl));
  }
  return inst;
}

// Line instance on which one-step-lookahead reassignment chases a client
// from 0 out to 2^l - 1 while a facility sits at -(1+eps) the whole time.
// The intended nested facility sets are produced alongside the instance:
// G_k keeps -(1+eps) and every 2^t - 1 with t >= k.
struct AdversarialInstance {
  Instance instance;
  std::vector<std::vector<std::string>> chain;  // chain[k-1] = open ids of G_k
};

inline AdversarialInstance gen_greedy_adversarial(int l, double eps) {
  if (l < 1) throw std::invalid_argument("gen_greedy_adversarial: l must be >= 1");
  if (!(eps > 0)) throw std::invalid_argument("gen_greedy_adversarial: eps must be > 0");

  AdversarialInstance out;
  Instance& inst = out.instance;
  inst.metric = make_line_metric();

  Facility fm;
  fm.id = "fm";
  fm.point.x = -(1.0 + eps);
  inst.facilities.push_back(fm);
  for (int t = 0; t <= l; ++t) {
    Facility f;
    f.id = "f" + std::to_string(t);
    f.point.x = static_cast<double>((std::int64_t{1} << t) - 1);
    inst.facilities.push_back(std::move(f));
  }

  Client c;
  c.id = "c0";
  c.group = 0;
  c.point.x = 0.0;
  inst.clients.push_back(std::move(c));

  for (int k = 1; k <= l; ++k) {
    std::vector<std::string> level = {"fm"};
    for (int t = k; t <= l; ++t) level.push_back("f" + std::to_string(t));
    out.chain.push_back(std::move(level));
  }
  return out;
}

enum class MetricVariant { kExplicit, kLine, kTree, kEuclidean };

inline MetricVariant metric_variant_from_name(const std::string& name) {
  if (name == "explicit") return MetricVariant::kExplicit;
  if (name == "line") return MetricVariant::kLine;
  if (name == "tree") return MetricVariant::kTree;
  if (name == "euclidean") return MetricVariant::kEuclidean;
  throw std::invalid_argument("unknown metric variant: " + name);
}

struct RandomInstanceParams {
  int n_facilities = 5;
  int n_clients = 8;
  int r = 2;
  MetricVariant variant = MetricVariant::kLine;
  double cost_min = 0.0;
  double cost_max = 10.0;
};

// Deterministic for a fixed (params, seed) pair. Group labels are assigned
// round-robin and then shuffled, so every group is nonempty.
inline Instance gen_random(const RandomInstanceParams& params, std::uint64_t seed) {
  if (params.n_facilities < 1)
    throw std::invalid_argument("gen_random: need at least one facility");
  if (params.n_clients < 1)
    throw std::invalid_argument("gen_random: need at least one client");
  if (params.r < 1 || params.r > params.n_clients)
    throw std::invalid_argument("gen_random: need 1 <= r <= n_clients");
  if (params.cost_max < params.cost_min)
    throw std::invalid_argument("gen_random: empty cost range");

  SplitMix64 rng(seed);
  Instance inst;
  const int nf = params.n_facilities;
  const int nc = params.n_clients;
  const int total = nf + nc;

  auto coord = [&]() { return rng.next_in(0.0, 100.0); };

  switch (params.variant) {
    case MetricVariant::kLine: {
      inst.metric = make_line_metric();
      for (int i = 0; i < nf; ++i)
        inst.facilities.push_back({"f" + std::to_string(i), 0.0, PointRef{-1, coord()}});
      for (int j = 0; j < nc; ++j)
        inst.clients.push_back({"c" + std::to_string(j), 0, PointRef{-1, coord()}});
      break;
    }
    case MetricVariant::kEuclidean: {
      inst.metric = make_plane_metric();
      for (int i = 0; i < nf; ++i) {
        double x = coord(), y = coord();
        inst.facilities.push_back({"f" + std::to_string(i), 0.0, PointRef{-1, x, y}});
      }
      for (int j = 0; j < nc; ++j) {
        double x = coord(), y = coord();
        inst.clients.push_back({"c" + std::to_string(j), 0, PointRef{-1, x, y}});
      }
      break;
    }
    case MetricVariant::kExplicit: {
      // Pairwise distances of hidden plane points, so the triangle
      // inequality holds by construction.
      std::vector<std::pair<double, double>> pts(total);
      for (auto& p : pts) {
        p.first = coord();
        p.second = coord();
      }
      std::vector<std::vector<double>> d(total, std::vector<double>(total, 0.0));
      for (int a = 0; a < total; ++a)
        for (int b = 0; b < total; ++b)
          d[a][b] = std::hypot(pts[a].first - pts[b].first, pts[a].second - pts[b].second);
      inst.metric = make_explicit_metric(std::move(d));
      for (int i = 0; i < nf; ++i)
        inst.facilities.push_back({"f" + std::to_string(i), 0.0, PointRef{i}});
      for (int j = 0; j < nc; ++j)
        inst.clients.push_back({"c" + std::to_string(j), 0, PointRef{nf + j}});
      break;
    }
    case MetricVariant::kTree: {
      std::vector<TreeMetric::Edge> edges;
      for (int v = 1; v < total; ++v) {
        int parent = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
        edges.push_back({parent, v, rng.next_in(1.0, 10.0)});
      }
      inst.metric = make_tree_metric(total, std::move(edges));
      for (int i = 0; i < nf; ++i)
        inst.facilities.push_back({"f" + std::to_string(i), 0.0, PointRef{i}});
      for (int j = 0; j < nc; ++j)
        inst.clients.push_back({"c" + std::to_string(j), 0, PointRef{nf + j}});
      break;
    }
  }

  for (Facility& f : inst.facilities) f.cost = rng.next_in(params.cost_min, params.cost_max);

  std::vector<int> labels(nc);
  for (int j = 0; j < nc; ++j) labels[j] = j % params.r;
  for (int j = nc - 1; j > 0; --j) {
    int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(j + 1)));
    std::swap(labels[j], labels[k]);
  }
  for (int j = 0; j < nc; ++j) inst.clients[j].group = labels[j];
  return inst;
}

}  // namespace fairplace
