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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fairplace/common.hpp"
#include "fairplace/metric.hpp"

namespace fairplace {

struct Facility {
  std::string id;
  double cost = 0.0;
  PointRef point;
};

struct Client {
  std::string id;
  int group = 0;  // 0-based; groups must be contiguous and nonempty
  PointRef point;
};

// A problem instance: a metric space, candidate facilities with opening
// costs, and clients partitioned into groups. Immutable after construction.
struct Instance {
  MetricSpace metric;
  std::vector<Facility> facilities;
  std::vector<Client> clients;

  int num_facilities() const { return static_cast<int>(facilities.size()); }
  int num_clients() const { return static_cast<int>(clients.size()); }

  int num_groups() const {
    int r = 0;
    for (const Client& c : clients) r = std::max(r, c.group + 1);
    return r;
  }

  // The induced partition D_1, ..., D_r as client indices.
  std::vector<std::vector<int>> groups() const {
    std::vector<std::vector<int>> g(num_groups());
    for (int j = 0; j < num_clients(); ++j) g[clients[j].group].push_back(j);
    return g;
  }

  double dist(const PointRef& a, const PointRef& b) const {
    return distance(metric, a, b);
  }
  double client_facility_dist(int client, int facility) const {
    return dist(clients[client].point, facilities[facility].point);
  }

  // Dense client x facility distance table; the workhorse for the solvers.
  std::vector<std::vector<double>> distance_table() const {
    std::vector<std::vector<double>> d(num_clients(),
                                       std::vector<double>(num_facilities()));
    for (int j = 0; j < num_clients(); ++j)
      for (int i = 0; i < num_facilities(); ++i)
        d[j][i] = client_facility_dist(j, i);
    return d;
  }

  // Rank of each facility when sorted by id string; used for all id-based
  // tie-breaks so that results do not depend on file order.
  std::vector<int> facility_id_rank() const {
    std::vector<int> order(facilities.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return facilities[a].id < facilities[b].id;
    });
    std::vector<int> rank(facilities.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos);
    return rank;
  }

  std::vector<int> client_id_rank() const {
    std::vector<int> order(clients.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return clients[a].id < clients[b].id; });
    std::vector<int> rank(clients.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos);
    return rank;
  }
};

struct Violation {
  std::string check;
  std::string location;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string check, std::string location, std::string detail) {
    violations.push_back({std::move(check), std::move(location), std::move(detail)});
  }
};

namespace detail {

constexpr double kMetricTol = 1e-9;

inline void validate_metric(const MetricSpace& m, Report& rep) {
  if (const auto* e = std::get_if<ExplicitMetric>(&m.variant)) {
    int n = e->size();
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(e->d[i].size()) != n) {
        rep.add("metric-shape", "row " + std::to_string(i), "matrix is not square");
        return;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (std::abs(e->d[i][i]) > kMetricTol)
        rep.add("metric-identity", "d(" + std::to_string(i) + "," + std::to_string(i) + ")",
                "self distance is not zero");
      for (int j = 0; j < n; ++j) {
        if (e->d[i][j] < 0)
          rep.add("metric-nonneg", "d(" + std::to_string(i) + "," + std::to_string(j) + ")",
                  "negative distance");
        if (std::abs(e->d[i][j] - e->d[j][i]) > kMetricTol)
          rep.add("metric-symmetry", "d(" + std::to_string(i) + "," + std::to_string(j) + ")",
                  "matrix is not symmetric");
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (e->d[i][j] > e->d[i][k] + e->d[k][j] + kMetricTol) {
            rep.add("triangle-inequality",
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ")",
                    "exceeds d(" + std::to_string(i) + "," + std::to_string(k) + ") + d(" +
                        std::to_string(k) + "," + std::to_string(j) + ")");
          }
  } else if (const auto* t = std::get_if<TreeMetric>(&m.variant)) {
    if (static_cast<int>(t->edges.size()) != t->n - 1) {
      rep.add("tree-shape", "edges", "edge count differs from n - 1");
      return;
    }
    for (const auto& e : t->edges) {
      if (e.u < 0 || e.u >= t->n || e.v < 0 || e.v >= t->n) {
        rep.add("tree-shape", "edges", "edge endpoint out of range");
        return;
      }
      if (e.w < 0) rep.add("tree-weights", "edges", "negative edge weight");
    }
    // Connectivity: n - 1 edges + connected implies acyclic.
    std::vector<std::vector<int>> adj(t->n);
    for (const auto& e : t->edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(t->n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    if (count != t->n) rep.add("tree-connectivity", "edges", "tree is not connected");
  }
}

inline int metric_point_count(const MetricSpace& m) {
  if (const auto* e = std::get_if<ExplicitMetric>(&m.variant)) return e->size();
  if (const auto* t = std::get_if<TreeMetric>(&m.variant)) return t->n;
  return -1;  // coordinate variants have no fixed point set
}

}  // namespace detail

// Reports every violated invariant; the report is empty iff the instance is
// valid. Never throws.
inline Report validate_instance(const Instance& inst) {
  Report rep;
  detail::validate_metric(inst.metric, rep);

  if (inst.facilities.empty()) rep.add("facilities", "", "facility set is empty");
  for (const Facility& f : inst.facilities)
    if (f.cost < 0) rep.add("facility-cost", f.id, "negative opening cost");

  int points = detail::metric_point_count(inst.metric);
  if (points >= 0) {
    for (const Facility& f : inst.facilities)
      if (f.point.index < 0 || f.point.index >= points)
        rep.add("facility-point", f.id, "point id out of range");
    for (const Client& c : inst.clients)
      if (c.point.index < 0 || c.point.index >= points)
        rep.add("client-point", c.id, "point id out of range");
  }

  std::set<std::string> fac_ids, cli_ids;
  for (const Facility& f : inst.facilities)
    if (!fac_ids.insert(f.id).second) rep.add("facility-id", f.id, "duplicate facility id");
  for (const Client& c : inst.clients)
    if (!cli_ids.insert(c.id).second) rep.add("client-id", c.id, "duplicate client id");

  if (inst.clients.empty()) {
    rep.add("groups", "", "client set is empty");
    return rep;
  }
  int r = inst.num_groups();
  std::vector<int> sizes(r, 0);
  for (const Client& c : inst.clients) {
    if (c.group < 0) {
      rep.add("group-partition", c.id, "negative group id");
      return rep;
    }
    ++sizes[c.group];
  }
  for (int g = 0; g < r; ++g)
    if (sizes[g] == 0)
      rep.add("group-partition", "group " + std::to_string(g),
              "group ids are not contiguous: group " + std::to_string(g) +
                  " is empty while r = " + std::to_string(r));
  return rep;
}

}  // namespace fairplace
