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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairplace/hierarchy.hpp"

namespace fairplace {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void expect_keys(const Json& obj, const std::set<std::string>& allowed,
                        const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ParseError(where + ": unknown key \"" + it.key() + "\"");
}

inline double require_number(const Json& obj, const std::string& key,
                             const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw ParseError(where + ": missing numeric \"" + key + "\"");
  return obj[key].get<double>();
}

inline std::string require_string(const Json& obj, const std::string& key,
                                  const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw ParseError(where + ": missing string \"" + key + "\"");
  return obj[key].get<std::string>();
}

}  // namespace detail

inline Json norm_to_json(NormParam p) {
  if (p.is_infinity()) return Json("inf");
  return Json(p.p());
}

inline NormParam norm_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return NormParam::infinity();
    throw ParseError(where + ": norm must be a number or \"inf\"");
  }
  if (!j.is_number()) throw ParseError(where + ": norm must be a number or \"inf\"");
  return NormParam::from_p(j.get<double>());
}

inline NormParam norm_from_string(const std::string& s) {
  if (s == "inf") return NormParam::infinity();
  double p = 0.0;
  std::size_t used = 0;
  try {
    p = std::stod(s, &used);
  } catch (const std::logic_error&) {
    throw ParseError("bad norm literal: " + s);
  }
  if (used != s.size()) throw ParseError("bad norm literal: " + s);
  return NormParam::from_p(p);
}

inline Model model_from_string(const std::string& s) {
  if (s == "standard") return Model::kStandard;
  if (s == "normalized") return Model::kNormalized;
  throw ParseError("unknown model: " + s);
}

// ---------------------------------------------------------------------------
// Instance format

inline Json instance_to_json(const Instance& inst) {
  Json j;
  Json metric;
  metric["type"] = inst.metric.type_name();
  if (inst.metric.is_explicit()) {
    metric["matrix"] = std::get<ExplicitMetric>(inst.metric.variant).d;
  } else if (inst.metric.is_tree()) {
    const TreeMetric& t = inst.metric.tree();
    metric["vertices"] = t.n;
    Json edges = Json::array();
    for (const auto& e : t.edges) edges.push_back(Json::array({e.u, e.v, e.w}));
    metric["edges"] = edges;
  }
  j["metric"] = metric;

  auto position = [&](const PointRef& p, Json& obj) {
    if (inst.metric.is_explicit()) {
      obj["point"] = p.index;
    } else if (inst.metric.is_line()) {
      obj["x"] = p.x;
    } else if (inst.metric.is_tree()) {
      obj["vertex"] = p.index;
    } else {
      obj["pos"] = Json::array({p.x, p.y});
    }
  };
  Json facs = Json::array();
  for (const Facility& f : inst.facilities) {
    Json o;
    o["id"] = f.id;
    o["cost"] = f.cost;
    position(f.point, o);
    facs.push_back(o);
  }
  j["facilities"] = facs;
  Json clis = Json::array();
  for (const Client& c : inst.clients) {
    Json o;
    o["id"] = c.id;
    o["group"] = c.group;
    position(c.point, o);
    clis.push_back(o);
  }
  j["clients"] = clis;
  return j;
}

inline Instance instance_from_json(const Json& j) {
  detail::expect_keys(j, {"metric", "facilities", "clients"}, "instance");
  if (!j.contains("metric") || !j.contains("facilities") || !j.contains("clients"))
    throw ParseError("instance: metric, facilities and clients are required");

  Instance inst;
  const Json& mj = j["metric"];
  std::string type = detail::require_string(mj, "type", "metric");
  std::string pos_key;
  if (type == "explicit") {
    detail::expect_keys(mj, {"type", "matrix"}, "metric");
    if (!mj.contains("matrix") || !mj["matrix"].is_array())
      throw ParseError("metric: explicit variant needs a matrix");
    std::vector<std::vector<double>> d;
    for (const Json& row : mj["matrix"]) {
      if (!row.is_array()) throw ParseError("metric: matrix rows must be arrays");
      d.push_back(row.get<std::vector<double>>());
    }
    inst.metric = MetricSpace{ExplicitMetric{std::move(d)}};
    pos_key = "point";
  } else if (type == "line") {
    detail::expect_keys(mj, {"type"}, "metric");
    inst.metric = make_line_metric();
    pos_key = "x";
  } else if (type == "tree") {
    detail::expect_keys(mj, {"type", "vertices", "edges"}, "metric");
    int n = static_cast<int>(detail::require_number(mj, "vertices", "metric"));
    if (!mj.contains("edges") || !mj["edges"].is_array())
      throw ParseError("metric: tree variant needs edges");
    TreeMetric t;
    t.n = n;
    for (const Json& e : mj["edges"]) {
      if (!e.is_array() || e.size() != 3)
        throw ParseError("metric: tree edges are [u, v, w] triples");
      t.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    try {
      t.build();
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("metric: ") + e.what());
    }
    inst.metric = MetricSpace{std::move(t)};
    pos_key = "vertex";
  } else if (type == "euclidean") {
    detail::expect_keys(mj, {"type"}, "metric");
    inst.metric = make_plane_metric();
    pos_key = "pos";
  } else {
    throw ParseError("metric: unknown type \"" + type + "\"");
  }

  auto parse_position = [&](const Json& o, const std::string& where) {
    PointRef p;
    if (pos_key == "x") {
      p.x = detail::require_number(o, "x", where);
    } else if (pos_key == "pos") {
      if (!o.contains("pos") || !o["pos"].is_array() || o["pos"].size() != 2)
        throw ParseError(where + ": missing [x, y] position");
      p.x = o["pos"][0].get<double>();
      p.y = o["pos"][1].get<double>();
    } else {
      p.index = static_cast<int>(detail::require_number(o, pos_key, where));
    }
    return p;
  };

  if (!j["facilities"].is_array()) throw ParseError("instance: facilities must be an array");
  for (const Json& o : j["facilities"]) {
    detail::expect_keys(o, {"id", "cost", pos_key}, "facility");
    Facility f;
    f.id = detail::require_string(o, "id", "facility");
    f.cost = detail::require_number(o, "cost", "facility");
    f.point = parse_position(o, "facility " + f.id);
    inst.facilities.push_back(std::move(f));
  }
  if (!j["clients"].is_array()) throw ParseError("instance: clients must be an array");
  for (const Json& o : j["clients"]) {
    detail::expect_keys(o, {"id", "group", pos_key}, "client");
    Client c;
    c.id = detail::require_string(o, "id", "client");
    if (!o.contains("group") || !o["group"].is_number_integer())
      throw ParseError("client: group must be an integer");
    c.group = o["group"].get<int>();
    c.point = parse_position(o, "client " + c.id);
    inst.clients.push_back(std::move(c));
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Solution format

inline Json solution_to_json(const Instance& inst, const Solution& sol, NormParam p,
                             Model model) {
  Json j;
  Json open = Json::array();
  for (int i : sol.open) open.push_back(inst.facilities[i].id);
  j["open"] = open;
  Json assign = Json::object();
  for (std::size_t c = 0; c < sol.assign.size(); ++c)
    assign[inst.clients[c].id] = inst.facilities[sol.assign[c]].id;
  j["assign"] = assign;
  j["p"] = norm_to_json(p);
  j["model"] = model_name(model);
  CostBreakdown cb = total_cost(inst, sol, p, model);
  Json cost;
  cost["facility_cost"] = cb.facility_cost;
  cost["group_vector"] = cb.group_vector;
  cost["assignment_cost"] = cb.assignment_cost;
  cost["weight"] = cb.weight;
  cost["total"] = cb.total;
  j["cost"] = cost;
  return j;
}

namespace detail {

inline int facility_index(const Instance& inst, const std::string& id) {
  for (int i = 0; i < inst.num_facilities(); ++i)
    if (inst.facilities[i].id == id) return i;
  throw ParseError("unknown facility id \"" + id + "\"");
}

inline int client_index(const Instance& inst, const std::string& id) {
  for (int j = 0; j < inst.num_clients(); ++j)
    if (inst.clients[j].id == id) return j;
  throw ParseError("unknown client id \"" + id + "\"");
}

}  // namespace detail

struct ParsedSolution {
  Solution solution;
  NormParam p;
  Model model = Model::kStandard;
};

inline ParsedSolution solution_from_json(const Instance& inst, const Json& j) {
  detail::expect_keys(j, {"open", "assign", "p", "model", "cost"}, "solution");
  ParsedSolution out;
  if (!j.contains("open") || !j["open"].is_array())
    throw ParseError("solution: open facility list required");
  for (const Json& id : j["open"])
    out.solution.open.push_back(detail::facility_index(inst, id.get<std::string>()));
  out.solution.normalize();
  out.solution.assign.assign(inst.num_clients(), -1);
  if (!j.contains("assign") || !j["assign"].is_object())
    throw ParseError("solution: assign map required");
  for (auto it = j["assign"].begin(); it != j["assign"].end(); ++it)
    out.solution.assign[detail::client_index(inst, it.key())] =
        detail::facility_index(inst, it.value().get<std::string>());
  for (int c = 0; c < inst.num_clients(); ++c)
    if (out.solution.assign[c] < 0)
      throw ParseError("solution: client \"" + inst.clients[c].id + "\" unassigned");
  if (j.contains("p")) out.p = norm_from_json(j["p"], "solution");
  if (j.contains("model")) out.model = model_from_string(j["model"].get<std::string>());
  return out;
}

// Debug dump of a fractional relaxation point: per-client positive masses,
// the opening vector, and the certified value.
inline Json fractional_to_json(const Instance& inst, const FractionalSolution& frac) {
  Json j;
  Json x = Json::object();
  for (int c = 0; c < inst.num_clients(); ++c) {
    Json row = Json::object();
    for (int i = 0; i < inst.num_facilities(); ++i)
      if (frac.x[c][i] > 0.0) row[inst.facilities[i].id] = frac.x[c][i];
    x[inst.clients[c].id] = row;
  }
  j["x"] = x;
  Json y = Json::object();
  for (int i = 0; i < inst.num_facilities(); ++i)
    if (frac.y[i] > 0.0) y[inst.facilities[i].id] = frac.y[i];
  j["y"] = y;
  j["value"] = frac.value;
  j["converged"] = frac.converged;
  return j;
}

// ---------------------------------------------------------------------------
// Portfolio format

inline Json portfolio_to_json(const Instance& inst, const Portfolio& port) {
  Json arr = Json::array();
  for (const PortfolioEntry& e : port.entries) {
    Json o;
    o["q"] = norm_to_json(e.q);
    o["cover"] = Json::array({norm_to_json(e.cover_lo), norm_to_json(e.cover_hi)});
    o["value"] = e.value;
    o["solution"] = solution_to_json(inst, e.solution, e.q, port.model);
    arr.push_back(o);
  }
  Json j;
  j["entries"] = arr;
  j["r"] = port.r;
  j["model"] = model_name(port.model);
  return j;
}

inline Portfolio portfolio_from_json(const Instance& inst, const Json& j) {
  detail::expect_keys(j, {"entries", "r", "model"}, "portfolio");
  Portfolio port;
  port.r = static_cast<int>(detail::require_number(j, "r", "portfolio"));
  port.model = model_from_string(detail::require_string(j, "model", "portfolio"));
  for (const Json& o : j["entries"]) {
    detail::expect_keys(o, {"q", "cover", "value", "solution"}, "portfolio entry");
    PortfolioEntry e;
    e.q = norm_from_json(o["q"], "portfolio entry");
    e.cover_lo = norm_from_json(o["cover"][0], "portfolio cover");
    e.cover_hi = norm_from_json(o["cover"][1], "portfolio cover");
    e.value = detail::require_number(o, "value", "portfolio entry");
    e.solution = solution_from_json(inst, o["solution"]).solution;
    port.entries.push_back(std::move(e));
  }
  return port;
}

// ---------------------------------------------------------------------------
// Refinement chain format

inline Json chain_to_json(const Instance& inst, const RefinementChain& chain,
                          const std::vector<std::vector<double>>& blowup_table = {}) {
  Json j;
  j["direction"] =
      chain.direction == ChainDirection::kDecreasing ? "decreasing" : "increasing";
  Json norms = Json::array();
  for (NormParam p : chain.norms) norms.push_back(norm_to_json(p));
  j["norms"] = norms;
  Json levels = Json::array();
  for (const ChainLevel& level : chain.levels) {
    Json o;
    Json open = Json::array();
    for (int i : level.open) open.push_back(inst.facilities[i].id);
    o["open"] = open;
    Json assign = Json::object();
    for (std::size_t c = 0; c < level.assign.size(); ++c)
      assign[inst.clients[c].id] = inst.facilities[level.assign[c]].id;
    o["assign"] = assign;
    levels.push_back(o);
  }
  j["levels"] = levels;
  j["blowup_table"] = blowup_table;
  return j;
}

inline RefinementChain chain_from_json(const Instance& inst, const Json& j) {
  detail::expect_keys(j, {"direction", "norms", "levels", "blowup_table"}, "chain");
  RefinementChain chain;
  std::string dir = detail::require_string(j, "direction", "chain");
  if (dir == "decreasing") {
    chain.direction = ChainDirection::kDecreasing;
  } else if (dir == "increasing") {
    chain.direction = ChainDirection::kIncreasing;
  } else {
    throw ParseError("chain: unknown direction \"" + dir + "\"");
  }
  if (j.contains("norms"))
    for (const Json& n : j["norms"]) chain.norms.push_back(norm_from_json(n, "chain"));
  for (const Json& o : j["levels"]) {
    detail::expect_keys(o, {"open", "assign"}, "chain level");
    ChainLevel level;
    for (const Json& id : o["open"])
      level.open.push_back(detail::facility_index(inst, id.get<std::string>()));
    std::sort(level.open.begin(), level.open.end());
    level.assign.assign(inst.num_clients(), -1);
    for (auto it = o["assign"].begin(); it != o["assign"].end(); ++it)
      level.assign[detail::client_index(inst, it.key())] =
          detail::facility_index(inst, it.value().get<std::string>());
    for (int c = 0; c < inst.num_clients(); ++c)
      if (level.assign[c] < 0)
        throw ParseError("chain: client \"" + inst.clients[c].id + "\" unassigned");
    chain.levels.push_back(std::move(level));
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Reports, ratio tables, files

inline Json report_to_json(const Report& rep) {
  Json arr = Json::array();
  for (const Violation& v : rep.violations) {
    Json o;
    o["check"] = v.check;
    o["location"] = v.location;
    o["detail"] = v.detail;
    arr.push_back(o);
  }
  return arr;
}

inline Json ratio_table_to_json(const RatioTable& table) {
  Json rows = Json::array();
  for (const RatioRow& row : table.rows) {
    Json o;
    o["p"] = norm_to_json(row.p);
    o["cost"] = row.cost;
    if (row.oracle) {
      o["opt"] = row.opt;
      o["ratio"] = row.ratio;
    }
    rows.push_back(o);
  }
  Json j;
  j["rows"] = rows;
  j["oracle"] = table.oracle_available;
  if (table.oracle_available) j["max_ratio"] = table.max_ratio;
  if (!table.client_blowups.empty()) j["client_blowups"] = table.client_blowups;
  return j;
}

// Fixed column order for downstream plotting.
inline std::string ratio_table_to_csv(const RatioTable& table) {
  std::ostringstream os;
  os << "p,cost,opt,ratio\n";
  for (const RatioRow& row : table.rows) {
    os << row.p.to_string() << "," << row.cost << ",";
    if (row.oracle)
      os << row.opt << "," << row.ratio;
    else
      os << ",";
    os << "\n";
  }
  return os.str();
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

}  // namespace fairplace
