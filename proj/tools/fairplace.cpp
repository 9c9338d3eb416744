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

// Command-line front end: instance generation, single-norm solves,
// portfolios, refinements, hierarchical solves, artifact verification, and
// ratio sweeps. All outputs are JSON (plus CSV tables) and byte-identical
// across runs with the same inputs and seed.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairplace/fairplace.hpp"

namespace {

using namespace fairplace;

std::vector<NormParam> parse_norm_list(const std::string& csv) {
  std::vector<NormParam> norms;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) norms.push_back(norm_from_string(item));
  for (std::size_t i = 0; i + 1 < norms.size(); ++i)
    if (!(norms[i] < norms[i + 1]))
      throw ParseError("norms must be strictly ascending: " + csv);
  if (norms.empty()) throw ParseError("empty norm list");
  return norms;
}

Instance load_instance_checked(const std::string& path, bool* ok) {
  Instance inst = instance_from_json(read_json_file(path));
  Report rep = validate_instance(inst);
  if (!rep.ok()) {
    std::cout << dump_json(report_to_json(rep));
    *ok = false;
  } else {
    *ok = true;
  }
  return inst;
}

RefineBackend backend_from_string(const std::string& s) {
  if (s == "auto") return RefineBackend::kAuto;
  if (s == "general") return RefineBackend::kGeneral;
  if (s == "line") return RefineBackend::kLine;
  if (s == "tree") return RefineBackend::kTree;
  throw ParseError("unknown backend: " + s);
}

int run(int argc, char** argv) {
  CLI::App app{"socially fair facility location toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global --seed/--threads may follow the subcommand

  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("--seed", seed, "seed for all randomness");
  app.add_option("--threads", threads, "worker cap (computations are single-threaded)");

  // --- gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);
  std::string out_path;

  auto* gen_star = gen->add_subcommand("star", "star lower-bound construction");
  std::int64_t star_t = 4;
  int star_k = 2;
  gen_star->add_option("--t", star_t, "base t >= 2")->required();
  gen_star->add_option("--k", star_k, "leaf count k >= 1")->required();
  gen_star->add_option("-o,--out", out_path, "output instance file")->required();

  auto* gen_adv = gen->add_subcommand("adversarial", "greedy-adversarial line instance");
  int adv_l = 3;
  double adv_eps = 0.01;
  std::string chain_out;
  gen_adv->add_option("--l", adv_l, "levels l >= 1")->required();
  gen_adv->add_option("--eps", adv_eps, "offset eps > 0")->required();
  gen_adv->add_option("-o,--out", out_path, "output instance file")->required();
  gen_adv->add_option("--chain-out", chain_out, "write the intended facility chain here");

  auto* gen_rand = gen->add_subcommand("random", "seeded random instance");
  RandomInstanceParams rp;
  std::string variant = "line";
  gen_rand->add_option("--facilities", rp.n_facilities, "facility count");
  gen_rand->add_option("--clients", rp.n_clients, "client count");
  gen_rand->add_option("--groups", rp.r, "group count r");
  gen_rand->add_option("--metric", variant, "explicit|line|tree|euclidean");
  gen_rand->add_option("--cost-min", rp.cost_min, "min opening cost");
  gen_rand->add_option("--cost-max", rp.cost_max, "max opening cost");
  gen_rand->add_option("-o,--out", out_path, "output instance file")->required();

  // --- solve ---------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "solve a single norm");
  std::string instance_path, p_str = "1", model_str = "standard";
  bool use_bf = false;
  ApproxOptions approx;
  int bf_cap = default_bf_cap();
  solve->add_option("--instance", instance_path, "instance file")->required();
  solve->add_option("--p", p_str, "norm (number or inf)");
  solve->add_option("--model", model_str, "standard|normalized");
  solve->add_flag("--brute-force", use_bf, "exact enumeration instead of the 4-approximation");
  solve->add_option("--tol", approx.tol, "relaxation tolerance");
  solve->add_option("--max-iters", approx.max_iters, "relaxation iteration cap");
  solve->add_option("--alpha", approx.alpha, "filtering quantile");
  solve->add_option("--bf-cap", bf_cap, "brute-force facility cap");
  std::string dump_fractional;
  solve->add_option("--dump-fractional", dump_fractional,
                    "also write the fractional relaxation here");
  solve->add_option("-o,--out", out_path, "output solution file");

  // --- portfolio -----------------------------------------------------------
  auto* port_cmd = app.add_subcommand("portfolio", "all-norms solution portfolio");
  int grid = 0;
  bool oracle = false;
  port_cmd->add_option("--instance", instance_path, "instance file")->required();
  port_cmd->add_option("--model", model_str, "standard|normalized");
  port_cmd->add_option("--grid", grid, "norm grid size");
  port_cmd->add_flag("--oracle", oracle, "use exact brute-force values");
  port_cmd->add_option("--bf-cap", bf_cap, "brute-force facility cap");
  port_cmd->add_option("-o,--out", out_path, "output portfolio file");

  // --- refine ----------------------------------------------------------------
  auto* refine = app.add_subcommand("refine", "nested solutions across norms");
  std::string norms_str = "1,2,inf", mode_str = "strong", gamma_str = "auto";
  std::string backend_str = "general", chain_in;
  bool metric_aware = false, increasing = false;
  refine->add_option("--instance", instance_path, "instance file")->required();
  refine->add_option("--norms", norms_str, "comma list, ascending (e.g. 1,2,inf)");
  refine->add_option("--mode", mode_str, "weak|strong|greedy");
  refine->add_option("--model", model_str, "standard|normalized");
  refine->add_option("--gamma", gamma_str, "lookahead discount (auto = 1 + 1/sqrt(l))");
  refine->add_option("--backend", backend_str, "auto|general|line|tree");
  refine->add_flag("--metric-aware", metric_aware, "pick the backend from the metric");
  refine->add_flag("--increasing", increasing, "increasing refinement (normalized model)");
  refine->add_option("--chain-in", chain_in, "reassign this chain instead of solving norms");
  refine->add_option("-o,--out", out_path, "output chain file");

  // --- hierarchy --------------------------------------------------------------
  auto* hier = app.add_subcommand("hierarchy", "hierarchical facility location");
  std::string costs_str;
  hier->add_option("--instance", instance_path, "instance file")->required();
  hier->add_option("--costs", costs_str, "per-level opening costs, non-decreasing")->required();
  hier->add_option("--p", p_str, "norm (number or inf)");
  hier->add_option("--model", model_str, "standard|normalized");
  hier->add_option("--backend", backend_str, "auto|general|line|tree");
  hier->add_option("--bf-cap", bf_cap, "brute-force facility cap");
  hier->add_option("-o,--out", out_path, "output file");

  // --- verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "check an artifact against its instance");
  std::string artifact_path, artifact_type = "auto";
  verify->add_option("--instance", instance_path, "instance file")->required();
  verify->add_option("--artifact", artifact_path, "artifact to verify (omit to just validate)");
  verify->add_option("--type", artifact_type, "auto|solution|chain|portfolio");

  // --- bench -------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "ratio sweep over a norm grid");
  std::string csv_out, json_out;
  int bench_grid = 9;
  bench->add_option("--instance", instance_path, "instance file")->required();
  bench->add_option("--model", model_str, "standard|normalized");
  bench->add_option("--grid", bench_grid, "number of grid norms");
  bench->add_option("--bf-cap", bf_cap, "brute-force facility cap");
  bench->add_option("-o,--out", csv_out, "output CSV table");
  bench->add_option("--json", json_out, "also write the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (threads < 1) {
    std::cerr << "--threads must be >= 1\n";
    return 2;
  }

  auto write_or_print = [&](const std::string& path, const std::string& text) {
    if (path.empty())
      std::cout << text;
    else
      write_text_file(path, text);
  };

  if (gen_star->parsed()) {
    Instance inst = gen_star_lower_bound(star_t, star_k);
    write_or_print(out_path, dump_json(instance_to_json(inst)));
    return 0;
  }
  if (gen_adv->parsed()) {
    AdversarialInstance adv = gen_greedy_adversarial(adv_l, adv_eps);
    write_or_print(out_path, dump_json(instance_to_json(adv.instance)));
    if (!chain_out.empty()) {
      Json levels = Json::array();
      for (const auto& level : adv.chain) levels.push_back(level);
      Json j;
      j["levels"] = levels;
      write_text_file(chain_out, dump_json(j));
    }
    return 0;
  }
  if (gen_rand->parsed()) {
    rp.variant = metric_variant_from_name(variant);
    Instance inst = gen_random(rp, seed);
    write_or_print(out_path, dump_json(instance_to_json(inst)));
    return 0;
  }

  bool ok = true;
  Instance inst = load_instance_checked(instance_path, &ok);
  if (!ok) return 1;
  Model model = model_from_string(model_str);

  if (solve->parsed()) {
    NormParam p = norm_from_string(p_str);
    Solution sol;
    if (use_bf) {
      sol = brute_force_opt(inst, p, model, bf_cap).solution;
    } else {
      sol = approx_solve(inst, p, model, approx).solution;
    }
    if (!dump_fractional.empty()) {
      FractionalSolution frac =
          solve_relaxation(inst, p, model, RelaxOptions{approx.tol, approx.max_iters});
      write_text_file(dump_fractional, dump_json(fractional_to_json(inst, frac)));
    }
    write_or_print(out_path, dump_json(solution_to_json(inst, sol, p, model)));
    return 0;
  }

  if (port_cmd->parsed()) {
    PortfolioOptions opts;
    opts.grid_size = grid;
    opts.oracle = oracle;
    opts.bf_cap = bf_cap;
    Portfolio port = build_portfolio(inst, model, opts);
    write_or_print(out_path, dump_json(portfolio_to_json(inst, port)));
    return 0;
  }

  if (refine->parsed()) {
    RefineOptions opts;
    if (gamma_str != "auto") opts.gamma = std::stod(gamma_str);
    opts.backend = metric_aware ? RefineBackend::kAuto : backend_from_string(backend_str);
    std::vector<NormParam> norms = parse_norm_list(norms_str);

    RefinementChain chain;
    std::vector<std::vector<double>> blowup;
    if (!chain_in.empty()) {
      // Reassign a supplied facility chain (e.g. the adversarial one).
      Json cj = read_json_file(chain_in);
      std::vector<std::vector<int>> open_sets;
      for (const Json& level : cj["levels"]) {
        std::vector<int> open;
        for (const Json& id : level)
          open.push_back(detail::facility_index(inst, id.get<std::string>()));
        open_sets.push_back(std::move(open));
      }
      RefinementChain given =
          chain_from_open_sets(inst, std::move(open_sets), ChainDirection::kDecreasing);
      if (mode_str == "greedy") {
        chain = greedy_strong_refine(inst, given);
      } else if (mode_str == "strong") {
        double gamma =
            opts.gamma > 0 ? opts.gamma : detail::auto_gamma(given.num_levels());
        LookaheadResult res = discounted_lookahead(inst, given, gamma);
        chain = std::move(res.chain);
        blowup = res.diag.recurrence.u;
      } else {
        chain = std::move(given);
      }
    } else if (increasing) {
      if (model != Model::kNormalized) {
        std::cerr << "--increasing requires --model normalized\n";
        return 2;
      }
      RefineMode mode = mode_str == "weak"     ? RefineMode::kWeak
                        : mode_str == "greedy" ? RefineMode::kGreedy
                                               : RefineMode::kStrong;
      RefineResult res = increasing_refine(inst, norms, mode, opts);
      chain = std::move(res.chain);
      if (res.lookahead) blowup = res.lookahead->recurrence.u;
    } else if (mode_str == "weak") {
      chain = weak_refine(inst, detail::per_norm_solutions(inst, norms, model, opts.approx),
                          norms);
    } else if (mode_str == "greedy") {
      RefinementChain weak = weak_refine(
          inst, detail::per_norm_solutions(inst, norms, model, opts.approx), norms);
      chain = greedy_strong_refine(inst, weak);
    } else if (mode_str == "strong") {
      RefineResult res = strong_refine_auto(inst, norms, model, opts);
      chain = std::move(res.chain);
      if (res.lookahead) blowup = res.lookahead->recurrence.u;
    } else {
      std::cerr << "unknown refine mode: " << mode_str << "\n";
      return 2;
    }
    write_or_print(out_path, dump_json(chain_to_json(inst, chain, blowup)));
    return 0;
  }

  if (hier->parsed()) {
    HierarchicalInstance hinst;
    hinst.base = inst;
    hinst.p = norm_from_string(p_str);
    hinst.model = model;
    std::stringstream ss(costs_str);
    std::string item;
    while (std::getline(ss, item, ',')) hinst.level_costs.push_back(std::stod(item));
    HierarchyResult res =
        solve_hierarchical(hinst, backend_from_string(backend_str), {}, bf_cap);
    Json j;
    j["chain"] = chain_to_json(inst, res.chain);
    Json levels = Json::array();
    for (const auto& level : res.levels) {
      Json o;
      o["cost"] = level.cost;
      if (level.oracle) {
        o["opt"] = level.opt;
        o["ratio"] = level.ratio;
      }
      levels.push_back(o);
    }
    j["levels"] = levels;
    j["oracle"] = res.oracle_available;
    if (res.oracle_available) j["worst_ratio"] = res.worst_ratio;
    write_or_print(out_path, dump_json(j));
    return 0;
  }

  if (verify->parsed()) {
    if (artifact_path.empty()) return 0;  // instance validation already ran
    Json aj = read_json_file(artifact_path);
    std::string type = artifact_type;
    if (type == "auto") {
      if (aj.contains("direction")) {
        type = "chain";
      } else if (aj.contains("entries")) {
        type = "portfolio";
      } else {
        type = "solution";
      }
    }
    Report rep;
    if (type == "chain") {
      rep = check_strong(chain_from_json(inst, aj));
    } else if (type == "portfolio") {
      Portfolio port = portfolio_from_json(inst, aj);
      if (port.entries.empty()) {
        rep.add("portfolio", "", "no entries");
      } else {
        if (!(port.entries.front().cover_lo == NormParam::one()))
          rep.add("portfolio", "cover", "intervals do not start at p = 1");
        if (!port.entries.back().cover_hi.is_infinity())
          rep.add("portfolio", "cover", "intervals do not end at p = inf");
        for (std::size_t i = 0; i + 1 < port.entries.size(); ++i)
          if (!(port.entries[i].cover_hi == port.entries[i + 1].cover_lo))
            rep.add("portfolio", "cover", "intervals do not share endpoints");
      }
    } else if (type == "solution") {
      try {
        ParsedSolution ps = solution_from_json(inst, aj);
        group_cost_vector(inst, ps.solution);
      } catch (const std::exception& e) {
        rep.add("solution", "", e.what());
      }
    } else {
      std::cerr << "unknown artifact type: " << type << "\n";
      return 2;
    }
    std::cout << dump_json(report_to_json(rep));
    return rep.ok() ? 0 : 1;
  }

  if (bench->parsed()) {
    if (bench_grid < 2) {
      std::cerr << "--grid must be >= 2\n";
      return 2;
    }
    std::vector<NormParam> norms;
    for (int i = 0; i < bench_grid; ++i)
      norms.push_back(NormParam(1.0 - static_cast<double>(i) / (bench_grid - 1)));
    RatioTable table;
    for (NormParam p : norms) {
      ApproxResult res = approx_solve(inst, p, model, approx);
      table.rows.push_back({p, res.cost.total});
    }
    std::vector<double> opts_v;
    if (inst.num_facilities() <= bf_cap) {
      opts_v = brute_force_values(inst, norms, model, bf_cap);
      table.oracle_available = true;
      for (std::size_t i = 0; i < norms.size(); ++i) {
        table.rows[i].opt = opts_v[i];
        table.rows[i].oracle = true;
        table.rows[i].ratio =
            opts_v[i] > 0 ? table.rows[i].cost / opts_v[i]
                          : (table.rows[i].cost > 0 ? kInf : 1.0);
        table.max_ratio = std::max(table.max_ratio, table.rows[i].ratio);
      }
    }
    write_or_print(csv_out, ratio_table_to_csv(table));
    if (!json_out.empty()) write_text_file(json_out, dump_json(ratio_table_to_json(table)));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fairplace::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
