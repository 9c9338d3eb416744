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

#include <doctest.h>

#include "fairplace/brute_force.hpp"
#include "fairplace/generators.hpp"
#include "fairplace/rounding.hpp"

using namespace fairplace;

TEST_SUITE_BEGIN("solver");

namespace {

Instance single_client(double cost_a, double xa, double cost_b, double xb) {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"a", cost_a, PointRef{-1, xa}});
  inst.facilities.push_back({"b", cost_b, PointRef{-1, xb}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  return inst;
}

}  // namespace

TEST_CASE("relaxation of the trivial instance") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"f", 0.0, PointRef{-1, 0.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  FractionalSolution frac = solve_relaxation(inst, NormParam::one());
  CHECK(frac.converged);
  CHECK(frac.value == doctest::Approx(0.0));
  CHECK(frac.x[0][0] == doctest::Approx(1.0));
  CHECK(frac.y[0] == doctest::Approx(1.0));
  CHECK(frac.feasible());
}

TEST_CASE("relaxation matches the one-dimensional scan oracle") {
  // Facility a: cost 3 at distance 0; facility b: free at distance 1. The
  // reduced objective over the opening fraction lam of a is 3 lam + (1-lam),
  // scanned here on a fine grid as the independent check. Minimum: 1.
  Instance inst = single_client(3.0, 0.0, 0.0, 1.0);
  double scan_best = kInf;
  for (int i = 0; i <= 100000; ++i) {
    double lam = i / 100000.0;
    scan_best = std::min(scan_best, 3.0 * lam + (1.0 - lam));
  }
  CHECK(scan_best == doctest::Approx(1.0));
  FractionalSolution frac = solve_relaxation(inst, NormParam::one());
  CHECK(frac.converged);
  CHECK(frac.value == doctest::Approx(scan_best).epsilon(1e-9));
  CHECK(frac.feasible());
}

TEST_CASE("relaxation never exceeds the integral optimum") {
  Instance star = gen_star_lower_bound(4, 2);
  FractionalSolution frac = solve_relaxation(star, NormParam::from_p(2));
  double opt = brute_force_opt(star, NormParam::from_p(2)).cost.total;
  CHECK(opt == doctest::Approx(12.0));
  CHECK(frac.value <= opt * (1 + 1e-6));

  for (int seed = 0; seed < 15; ++seed) {
    RandomInstanceParams params;
    params.n_facilities = 2 + seed % 4;
    params.n_clients = 3 + seed % 4;
    params.r = 1 + seed % 3;
    params.variant = static_cast<MetricVariant>(seed % 4);
    Instance inst = gen_random(params, 2200 + seed);
    for (double pv : {1.0, 1.7, 2.0, 5.0, 0.0}) {
      NormParam p = pv == 0.0 ? NormParam::infinity() : NormParam::from_p(pv);
      FractionalSolution frac2 = solve_relaxation(inst, p);
      double bf = brute_force_opt(inst, p).cost.total;
      CHECK(frac2.value <= bf * (1 + 1e-6) + 1e-12);
      CHECK(frac2.feasible());
    }
  }
}

TEST_CASE("filter hand-executed examples") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"a", 0.0, PointRef{-1, 1.0}});
  inst.facilities.push_back({"b", 0.0, PointRef{-1, 2.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  FractionalSolution frac;
  frac.x = {{0.5, 0.5}};
  frac.y = {0.5, 0.5};
  FilterResult filt = filter(frac, inst, 0.25);
  CHECK(filt.radius[0] == doctest::Approx(1.0));
  CHECK(filt.filtered.x[0][0] == doctest::Approx(2.0));
  CHECK(filt.filtered.x[0][1] == 0.0);
  CHECK(filt.filtered.y[0] == doctest::Approx(2.0));
  CHECK(filt.filtered.feasible());
}

TEST_CASE("filter with mass concentrated on one facility") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"a", 0.0, PointRef{-1, 1.5}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  FractionalSolution frac;
  frac.x = {{1.0}};
  frac.y = {1.0};
  FilterResult filt = filter(frac, inst, 0.25);
  CHECK(filt.radius[0] == doctest::Approx(1.5));
  CHECK(filt.filtered.x[0][0] == doctest::Approx(4.0));
}

TEST_CASE("filter cumulative-mass quantile") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"a", 0.0, PointRef{-1, 1.0}});
  inst.facilities.push_back({"b", 0.0, PointRef{-1, 2.0}});
  inst.facilities.push_back({"c", 0.0, PointRef{-1, 3.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  FractionalSolution frac;
  frac.x = {{0.2, 0.2, 0.6}};
  frac.y = {0.2, 0.2, 0.6};
  FilterResult filt = filter(frac, inst, 0.25);
  // Cumulative mass 0.2, then 0.4 >= 1/4 at the second facility.
  CHECK(filt.radius[0] == doctest::Approx(2.0));
  CHECK(filt.filtered.x[0][0] == doctest::Approx(0.8));
  CHECK(filt.filtered.x[0][1] == doctest::Approx(0.8));
  CHECK(filt.filtered.x[0][2] == 0.0);
  CHECK(filt.filtered.feasible());
}

TEST_CASE("filter rejects infeasible input") {
  Instance inst = single_client(1.0, 0.0, 1.0, 1.0);
  FractionalSolution bad;
  bad.x = {{0.2, 0.2}};  // row mass below 1
  bad.y = {1.0, 1.0};
  CHECK_THROWS_AS(filter(bad, inst, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(filter(bad, inst, 0.0), std::invalid_argument);
}

TEST_CASE("rounding opens the cheapest neighborhood facility") {
  Instance inst = single_client(5.0, 1.0, 1.0, -1.0);
  FractionalSolution frac;
  frac.x = {{0.5, 0.5}};
  frac.y = {0.5, 0.5};
  FilterResult filt = filter(frac, inst, 0.25);
  Solution sol = round_filtered(filt, inst);
  REQUIRE(sol.open.size() == 1);
  CHECK(inst.facilities[sol.open[0]].id == "b");  // cost 1 beats cost 5
}

TEST_CASE("rounding clusters clients sharing a facility") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"a", 1.0, PointRef{-1, 0.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, -0.5}});
  inst.clients.push_back({"c1", 0, PointRef{-1, 0.5}});
  FractionalSolution frac;
  frac.x = {{1.0}, {1.0}};
  frac.y = {1.0};
  FilterResult filt = filter(frac, inst, 0.25);
  Solution sol = round_filtered(filt, inst);
  CHECK(sol.open == std::vector<int>{0});
  CHECK(sol.assign[0] == 0);
  CHECK(sol.assign[1] == 0);
}

TEST_CASE("approx_solve simple cases") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"f", 2.0, PointRef{-1, 1.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  ApproxResult res = approx_solve(inst, NormParam::one());
  CHECK(res.solution.open == std::vector<int>{0});
  CHECK(res.cost.total == doctest::Approx(3.0));
  CHECK(res.cost.total <= 4 * res.relaxation_value * (1 + 1e-9));
}

TEST_CASE("approx_solve is a 4-approximation end to end") {
  Instance star = gen_star_lower_bound(4, 2);
  ApproxResult rs = approx_solve(star, NormParam::from_p(2));
  CHECK(rs.cost.total <= 48.0 * (1 + 1e-6));  // 4 x OPT_2 = 48

  double worst = 0.0;
  for (int seed = 0; seed < 40; ++seed) {
    RandomInstanceParams params;
    params.n_facilities = 2 + seed % 5;
    params.n_clients = 3 + seed % 6;
    params.r = 1 + seed % 4;
    params.variant = static_cast<MetricVariant>(seed % 4);
    Instance inst = gen_random(params, 3100 + seed);
    for (double pv : {1.0, 2.0, 0.0}) {
      NormParam p = pv == 0.0 ? NormParam::infinity() : NormParam::from_p(pv);
      ApproxResult res = approx_solve(inst, p);
      double bf = brute_force_opt(inst, p).cost.total;
      CHECK(res.cost.total <= 4 * res.relaxation_value * (1 + 1e-6) + 1e-12);
      CHECK(res.cost.total <= 4 * bf * (1 + 1e-6) + 1e-12);
      if (bf > 0) worst = std::max(worst, res.cost.total / bf);
    }
  }
  CHECK(worst <= 4.0 + 1e-6);
}

TEST_CASE("brute force on the star instance") {
  Instance star = gen_star_lower_bound(4, 2);
  BruteForceResult p2 = brute_force_opt(star, NormParam::from_p(2));
  CHECK(p2.solution.open == std::vector<int>{0});
  CHECK(p2.cost.total == doctest::Approx(12.0));
  // p=1 costs: {f1}: 4 + 2*16 = 36, {f2}: 16 + 16 = 32, both: 36.
  BruteForceResult p1 = brute_force_opt(star, NormParam::one());
  CHECK(p1.solution.open == std::vector<int>{1});
  CHECK(p1.cost.total == doctest::Approx(32.0));
}

TEST_CASE("brute force basics and cap") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"f", 0.0, PointRef{-1, 0.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 1.0}});
  inst.clients.push_back({"c1", 1, PointRef{-1, 2.0}});
  BruteForceResult res = brute_force_opt(inst, NormParam::from_p(2));
  CHECK(res.cost.total == doctest::Approx(std::hypot(1.0, 2.0)));
  CHECK_THROWS_AS(brute_force_opt(inst, NormParam::one(), Model::kStandard, 0), ResourceError);
}

TEST_CASE("brute-force cap follows the environment override") {
  CHECK(default_bf_cap() == 20);
  setenv("FAIRPLACE_BF_CAP", "3", 1);
  CHECK(default_bf_cap() == 3);
  unsetenv("FAIRPLACE_BF_CAP");
  CHECK(default_bf_cap() == 20);
}

TEST_CASE("brute force breaks ties toward the lexicographically smaller open set") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"b", 1.0, PointRef{-1, 0.0}});
  inst.facilities.push_back({"a", 1.0, PointRef{-1, 0.0}});  // identical twin
  inst.clients.push_back({"c0", 0, PointRef{-1, 1.0}});
  BruteForceResult res = brute_force_opt(inst, NormParam::one());
  REQUIRE(res.solution.open.size() == 1);
  CHECK(inst.facilities[res.solution.open[0]].id == "a");
}

TEST_SUITE_END();
