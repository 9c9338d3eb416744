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

#include <cmath>

#include "fairplace/brute_force.hpp"
#include "fairplace/generators.hpp"
#include "fairplace/objective.hpp"

using namespace fairplace;

TEST_SUITE_BEGIN("objective");

namespace {

// Exhaustive assignment enumeration: the independent check that nearest
// assignment is optimal for a fixed open set.
double best_assignment_cost_by_enumeration(const Instance& inst,
                                           const std::vector<int>& open, NormParam p,
                                           Model model) {
  int m = inst.num_clients();
  int choices = static_cast<int>(open.size());
  std::vector<int> pick(m, 0);
  double best = kInf;
  while (true) {
    Solution sol;
    sol.open = open;
    for (int j = 0; j < m; ++j) sol.assign.push_back(open[pick[j]]);
    best = std::min(best, total_cost(inst, sol, p, model).total);
    int j = 0;
    while (j < m && ++pick[j] == choices) pick[j++] = 0;
    if (j == m) break;
  }
  return best;
}

}  // namespace

TEST_CASE("pnorm basics") {
  CHECK(pnorm({3.0, 4.0}, NormParam::from_p(2)) == doctest::Approx(5.0));
  CHECK(pnorm({1.0, 2.0, 3.0}, NormParam::infinity()) == 3.0);
  CHECK(pnorm({2.0, 2.0}, NormParam::one()) == 4.0);
  std::vector<double> ones(7, 1.0);
  for (double p : {1.0, 2.0, 3.5, 10.0})
    CHECK(pnorm(ones, NormParam::from_p(p)) == doctest::Approx(std::pow(7.0, 1.0 / p)));
  CHECK(pnorm({}, NormParam::one()) == 0.0);
  CHECK(pnorm({0.0, 0.0}, NormParam::from_p(3)) == 0.0);
}

TEST_CASE("pnorm huge finite p falls back to the max entry") {
  // Relative error of the shortcut is below r^{1/p} - 1 ~ 1e-6 ln r.
  std::vector<double> v = {1.0, 5.0, 2.0};
  double approx = pnorm(v, NormParam::from_p(2e6));
  CHECK(approx == 5.0);
  CHECK(std::abs(approx - 5.0 * std::pow(3.0, 0.5e-6)) / 5.0 < 2e-6);
}

TEST_CASE("pnorm homogeneity") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + rng.next_below(6));
    for (auto& x : v) x = rng.next_in(0.0, 9.0);
    double c = rng.next_in(0.0, 4.0);
    NormParam p(rng.next_double());
    std::vector<double> cv = v;
    for (auto& x : cv) x *= c;
    CHECK(pnorm(cv, p) == doctest::Approx(c * pnorm(v, p)).epsilon(1e-9));
  }
}

TEST_CASE("norm comparison inequalities") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + static_cast<int>(rng.next_below(8));
    std::vector<double> v(r);
    for (auto& x : v) x = rng.next_in(0.0, 10.0);
    double ip = rng.next_double(), iq = rng.next_double();
    NormParam p(std::max(ip, iq)), q(std::min(ip, iq));  // p <= q
    double np = pnorm(v, p), nq = pnorm(v, q);
    CHECK(nq <= np * (1 + 1e-9) + 1e-12);
    CHECK(np <= cross_norm_factor(r, p, q) * nq * (1 + 1e-9) + 1e-12);
  }
}

TEST_CASE("cross_norm_factor values") {
  CHECK(cross_norm_factor(16, NormParam::one(), NormParam::infinity()) == 16.0);
  CHECK(cross_norm_factor(9, NormParam::from_p(2), NormParam::from_p(2)) == 1.0);
  CHECK(cross_norm_factor(4, NormParam::one(), NormParam::from_p(2)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(cross_norm_factor(4, NormParam::from_p(2), NormParam::one()),
                  std::invalid_argument);
}

TEST_CASE("group cost vector") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"f", 0.0, PointRef{-1, 0.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 1.0}});
  inst.clients.push_back({"c1", 0, PointRef{-1, 3.0}});
  inst.clients.push_back({"c2", 1, PointRef{-1, 2.0}});
  Solution sol = nearest_assignment(inst, {0});
  auto gv = group_cost_vector(inst, sol);
  REQUIRE(gv.size() == 2);
  CHECK(gv[0] == doctest::Approx(2.0));
  CHECK(gv[1] == doctest::Approx(2.0));
  auto totals = group_cost_vector(inst, sol, true);
  CHECK(totals[0] == doctest::Approx(4.0));
  CHECK(totals[1] == doctest::Approx(2.0));

  Solution zero = sol;
  for (auto& c : inst.clients) c.point.x = 0.0;
  auto gz = group_cost_vector(inst, zero);
  CHECK(gz == std::vector<double>{0.0, 0.0});
}

TEST_CASE("group cost vector rejects closed-facility assignments") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"a", 0.0, PointRef{-1, 0.0}});
  inst.facilities.push_back({"b", 0.0, PointRef{-1, 1.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  Solution sol;
  sol.open = {0};
  sol.assign = {1};
  CHECK_THROWS_AS(group_cost_vector(inst, sol), InvalidSolutionError);
}

TEST_CASE("total cost on the star instance agrees with the hand enumeration") {
  Instance inst = gen_star_lower_bound(4, 2);
  // Only three nonempty open sets exist; their p=2 costs are
  // {f1}: 4 + sqrt(16)*2 = 12, {f2}: 16 + 4 = 20, {f1,f2}: 20 + 4 = 24.
  Solution f1 = nearest_assignment(inst, {0});
  Solution f2 = nearest_assignment(inst, {1});
  Solution both = nearest_assignment(inst, {0, 1});
  NormParam p2 = NormParam::from_p(2);
  CHECK(total_cost(inst, f1, p2).total == doctest::Approx(12.0));
  CHECK(total_cost(inst, f2, p2).total == doctest::Approx(20.0));
  CHECK(total_cost(inst, both, p2).total == doctest::Approx(24.0));
  // And the oracle agrees that 12 is optimal.
  CHECK(brute_force_opt(inst, p2).cost.total == doctest::Approx(12.0));
}

TEST_CASE("classic facility location as the p=1 singleton-group case") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"f", 0.0, PointRef{-1, 0.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 1.0}});
  inst.clients.push_back({"c1", 1, PointRef{-1, 2.5}});
  Solution sol = nearest_assignment(inst, {0});
  CHECK(total_cost(inst, sol, NormParam::one()).total == doctest::Approx(3.5));
}

TEST_CASE("nearest assignment rules") {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"b", 0.0, PointRef{-1, 0.0}});
  inst.facilities.push_back({"a", 0.0, PointRef{-1, 2.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 1.0}});  // equidistant
  Solution sol = nearest_assignment(inst, {0, 1});
  CHECK(inst.facilities[sol.assign[0]].id == "a");  // smallest id wins

  Instance line;
  line.metric = make_line_metric();
  line.facilities.push_back({"f0", 0.0, PointRef{-1, 0.0}});
  line.facilities.push_back({"f3", 0.0, PointRef{-1, 3.0}});
  line.clients.push_back({"c0", 0, PointRef{-1, 0.0}});
  line.clients.push_back({"c1", 0, PointRef{-1, 2.0}});
  Solution s2 = nearest_assignment(line, {0, 1});
  CHECK(s2.assign[0] == 0);
  CHECK(s2.assign[1] == 1);
  CHECK_THROWS_AS(nearest_assignment(line, {}), std::invalid_argument);
}

TEST_CASE("nearest assignment is optimal for a fixed open set") {
  for (int seed = 0; seed < 6; ++seed) {
    RandomInstanceParams params;
    params.n_facilities = 3;
    params.n_clients = 4;
    params.r = 1 + seed % 3;
    params.variant = static_cast<MetricVariant>(seed % 4);
    Instance inst = gen_random(params, 900 + seed);
    std::vector<int> open = {0, 1, 2};
    for (double pv : {1.0, 2.0, 0.0}) {
      NormParam p = pv == 0.0 ? NormParam::infinity() : NormParam::from_p(pv);
      for (Model model : {Model::kStandard, Model::kNormalized}) {
        Solution near = nearest_assignment(inst, open);
        double direct = total_cost(inst, near, p, model).total;
        double best = best_assignment_cost_by_enumeration(inst, open, p, model);
        CHECK(direct == doctest::Approx(best).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("brute-force optimum is monotone in p per model") {
  std::vector<NormParam> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(NormParam(1.0 - i / 8.0));
  for (int seed = 0; seed < 8; ++seed) {
    RandomInstanceParams params;
    params.n_facilities = 3 + seed % 3;
    params.n_clients = 4 + seed % 3;
    params.r = 1 + seed % 4;
    params.variant = static_cast<MetricVariant>(seed % 4);
    Instance inst = gen_random(params, 1300 + seed);
    auto std_vals = brute_force_values(inst, grid, Model::kStandard);
    auto nrm_vals = brute_force_values(inst, grid, Model::kNormalized);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      CHECK(std_vals[i + 1] <= std_vals[i] * (1 + 1e-9) + 1e-12);  // non-increasing in p
      CHECK(nrm_vals[i + 1] >= nrm_vals[i] * (1 - 1e-9) - 1e-12);  // non-decreasing in p
    }
  }
}

TEST_CASE("normalized weight and star facility-only costs") {
  Instance inst = gen_star_lower_bound(4, 2);
  // Opening only f_j costs t^j + t^{i + (k-j)/k} under p_i = k/i.
  for (int j = 1; j <= 2; ++j) {
    for (int i = 1; i <= 2; ++i) {
      NormParam p = NormParam::from_p(2.0 / i);
      Solution sol = nearest_assignment(inst, {j - 1});
      double expect = std::pow(4.0, j) + std::pow(4.0, i + (2.0 - j) / 2.0);
      CHECK(total_cost(inst, sol, p).total == doctest::Approx(expect));
    }
  }
  CHECK(model_weight(Model::kNormalized, 16, NormParam::one()) == 1.0);
  CHECK(model_weight(Model::kNormalized, 16, NormParam::infinity()) == 16.0);
  CHECK(model_weight(Model::kNormalized, 16, NormParam::from_p(2)) == doctest::Approx(4.0));
}

TEST_SUITE_END();
