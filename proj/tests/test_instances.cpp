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

#include "fairplace/generators.hpp"
#include "fairplace/instance.hpp"
#include "fairplace/io.hpp"

using namespace fairplace;

TEST_SUITE_BEGIN("instances");

namespace {

Instance two_facility_line() {
  Instance inst;
  inst.metric = make_line_metric();
  inst.facilities.push_back({"a", 1.0, PointRef{-1, 0.0}});
  inst.facilities.push_back({"b", 2.0, PointRef{-1, 3.0}});
  inst.clients.push_back({"c0", 0, PointRef{-1, 0.5}});
  inst.clients.push_back({"c1", 1, PointRef{-1, 2.5}});
  return inst;
}

}  // namespace

TEST_CASE("distance per metric variant") {
  MetricSpace line = make_line_metric();
  CHECK(distance(line, PointRef{-1, 0.0}, PointRef{-1, 1.0}) == 1.0);
  CHECK(distance(line, PointRef{-1, 2.5}, PointRef{-1, 2.5}) == 0.0);

  MetricSpace tree = make_tree_metric(3, {{0, 1, 2.0}, {1, 2, 3.0}});
  CHECK(distance(tree, PointRef{0}, PointRef{2}) == 5.0);
  CHECK(distance(tree, PointRef{1}, PointRef{1}) == 0.0);
  CHECK_THROWS_AS(distance(tree, PointRef{0}, PointRef{7}), std::invalid_argument);

  MetricSpace expl = make_explicit_metric({{0.0, 2.0}, {2.0, 0.0}});
  CHECK(distance(expl, PointRef{0}, PointRef{1}) == 2.0);
  CHECK_THROWS_AS(distance(expl, PointRef{0}, PointRef{5}), std::invalid_argument);

  MetricSpace plane = make_plane_metric();
  CHECK(distance(plane, PointRef{-1, 0.0, 0.0}, PointRef{-1, 3.0, 4.0}) == doctest::Approx(5.0));
}

TEST_CASE("validate_instance accepts a valid instance") {
  CHECK(validate_instance(two_facility_line()).ok());
}

TEST_CASE("validate_instance flags a triangle violation") {
  Instance inst;
  inst.metric = make_explicit_metric({{0, 1, 9}, {1, 0, 1}, {9, 1, 0}});
  inst.facilities.push_back({"f", 0.0, PointRef{0}});
  inst.clients.push_back({"c", 0, PointRef{2}});
  Report rep = validate_instance(inst);
  bool found = false;
  for (const auto& v : rep.violations) found |= v.check == "triangle-inequality";
  CHECK(found);
}

TEST_CASE("validate_instance flags a broken group partition") {
  Instance inst = two_facility_line();
  inst.clients[1].group = 3;  // groups 0 and 3 present, 1 and 2 empty
  Report rep = validate_instance(inst);
  bool found = false;
  for (const auto& v : rep.violations) found |= v.check == "group-partition";
  CHECK(found);
}

TEST_CASE("star lower-bound instance, t=4 k=2") {
  Instance inst = gen_star_lower_bound(4, 2);
  CHECK(inst.num_clients() == 16);
  CHECK(inst.num_groups() == 16);
  REQUIRE(inst.num_facilities() == 2);
  CHECK(inst.facilities[0].cost == 4.0);
  CHECK(inst.facilities[1].cost == 16.0);
  CHECK(inst.client_facility_dist(0, 0) == doctest::Approx(2.0));
  CHECK(inst.client_facility_dist(0, 1) == doctest::Approx(1.0));
  CHECK(validate_instance(inst).ok());
}

TEST_CASE("star lower-bound instance, smallest case t=2 k=1") {
  Instance inst = gen_star_lower_bound(2, 1);
  CHECK(inst.num_clients() == 2);
  REQUIRE(inst.num_facilities() == 1);
  CHECK(inst.facilities[0].cost == 2.0);
  CHECK(inst.client_facility_dist(0, 0) == doctest::Approx(1.0));  // t^{0 * 1} = 1
}

TEST_CASE("star lower-bound instance, t=3 k=3") {
  Instance inst = gen_star_lower_bound(3, 3);
  CHECK(inst.num_clients() == 27);
  REQUIRE(inst.num_facilities() == 3);
  CHECK(inst.facilities[0].cost == 3.0);
  CHECK(inst.facilities[1].cost == 9.0);
  CHECK(inst.facilities[2].cost == 27.0);
  CHECK(inst.client_facility_dist(0, 0) == doctest::Approx(std::pow(3.0, 2.0 / 3.0)));
  CHECK(inst.client_facility_dist(0, 1) == doctest::Approx(std::pow(3.0, 1.0 / 3.0)));
  CHECK(inst.client_facility_dist(0, 2) == doctest::Approx(1.0));
}

TEST_CASE("star lower-bound range check") {
  CHECK_THROWS_AS(gen_star_lower_bound(2, 62), std::range_error);
}

TEST_CASE("adversarial line instance layout, l=2") {
  AdversarialInstance adv = gen_greedy_adversarial(2, 0.1);
  const Instance& inst = adv.instance;
  REQUIRE(inst.num_facilities() == 4);
  CHECK(inst.facilities[0].point.x == doctest::Approx(-1.1));
  CHECK(inst.facilities[1].point.x == 0.0);
  CHECK(inst.facilities[2].point.x == 1.0);
  CHECK(inst.facilities[3].point.x == 3.0);
  REQUIRE(adv.chain.size() == 2);
  CHECK(adv.chain[0] == std::vector<std::string>{"fm", "f1", "f2"});
  CHECK(adv.chain[1] == std::vector<std::string>{"fm", "f2"});
  CHECK(validate_instance(inst).ok());
}

TEST_CASE("adversarial line instance layout, l=1") {
  AdversarialInstance adv = gen_greedy_adversarial(1, 0.5);
  REQUIRE(adv.instance.num_facilities() == 3);
  CHECK(adv.instance.facilities[0].point.x == doctest::Approx(-1.5));
  CHECK(adv.chain == std::vector<std::vector<std::string>>{{"fm", "f1"}});
}

TEST_CASE("random generator is deterministic and valid") {
  RandomInstanceParams params;
  params.n_facilities = 5;
  params.n_clients = 8;
  params.r = 3;
  params.variant = MetricVariant::kLine;
  Instance a = gen_random(params, 1);
  Instance b = gen_random(params, 1);
  CHECK(dump_json(instance_to_json(a)) == dump_json(instance_to_json(b)));
  CHECK(validate_instance(a).ok());
  Instance c = gen_random(params, 2);
  CHECK(dump_json(instance_to_json(a)) != dump_json(instance_to_json(c)));
}

TEST_CASE("random generator rejects bad parameters") {
  RandomInstanceParams params;
  params.n_clients = 2;
  params.r = 3;
  CHECK_THROWS_AS(gen_random(params, 1), std::invalid_argument);
  params.n_clients = 0;
  params.r = 0;
  CHECK_THROWS_AS(gen_random(params, 1), std::invalid_argument);
}

TEST_CASE("generated instances always validate") {
  for (int seed = 0; seed < 20; ++seed) {
    RandomInstanceParams params;
    params.n_facilities = 1 + seed % 6;
    params.n_clients = 1 + seed % 9;
    params.r = 1 + seed % std::max(1, params.n_clients);
    params.variant = static_cast<MetricVariant>(seed % 4);
    CHECK(validate_instance(gen_random(params, 100 + seed)).ok());
  }
  CHECK(validate_instance(gen_star_lower_bound(3, 2)).ok());
  CHECK(validate_instance(gen_greedy_adversarial(4, 0.01).instance).ok());
}

TEST_CASE("metric symmetry and triangle inequality on random triples") {
  for (int seed = 0; seed < 8; ++seed) {
    RandomInstanceParams params;
    params.n_facilities = 4;
    params.n_clients = 6;
    params.r = 2;
    params.variant = static_cast<MetricVariant>(seed % 4);
    Instance inst = gen_random(params, 500 + seed);
    std::vector<PointRef> pts;
    for (const auto& f : inst.facilities) pts.push_back(f.point);
    for (const auto& c : inst.clients) pts.push_back(c.point);
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 100; ++trial) {
      const PointRef& u = pts[rng.next_below(pts.size())];
      const PointRef& v = pts[rng.next_below(pts.size())];
      const PointRef& w = pts[rng.next_below(pts.size())];
      double duv = inst.dist(u, v);
      CHECK(duv == doctest::Approx(inst.dist(v, u)).epsilon(1e-9));
      CHECK(duv <= inst.dist(u, w) + inst.dist(w, v) + 1e-9);
      CHECK(inst.dist(u, u) == 0.0);
    }
  }
}

TEST_SUITE_END();
