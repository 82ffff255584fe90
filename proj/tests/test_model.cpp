#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace vrpvp;
using namespace vrpvp::test;

namespace {

const char* kTinyTop =
    "n 5\n"
    "m 2\n"
    "tmax 7.5\n"
    "0 0 0\n"
    "1 0 10\n"
    "2 0 20\n"
    "3 0 30\n"
    "4 4 0\n";

}  // namespace

TEST_CASE("parse_instance reads the shipped 100-site case") {
  const Instance inst = load_case1();
  CHECK(inst.n_sites() == 100);
  CHECK(inst.n_stakeholders == 4);
  CHECK(inst.max_routes == 5);
  CHECK(inst.resources.route_budget == std::vector<double>{10.0});
  CHECK(inst.resources.mission_budget == std::vector<double>{45.0});
  CHECK(inst.resources.on_arc_route == std::vector<double>{0.125});
  CHECK(inst.metric.kind == MetricKind::Euclidean);
  CHECK(inst.depot_x == 35.0);
  CHECK(inst.site(55).x == 26.0);
  CHECK(inst.site(1).stay_hours == doctest::Approx(1.4));
}

TEST_CASE("parse_instance round-trips a minimal document") {
  const std::string doc = R"({
    "name": "one", "n_stakeholders": 1, "max_routes": 1,
    "depot": {"x": 0, "y": 0}, "metric": "euclidean",
    "route_budget": [5], "mission_budget": [],
    "coef": {"c_d": [1], "c_r": [1], "d_d": [], "d_r": []},
    "sites": [{"id": 1, "x": 1, "y": 0, "stay_hours": 0.5, "profits": [7]}]
  })";
  const Instance a = parse_instance(doc);
  CHECK(a.n_sites() == 1);
  CHECK(a.site(1).profits == std::vector<double>{7.0});
  const Instance b = parse_instance(serialize_instance(a));
  CHECK(b.name == a.name);
  CHECK(b.n_stakeholders == a.n_stakeholders);
  CHECK(b.max_routes == a.max_routes);
  CHECK(b.depot_x == a.depot_x);
  CHECK(b.depot_y == a.depot_y);
  CHECK(b.resources.route_budget == a.resources.route_budget);
  CHECK(b.sites.size() == a.sites.size());
  CHECK(b.site(1).x == a.site(1).x);
  CHECK(b.site(1).stay_hours == a.site(1).stay_hours);
  CHECK(b.site(1).profits == a.site(1).profits);
}

TEST_CASE("parse_instance rejects bad documents") {
  CHECK_THROWS_AS(parse_instance("not json at all"), ParseError);
  // profit row shorter than n_stakeholders
  const std::string mismatch = R"({
    "name": "x", "n_stakeholders": 4, "max_routes": 1,
    "depot": {"x": 0, "y": 0}, "metric": "euclidean",
    "route_budget": [5], "mission_budget": [],
    "coef": {"c_d": [1], "c_r": [1], "d_d": [], "d_r": []},
    "sites": [{"id": 1, "x": 1, "y": 0, "stay_hours": 0, "profits": [1, 2, 3]}]
  })";
  CHECK_THROWS_AS(parse_instance(mismatch), ParseError);
  const std::string negative_stay = R"({
    "name": "x", "n_stakeholders": 1, "max_routes": 1,
    "depot": {"x": 0, "y": 0}, "metric": "euclidean",
    "route_budget": [5], "mission_budget": [],
    "coef": {"c_d": [1], "c_r": [1], "d_d": [], "d_r": []},
    "sites": [{"id": 1, "x": 1, "y": 0, "stay_hours": -1, "profits": [1]}]
  })";
  CHECK_THROWS_AS(parse_instance(negative_stay), ParseError);
}

TEST_CASE("validate reports violations by field") {
  CHECK(validate(load_case1()).empty());

  std::mt19937_64 rng(7);
  Instance inst = random_instance(rng, 5, 2, 2, false);
  inst.sites[4].stay_hours = -1.0;
  auto v = validate(inst);
  REQUIRE(v.size() == 1);
  CHECK(v.front().find("site 5") != std::string::npos);
  CHECK(v.front().find("stay_time") != std::string::npos);

  inst.sites[4].stay_hours = 0.0;
  inst.max_routes = 0;
  v = validate(inst);
  REQUIRE(v.size() == 1);
  CHECK(v.front().find("max_routes") != std::string::npos);
}

TEST_CASE("convert_chao layout and determinism") {
  const Instance inst = convert_chao(kTinyTop, 3, 42);
  CHECK(inst.n_sites() == 3);  // start and end nodes removed
  CHECK(inst.max_routes == 2);
  CHECK(inst.resources.route_budget == std::vector<double>{7.5});
  CHECK(inst.resources.mission_budget.empty());
  CHECK(inst.resources.on_arc_route == std::vector<double>{1.0});
  CHECK(inst.resources.on_site_route == std::vector<double>{0.0});
  CHECK(inst.depot_x == 0.0);
  CHECK(inst.depot_y == 0.0);
  for (const Site& s : inst.sites) CHECK(s.stay_hours == 0.0);

  const Instance again = convert_chao(kTinyTop, 3, 42);
  for (int i = 1; i <= 3; ++i) CHECK(inst.site(i).profits == again.site(i).profits);
}

TEST_CASE("convert_chao equal per-stakeholder totals for every seed") {
  for (std::uint64_t seed : {0ull, 1ull, 7ull, 123456789ull}) {
    const Instance inst = convert_chao(kTinyTop, 4, seed);
    std::vector<double> totals(4, 0.0);
    for (const Site& s : inst.sites)
      for (int k = 0; k < 4; ++k) totals[static_cast<std::size_t>(k)] += s.profits[static_cast<std::size_t>(k)];
    for (int k = 1; k < 4; ++k) CHECK(totals[static_cast<std::size_t>(k)] == totals[0]);
    // stakeholder 1 always keeps the original score column
    CHECK(inst.site(1).profits[0] == 10.0);
    CHECK(inst.site(2).profits[0] == 20.0);
    CHECK(inst.site(3).profits[0] == 30.0);
    // seeds permute profits only, never geometry or budgets
    CHECK(inst.site(2).x == 2.0);
    CHECK(inst.resources.route_budget == std::vector<double>{7.5});
  }
}

TEST_CASE("convert_chao sizes match the benchmark family naming") {
  // 21-node document: 19 middle sites, 4 routes
  std::string doc = "n 21\nm 4\ntmax 10\n";
  for (int i = 0; i < 21; ++i) doc += std::to_string(i) + " 0 " + std::to_string(i % 5) + "\n";
  const Instance inst = convert_chao(doc, 2, 9);
  CHECK(inst.n_sites() == 19);
  CHECK(inst.max_routes == 4);
}

TEST_CASE("convert_chao input validation") {
  CHECK_THROWS_AS(convert_chao(kTinyTop, 1, 0), ParseError);
  CHECK_THROWS_AS(convert_chao("garbage", 2, 0), ParseError);
}

TEST_CASE("maxmin_value") {
  CHECK(maxmin_value({13, 14, 12}) == 12.0);
  CHECK(maxmin_value({5}) == 5.0);
  CHECK(maxmin_value({318, 318, 324, 321}) == 318.0);
  CHECK_THROWS_AS(maxmin_value({}), std::invalid_argument);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> sums(1 + rng() % 6);
    for (double& s : sums) s = val(rng);
    const double v = maxmin_value(sums);
    for (double s : sums) CHECK(v <= s);
    std::shuffle(sums.begin(), sums.end(), rng);
    CHECK(maxmin_value(sums) == v);
  }
}
