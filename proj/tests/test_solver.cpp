#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vrpvp/bench_harness.hpp"
#include "vrpvp/solver.hpp"
#include "vrpvp/svg.hpp"

using namespace vrpvp;
using namespace vrpvp::test;

TEST_CASE("optimality_gap on min-form objectives") {
  CHECK(optimality_gap(-325.59, -318.0).percent == doctest::Approx(2.3312).epsilon(1e-3));
  const GapResult rome = optimality_gap(-38.25, -38.0);
  CHECK(rome.relative);
  CHECK(rome.percent >= 0.65);
  CHECK(rome.percent <= 0.66);
  CHECK(optimality_gap(-7.0, -7.0).percent == 0.0);

  const GapResult zero_equal = optimality_gap(0.0, 0.0);
  CHECK(zero_equal.relative);
  CHECK(zero_equal.percent == 0.0);
  const GapResult zero_diff = optimality_gap(0.0, -1.0);
  CHECK_FALSE(zero_diff.relative);  // relative gap undefined, absolute reported
}

TEST_CASE("solve_vrpvp on small instances is self-consistent") {
  std::mt19937_64 rng(91);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(rng, 6, 3, 2, trial % 2 == 0);
    const CostMatrix m = euclidean_matrix(inst);
    SolveReport rep;
    try {
      rep = solve_vrpvp(inst, m);
    } catch (const std::exception&) {
      continue;
    }
    CHECK(rep.gap.percent >= -1e-9);
    CHECK(rep.z_mip <= rep.z_lp + 1e-6);
    CHECK(rep.z_mip == doctest::Approx(maxmin_value(rep.stakeholder_sums)).epsilon(1e-9));

    // every reported number recomputable from the instance and the tours
    std::vector<double> sums(static_cast<std::size_t>(inst.n_stakeholders), 0.0);
    for (const RouteReport& r : rep.routes)
      for (int id : r.tour)
        if (id != 0)
          for (int k = 0; k < inst.n_stakeholders; ++k)
            sums[static_cast<std::size_t>(k)] += inst.site(id).profits[static_cast<std::size_t>(k)];
    for (int k = 0; k < inst.n_stakeholders; ++k)
      CHECK(sums[static_cast<std::size_t>(k)] ==
            doctest::Approx(rep.stakeholder_sums[static_cast<std::size_t>(k)]).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked >= 6);
}

TEST_CASE("report JSON round-trips") {
  std::mt19937_64 rng(92);
  const Instance inst = random_instance(rng, 6, 2, 2, true);
  const CostMatrix m = euclidean_matrix(inst);
  const SolveReport rep = solve_vrpvp(inst, m);
  const SolveReport back = report_from_json(report_to_json(rep));
  CHECK(back.instance_name == rep.instance_name);
  CHECK(back.objective == rep.objective);
  CHECK(back.z_lp == rep.z_lp);
  CHECK(back.z_mip == rep.z_mip);
  CHECK(back.gap.percent == rep.gap.percent);
  CHECK(back.stakeholder_sums == rep.stakeholder_sums);
  CHECK(back.mission_usage == rep.mission_usage);
  REQUIRE(back.routes.size() == rep.routes.size());
  for (std::size_t r = 0; r < rep.routes.size(); ++r) {
    CHECK(back.routes[r].tour == rep.routes[r].tour);
    CHECK(back.routes[r].profits == rep.routes[r].profits);
  }
  CHECK(back.iterations == rep.iterations);
  CHECK(back.generated_columns == rep.generated_columns);
  CHECK(back.bb_nodes == rep.bb_nodes);
  CHECK(report_to_text(rep).find("depot") != std::string::npos);
}

TEST_CASE("compare_modes: the balanced objective protects the worst stakeholder") {
  std::mt19937_64 rng(93);
  const Instance inst = random_instance(rng, 6, 3, 2, false);
  const CostMatrix m = euclidean_matrix(inst);
  const auto rows = compare_modes(inst, m);
  REQUIRE(rows.size() == 5);  // maxmin, 3 single-stakeholder rows, sum
  CHECK(rows.front().label == "maxmin");
  for (std::size_t r = 1; r < rows.size(); ++r)
    CHECK(rows.front().minimum >= rows[r].minimum - 1e-9);

  Instance solo = random_instance(rng, 5, 1, 2, false);
  const auto solo_rows = compare_modes(solo, euclidean_matrix(solo));
  REQUIRE(solo_rows.size() == 3);
  for (const auto& row : solo_rows) {
    CHECK(row.minimum == doctest::Approx(solo_rows.front().minimum));
    CHECK(row.total == doctest::Approx(solo_rows.front().total));
  }
}

TEST_CASE("stakeholder and weighted-sum modes validate their arguments") {
  std::mt19937_64 rng(94);
  const Instance inst = random_instance(rng, 4, 2, 1, false);
  const CostMatrix m = euclidean_matrix(inst);
  SolveOptions options;
  options.mode = ObjectiveMode::Stakeholder;
  options.stakeholder = 3;  // out of range for 2 stakeholders
  CHECK_THROWS_AS(solve_vrpvp(inst, m, options), std::invalid_argument);
  options.mode = ObjectiveMode::WeightedSum;
  options.weights = {1.0};  // wrong length
  CHECK_THROWS_AS(solve_vrpvp(inst, m, options), std::invalid_argument);
  options.weights = {0.0, 0.0};
  CHECK_THROWS_AS(solve_vrpvp(inst, m, options), std::invalid_argument);
}

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("render_svg marker counts and determinism") {
  const Instance inst = load_case1();
  const CostMatrix m = euclidean_matrix(inst);
  const SolveReport rep = solve_vrpvp(inst, m);
  REQUIRE(rep.routes.size() == 5);
  const std::string svg = render_svg(inst, rep);
  CHECK(count_occurrences(svg, "<polyline") == 5);
  CHECK(count_occurrences(svg, "<circle") == 100);
  CHECK(count_occurrences(svg, "fill=\"black\"") == 1);  // the depot square
  CHECK(svg == render_svg(inst, rep));

  SolveReport nothing;
  CHECK(count_occurrences(render_svg(inst, nothing), "<polyline") == 0);
}

TEST_CASE("render_svg anchors route polylines at the depot") {
  std::mt19937_64 rng(95);
  Instance inst = random_instance(rng, 3, 1, 1, false);
  const CostMatrix m = euclidean_matrix(inst);
  const SolveReport rep = solve_vrpvp(inst, m);
  REQUIRE(rep.routes.size() == 1);
  REQUIRE(rep.routes.front().tour.front() == 0);
  REQUIRE(rep.routes.front().tour.back() == 0);
  const std::string svg = render_svg(inst, rep);
  const std::size_t start = svg.find("points=\"");
  REQUIRE(start != std::string::npos);
  const std::string points =
      svg.substr(start + 8, svg.find('"', start + 8) - start - 8);
  const std::string first = points.substr(0, points.find(' '));
  const std::string last = points.substr(points.rfind(' ') + 1);
  CHECK(first == last);
}

TEST_CASE("benchmark CSV carries the exact column set") {
  BenchmarkRow row;
  row.name = "toy";
  row.n_sites = 5;
  row.n_routes = 2;
  row.budget = 7.5;
  row.z_lp = 3.5;
  row.z_mip = 3.0;
  row.gap_pct = 14.29;
  row.time_s = 0.01;
  row.columns = 12;
  const std::string csv = benchmark_to_csv({row});
  CHECK(csv.rfind("name,n_sites,n_routes,budget,z_lp,z_mip,gap_pct,time_s,columns\n", 0) == 0);
  CHECK(csv.find("toy,5,2,7.5,3.5,3,14.29,0.01,12") != std::string::npos);
}
