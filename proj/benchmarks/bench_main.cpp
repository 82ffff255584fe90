#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "vrpvp/colgen.hpp"
#include "vrpvp/cost_matrix.hpp"
#include "vrpvp/lp.hpp"
#include "vrpvp/routing.hpp"

namespace {

using namespace vrpvp;

Instance planar_instance(int n_sites, int n_stake, int n_routes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_int_distribution<int> profit(0, 9);
  Instance inst;
  inst.name = "bench";
  inst.n_stakeholders = n_stake;
  inst.max_routes = n_routes;
  inst.depot_x = 5.0;
  inst.depot_y = 5.0;
  inst.metric.kind = MetricKind::Euclidean;
  inst.resources.route_budget = {12.0};
  inst.resources.on_arc_route = {1.0};
  inst.resources.on_site_route = {1.0};
  for (int i = 1; i <= n_sites; ++i) {
    Site s;
    s.id = i;
    s.x = coord(rng);
    s.y = coord(rng);
    s.stay_hours = 0.5;
    for (int k = 0; k < n_stake; ++k) s.profits.push_back(profit(rng));
    inst.sites.push_back(std::move(s));
  }
  return inst;
}

void BM_TspExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = planar_instance(n, 2, 1, 7);
  const CostMatrix m = euclidean_matrix(inst);
  SiteSet set;
  for (int id = 1; id <= n; ++id) set.add(id);
  for (auto _ : state) {
    const Tour t = tsp_exact(set, m);
    benchmark::DoNotOptimize(t.cost);
  }
}
BENCHMARK(BM_TspExact)->Arg(8)->Arg(12)->Arg(16);

void BM_SolveLpMaster(benchmark::State& state) {
  const Instance inst = planar_instance(static_cast<int>(state.range(0)), 3, 3, 11);
  const CostMatrix m = euclidean_matrix(inst);
  TspCache cache;
  const ColumnPool pool = init_columns(inst, m, &cache);
  const LpProblem master = build_master(pool, inst);
  for (auto _ : state) {
    const LpSolution s = solve_lp(master);
    benchmark::DoNotOptimize(s.objective);
  }
}
BENCHMARK(BM_SolveLpMaster)->Arg(20)->Arg(50)->Arg(100);

void BM_Relaxation(benchmark::State& state) {
  const Instance inst = planar_instance(static_cast<int>(state.range(0)), 3, 2, 13);
  const CostMatrix m = euclidean_matrix(inst);
  for (auto _ : state) {
    const RelaxationResult r = solve_relaxation(inst, m);
    benchmark::DoNotOptimize(r.z_lp);
  }
}
BENCHMARK(BM_Relaxation)->Arg(10)->Arg(15)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
