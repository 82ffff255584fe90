#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vrpvp/colgen.hpp"
#include "vrpvp/cost_matrix.hpp"
#include "vrpvp/model.hpp"
#include "vrpvp/routing.hpp"

namespace vrpvp::test {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(VRPVP_DATA_DIR) + "/" + name;
}

inline Instance load_case1() { return parse_instance(slurp(data_path("planetary.json"))); }
inline Instance load_case2() { return parse_instance(slurp(data_path("rome_tour.json"))); }

/// Permutation brute force, written independently of the production solver.
inline double brute_tsp(const std::vector<int>& ids, const CostMatrix& m) {
  if (ids.empty()) return 0.0;
  std::vector<int> perm = ids;
  std::sort(perm.begin(), perm.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = m.at(0, perm.front());
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) c += m.at(perm[i], perm[i + 1]);
    c += m.at(perm.back(), 0);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// A brute-force route candidate: subset, exact tour cost, aggregates.
struct OracleRoute {
  std::uint32_t mask = 0;  // bit i-1 = site i
  std::vector<int> ids;
  double tsp = 0.0;
  double stay = 0.0;
  std::vector<double> profits;
  std::vector<double> consumption;
};

/// Every route-feasible nonempty subset, via permutation TSP. n_sites <= 16.
inline std::vector<OracleRoute> enumerate_feasible_routes(const Instance& inst,
                                                          const CostMatrix& m) {
  const int n = inst.n_sites();
  if (n > 16) throw std::runtime_error("enumerate_feasible_routes: instance too large");
  std::vector<OracleRoute> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    OracleRoute r;
    r.mask = mask;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) r.ids.push_back(i + 1);
    if (r.ids.size() > 9) continue;  // keep permutation enumeration tractable
    r.tsp = brute_tsp(r.ids, m);
    r.stay = 0.0;
    r.profits.assign(static_cast<std::size_t>(inst.n_stakeholders), 0.0);
    for (int id : r.ids) {
      r.stay += inst.site(id).stay_hours;
      for (int k = 0; k < inst.n_stakeholders; ++k)
        r.profits[static_cast<std::size_t>(k)] += inst.site(id).profits[static_cast<std::size_t>(k)];
    }
    bool ok = true;
    const auto& res = inst.resources;
    for (std::size_t b = 0; b < res.route_budget.size(); ++b)
      if (r.tsp * res.on_arc_route[b] + r.stay * res.on_site_route[b] >
          res.route_budget[b] + 1e-9)
        ok = false;
    if (!ok) continue;
    r.consumption.resize(res.mission_budget.size());
    for (std::size_t b = 0; b < res.mission_budget.size(); ++b)
      r.consumption[b] = r.tsp * res.on_arc_mission[b] + r.stay * res.on_site_mission[b];
    out.push_back(std::move(r));
  }
  return out;
}

/// Exhaustive optimum over combinations of <= max_routes disjoint feasible
/// routes within the mission budget: the z* reference for the sandwich bound.
inline double exhaustive_best(const Instance& inst, const std::vector<OracleRoute>& routes) {
  const auto& res = inst.resources;
  double best = 0.0;  // empty selection is always feasible with z = 0
  std::vector<const OracleRoute*> chosen;

  auto value = [&]() {
    std::vector<double> sums(static_cast<std::size_t>(inst.n_stakeholders), 0.0);
    for (const OracleRoute* r : chosen)
      for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += r->profits[k];
    double v = sums.empty() ? 0.0 : sums[0];
    for (double s : sums) v = std::min(v, s);
    return v;
  };

  std::function<void(std::size_t, std::uint32_t, std::vector<double>)> rec =
      [&](std::size_t start, std::uint32_t used, std::vector<double> mission) {
        best = std::max(best, value());
        if (static_cast<int>(chosen.size()) == inst.max_routes) return;
        for (std::size_t j = start; j < routes.size(); ++j) {
          const OracleRoute& r = routes[j];
          if (r.mask & used) continue;
          bool ok = true;
          std::vector<double> next = mission;
          for (std::size_t b = 0; b < next.size(); ++b) {
            next[b] += r.consumption[b];
            if (next[b] > res.mission_budget[b] + 1e-9) ok = false;
          }
          if (!ok) continue;
          chosen.push_back(&r);
          rec(j + 1, used | r.mask, next);
          chosen.pop_back();
        }
      };
  rec(0, 0, std::vector<double>(res.mission_budget.size(), 0.0));
  return best;
}

/// Master LP over ALL feasible routes (oracle-built columns): the
/// full-enumeration LP bound for pricing-completeness checks.
inline LpProblem full_enumeration_master(const Instance& inst,
                                         const std::vector<OracleRoute>& routes) {
  const int n_cols = static_cast<int>(routes.size());
  const int n_sites = inst.n_sites();
  const int n_mission = static_cast<int>(inst.resources.mission_budget.size());
  const int n_stake = inst.n_stakeholders;
  LpProblem lp;
  lp.n_vars = n_cols + 1;
  lp.free_var = n_cols;
  lp.objective.assign(static_cast<std::size_t>(lp.n_vars), 0.0);
  lp.objective.back() = -1.0;
  const int n_rows = n_sites + n_mission + 1 + n_stake;
  lp.rows.assign(static_cast<std::size_t>(n_rows),
                 std::vector<double>(static_cast<std::size_t>(lp.n_vars), 0.0));
  lp.rhs.assign(static_cast<std::size_t>(n_rows), 0.0);
  for (int i = 0; i < n_sites; ++i) lp.rhs[static_cast<std::size_t>(i)] = 1.0;
  for (int b = 0; b < n_mission; ++b)
    lp.rhs[static_cast<std::size_t>(n_sites + b)] =
        inst.resources.mission_budget[static_cast<std::size_t>(b)];
  lp.rhs[static_cast<std::size_t>(n_sites + n_mission)] = inst.max_routes;
  for (int k = 0; k < n_stake; ++k)
    lp.rows[static_cast<std::size_t>(n_sites + n_mission + 1 + k)].back() = 1.0;
  for (int j = 0; j < n_cols; ++j) {
    const OracleRoute& r = routes[static_cast<std::size_t>(j)];
    for (int id : r.ids) lp.rows[static_cast<std::size_t>(id - 1)][static_cast<std::size_t>(j)] = 1.0;
    for (int b = 0; b < n_mission; ++b)
      lp.rows[static_cast<std::size_t>(n_sites + b)][static_cast<std::size_t>(j)] =
          r.consumption[static_cast<std::size_t>(b)];
    lp.rows[static_cast<std::size_t>(n_sites + n_mission)][static_cast<std::size_t>(j)] = 1.0;
    for (int k = 0; k < n_stake; ++k)
      lp.rows[static_cast<std::size_t>(n_sites + n_mission + 1 + k)][static_cast<std::size_t>(j)] =
          -r.profits[static_cast<std::size_t>(k)];
  }
  return lp;
}

/// Small planar instance with tunable dimensions; budgets chosen so some
/// multi-site routes fit and some do not.
inline Instance random_instance(std::mt19937_64& rng, int n_sites, int n_stake, int n_routes,
                                bool with_mission) {
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_int_distribution<int> profit(0, 9);
  std::uniform_real_distribution<double> stay(0.0, 1.0);

  Instance inst;
  inst.name = "random";
  inst.n_stakeholders = n_stake;
  inst.max_routes = n_routes;
  inst.depot_x = coord(rng);
  inst.depot_y = coord(rng);
  inst.metric.kind = MetricKind::Euclidean;
  inst.resources.route_budget = {std::uniform_real_distribution<double>(8.0, 20.0)(rng)};
  inst.resources.on_arc_route = {1.0};
  inst.resources.on_site_route = {1.0};
  if (with_mission) {
    inst.resources.mission_budget = {std::uniform_real_distribution<double>(15.0, 35.0)(rng)};
    inst.resources.on_arc_mission = {1.0};
    inst.resources.on_site_mission = {1.0};
  }
  for (int i = 1; i <= n_sites; ++i) {
    Site s;
    s.id = i;
    s.x = coord(rng);
    s.y = coord(rng);
    s.stay_hours = stay(rng);
    for (int k = 0; k < n_stake; ++k) s.profits.push_back(profit(rng));
    inst.sites.push_back(std::move(s));
  }
  return inst;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace vrpvp::test
