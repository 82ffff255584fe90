#include "vrpvp/mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace vrpvp {

namespace {

enum : char { kFree = 0, kFixZero = 1, kFixOne = 2 };

struct FixedAggregates {
  SiteSet covered;
  std::vector<double> mission_used;
  std::vector<double> profit_fixed;
  int count_used = 0;
};

FixedAggregates aggregate_fixed(const ColumnPool& pool, const std::vector<char>& fixed,
                                const Instance& instance) {
  FixedAggregates agg;
  agg.mission_used.assign(instance.resources.mission_budget.size(), 0.0);
  agg.profit_fixed.assign(static_cast<std::size_t>(instance.n_stakeholders), 0.0);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (fixed[j] != kFixOne) continue;
    const Column& col = pool.columns()[j];
    for (int id : col.sites.ids()) agg.covered.add(id);
    for (std::size_t b = 0; b < agg.mission_used.size(); ++b)
      agg.mission_used[b] += col.consumption[b];
    for (std::size_t k = 0; k < agg.profit_fixed.size(); ++k)
      agg.profit_fixed[k] += col.profits[k];
    agg.count_used += 1;
  }
  return agg;
}

// Restricted master over the free columns with the fixed-at-one contribution
// folded into the right-hand sides.
LpProblem node_lp(const ColumnPool& pool, const std::vector<char>& fixed,
                  const FixedAggregates& agg, const Instance& instance,
                  std::vector<int>& free_index) {
  const int n_sites = instance.n_sites();
  const int n_mission = static_cast<int>(instance.resources.mission_budget.size());
  const int n_stake = instance.n_stakeholders;

  free_index.clear();
  for (std::size_t j = 0; j < pool.size(); ++j)
    if (fixed[j] == kFree) free_index.push_back(static_cast<int>(j));

  const int n_free = static_cast<int>(free_index.size());
  const int z = n_free;

  LpProblem lp;
  lp.n_vars = n_free + 1;
  lp.free_var = z;
  lp.objective.assign(static_cast<std::size_t>(lp.n_vars), 0.0);
  lp.objective[static_cast<std::size_t>(z)] = -1.0;

  const int n_rows = n_sites + n_mission + 1 + n_stake;
  lp.rows.assign(static_cast<std::size_t>(n_rows),
                 std::vector<double>(static_cast<std::size_t>(lp.n_vars), 0.0));
  lp.rhs.assign(static_cast<std::size_t>(n_rows), 0.0);

  for (int i = 0; i < n_sites; ++i)
    lp.rhs[static_cast<std::size_t>(i)] = agg.covered.contains(i + 1) ? 0.0 : 1.0;
  for (int b = 0; b < n_mission; ++b)
    lp.rhs[static_cast<std::size_t>(n_sites + b)] =
        instance.resources.mission_budget[static_cast<std::size_t>(b)] -
        agg.mission_used[static_cast<std::size_t>(b)];
  lp.rhs[static_cast<std::size_t>(n_sites + n_mission)] = instance.max_routes - agg.count_used;
  for (int k = 0; k < n_stake; ++k) {
    lp.rows[static_cast<std::size_t>(n_sites + n_mission + 1 + k)][static_cast<std::size_t>(z)] = 1.0;
    lp.rhs[static_cast<std::size_t>(n_sites + n_mission + 1 + k)] =
        agg.profit_fixed[static_cast<std::size_t>(k)];
  }

  for (int v = 0; v < n_free; ++v) {
    const Column& col = pool.columns()[static_cast<std::size_t>(free_index[static_cast<std::size_t>(v)])];
    for (int id : col.sites.ids())
      lp.rows[static_cast<std::size_t>(id - 1)][static_cast<std::size_t>(v)] = 1.0;
    for (int b = 0; b < n_mission; ++b)
      lp.rows[static_cast<std::size_t>(n_sites + b)][static_cast<std::size_t>(v)] =
          col.consumption[static_cast<std::size_t>(b)];
    lp.rows[static_cast<std::size_t>(n_sites + n_mission)][static_cast<std::size_t>(v)] = 1.0;
    for (int k = 0; k < n_stake; ++k)
      lp.rows[static_cast<std::size_t>(n_sites + n_mission + 1 + k)][static_cast<std::size_t>(v)] =
          -col.profits[static_cast<std::size_t>(k)];
  }
  return lp;
}

struct Node {
  double bound;
  long id;
  std::vector<char> fixed;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // max-heap on bound
    return a.id > b.id;                                // FIFO among ties
  }
};

double total_profit(const Column& col) {
  double s = 0.0;
  for (double p : col.profits) s += p;
  return s;
}

}  // namespace

EvaluationReport evaluate_solution(const std::vector<Column>& selected, const Instance& instance) {
  EvaluationReport rep;
  rep.stakeholder_sums.assign(static_cast<std::size_t>(instance.n_stakeholders), 0.0);
  rep.mission_usage.assign(instance.resources.mission_budget.size(), 0.0);
  rep.route_usage_max.assign(instance.resources.route_budget.size(), 0.0);

  SiteSet seen;
  for (std::size_t r = 0; r < selected.size(); ++r) {
    const Column& col = selected[r];
    double stay = 0.0;
    for (int id : col.sites.ids()) {
      if (seen.contains(id))
        rep.violations.push_back("site " + std::to_string(id) + " visited by multiple routes");
      seen.add(id);
      const Site& s = instance.site(id);
      stay += s.stay_hours;
      for (int k = 0; k < instance.n_stakeholders; ++k)
        rep.stakeholder_sums[static_cast<std::size_t>(k)] += s.profits[static_cast<std::size_t>(k)];
    }
    const auto& res = instance.resources;
    for (std::size_t b = 0; b < res.route_budget.size(); ++b) {
      const double usage = col.tsp_cost * res.on_arc_route[b] + stay * res.on_site_route[b];
      rep.route_usage_max[b] = std::max(rep.route_usage_max[b], usage);
      if (usage > res.route_budget[b] + kFeasTol)
        rep.violations.push_back("route " + std::to_string(r + 1) + " exceeds route budget " +
                                 std::to_string(b));
    }
    for (std::size_t b = 0; b < res.mission_budget.size(); ++b)
      rep.mission_usage[b] += col.tsp_cost * res.on_arc_mission[b] + stay * res.on_site_mission[b];
  }
  for (std::size_t b = 0; b < instance.resources.mission_budget.size(); ++b)
    if (rep.mission_usage[b] > instance.resources.mission_budget[b] + kFeasTol)
      rep.violations.push_back("mission budget " + std::to_string(b) + " exceeded");
  if (static_cast<int>(selected.size()) > instance.max_routes)
    rep.violations.push_back("route count exceeds max_routes");
  return rep;
}

IntegerSolution solve_restricted_mip(const ColumnPool& pool, const Instance& instance,
                                     const MipOptions& options) {
  if (pool.size() == 0) throw std::invalid_argument("solve_restricted_mip: empty pool");
  const auto t0 = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    return options.time_limit_seconds > 0 &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
               options.time_limit_seconds;
  };

  IntegerSolution best;
  best.status = MipStatus::Optimal;
  best.z_value = 0.0;  // empty selection is always feasible
  best.stakeholder_sums.assign(static_cast<std::size_t>(instance.n_stakeholders), 0.0);
  bool have_incumbent = false;

  auto try_incumbent = [&](const std::vector<int>& selection) {
    std::vector<Column> cols;
    cols.reserve(selection.size());
    for (int j : selection) cols.push_back(pool.columns()[static_cast<std::size_t>(j)]);
    const EvaluationReport rep = evaluate_solution(cols, instance);
    if (!rep.violations.empty()) return;
    const double z = maxmin_value(rep.stakeholder_sums);
    if (!have_incumbent || z > best.z_value + 1e-9) {
      have_incumbent = true;
      best.z_value = z;
      best.selected = selection;
      std::sort(best.selected.begin(), best.selected.end());
      best.stakeholder_sums = rep.stakeholder_sums;
    }
  };
  try_incumbent({});

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{std::numeric_limits<double>::infinity(), next_id++,
                 std::vector<char>(pool.size(), kFree)});

  bool root = true;
  double open_bound_at_stop = -std::numeric_limits<double>::infinity();
  bool stopped = false;

  while (!open.empty()) {
    if (out_of_time()) {
      stopped = true;
      open_bound_at_stop = open.top().bound;
      break;
    }
    Node node = open.top();
    open.pop();
    if (have_incumbent && node.bound <= best.z_value + 1e-9) continue;

    const FixedAggregates agg = aggregate_fixed(pool, node.fixed, instance);
    // Fixed part alone must respect the aggregate budgets.
    bool fixed_ok = agg.count_used <= instance.max_routes;
    for (std::size_t b = 0; b < agg.mission_used.size() && fixed_ok; ++b)
      if (agg.mission_used[b] > instance.resources.mission_budget[b] + kFeasTol) fixed_ok = false;
    if (!fixed_ok) continue;

    std::vector<int> free_index;
    const LpProblem lp = node_lp(pool, node.fixed, agg, instance, free_index);
    const LpSolution sol = solve_lp(lp);
    if (!root) best.nodes += 1;
    root = false;
    if (sol.status == LpStatus::Infeasible) continue;
    if (sol.status != LpStatus::Optimal)
      throw std::runtime_error("solve_restricted_mip: node LP failed");

    const double z_bound = -sol.objective;
    if (have_incumbent && z_bound <= best.z_value + 1e-9) continue;

    // Fractionality scan over the free columns.
    int branch_var = -1;  // pool index
    double branch_frac_dist = -1.0;
    for (std::size_t v = 0; v < free_index.size(); ++v) {
      const double x = sol.x[v];
      const double frac = std::min(x - std::floor(x), std::ceil(x) - x);
      if (frac > options.integrality_tol) {
        const double dist = std::min(x, 1.0 - x);
        const int j = free_index[v];
        if (dist > branch_frac_dist + 1e-12 ||
            (std::abs(dist - branch_frac_dist) <= 1e-12 && branch_var >= 0 &&
             total_profit(pool.columns()[static_cast<std::size_t>(j)]) >
                 total_profit(pool.columns()[static_cast<std::size_t>(branch_var)]))) {
          branch_frac_dist = dist;
          branch_var = j;
        }
      }
    }

    if (branch_var < 0) {
      // Integral: collect selection.
      std::vector<int> selection;
      for (std::size_t j = 0; j < pool.size(); ++j)
        if (node.fixed[j] == kFixOne) selection.push_back(static_cast<int>(j));
      for (std::size_t v = 0; v < free_index.size(); ++v)
        if (sol.x[v] > 1.0 - options.integrality_tol)
          selection.push_back(free_index[v]);
      try_incumbent(selection);
      continue;
    }

    if (node.bound == std::numeric_limits<double>::infinity()) {
      // Root: greedy-rounding incumbent (x_j >= 0.5 by descending value).
      std::vector<std::pair<double, int>> cand;
      for (std::size_t v = 0; v < free_index.size(); ++v)
        if (sol.x[v] >= 0.5) cand.emplace_back(-sol.x[v], free_index[v]);
      std::sort(cand.begin(), cand.end());
      std::vector<int> greedy;
      SiteSet used;
      std::vector<double> mission(instance.resources.mission_budget.size(), 0.0);
      for (auto [negx, j] : cand) {
        const Column& col = pool.columns()[static_cast<std::size_t>(j)];
        if (col.sites.intersects(used)) continue;
        if (static_cast<int>(greedy.size()) >= instance.max_routes) break;
        bool fits = true;
        for (std::size_t b = 0; b < mission.size(); ++b)
          if (mission[b] + col.consumption[b] >
              instance.resources.mission_budget[b] + kFeasTol)
            fits = false;
        if (!fits) continue;
        greedy.push_back(j);
        for (int id : col.sites.ids()) used.add(id);
        for (std::size_t b = 0; b < mission.size(); ++b) mission[b] += col.consumption[b];
      }
      try_incumbent(greedy);
      if (have_incumbent && z_bound <= best.z_value + 1e-9) continue;
    }

    // Children: fix to one (conflicting columns drop out), fix to zero.
    {
      Node one;
      one.bound = z_bound;
      one.id = next_id++;
      one.fixed = node.fixed;
      one.fixed[static_cast<std::size_t>(branch_var)] = kFixOne;
      const Column& bcol = pool.columns()[static_cast<std::size_t>(branch_var)];
      for (std::size_t j = 0; j < pool.size(); ++j)
        if (one.fixed[j] == kFree && pool.columns()[j].sites.intersects(bcol.sites))
          one.fixed[j] = kFixZero;
      open.push(std::move(one));
    }
    {
      Node zero;
      zero.bound = z_bound;
      zero.id = next_id++;
      zero.fixed = node.fixed;
      zero.fixed[static_cast<std::size_t>(branch_var)] = kFixZero;
      open.push(std::move(zero));
    }
  }

  best.status = stopped ? MipStatus::TimeLimit : MipStatus::Optimal;
  best.best_bound = stopped ? std::max(best.z_value, open_bound_at_stop) : best.z_value;
  return best;
}

}  // namespace vrpvp
