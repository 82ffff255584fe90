#include "vrpvp/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vrpvp {

ColumnPool init_columns(const Instance& instance, const CostMatrix& matrix, TspCache* cache,
                        std::vector<int>* unreachable) {
  ColumnPool pool;
  if (unreachable != nullptr) unreachable->clear();
  for (int id = 1; id <= instance.n_sites(); ++id) {
    SiteSet s;
    s.add(id);
    Column col = evaluate_column(s, instance, matrix, cache);
    if (col.feasible) {
      pool.add(std::move(col));
    } else if (unreachable != nullptr) {
      unreachable->push_back(id);
    }
  }
  if (pool.size() == 0)
    throw std::runtime_error("init_columns: no site reachable within the route budget");
  return pool;
}

LpProblem build_master(const ColumnPool& pool, const Instance& instance) {
  if (pool.size() == 0) throw std::invalid_argument("build_master: empty pool");
  const int n_cols = static_cast<int>(pool.size());
  const int n_sites = instance.n_sites();
  const int n_mission = static_cast<int>(instance.resources.mission_budget.size());
  const int n_stake = instance.n_stakeholders;
  const int z = n_cols;  // free variable

  LpProblem lp;
  lp.n_vars = n_cols + 1;
  lp.free_var = z;
  lp.objective.assign(static_cast<std::size_t>(lp.n_vars), 0.0);
  lp.objective[static_cast<std::size_t>(z)] = -1.0;

  const int n_rows = n_sites + n_mission + 1 + n_stake;
  lp.rows.assign(static_cast<std::size_t>(n_rows),
                 std::vector<double>(static_cast<std::size_t>(lp.n_vars), 0.0));
  lp.rhs.assign(static_cast<std::size_t>(n_rows), 0.0);

  for (int i = 0; i < n_sites; ++i) lp.rhs[static_cast<std::size_t>(i)] = 1.0;
  for (int b = 0; b < n_mission; ++b)
    lp.rhs[static_cast<std::size_t>(n_sites + b)] = instance.resources.mission_budget[static_cast<std::size_t>(b)];
  lp.rhs[static_cast<std::size_t>(n_sites + n_mission)] = instance.max_routes;
  // profit-link rows keep rhs 0 and carry the z coefficient
  for (int k = 0; k < n_stake; ++k)
    lp.rows[static_cast<std::size_t>(n_sites + n_mission + 1 + k)][static_cast<std::size_t>(z)] = 1.0;

  for (int j = 0; j < n_cols; ++j) {
    const Column& col = pool.columns()[static_cast<std::size_t>(j)];
    for (int id : col.sites.ids())
      lp.rows[static_cast<std::size_t>(id - 1)][static_cast<std::size_t>(j)] = 1.0;
    for (int b = 0; b < n_mission; ++b)
      lp.rows[static_cast<std::size_t>(n_sites + b)][static_cast<std::size_t>(j)] =
          col.consumption[static_cast<std::size_t>(b)];
    lp.rows[static_cast<std::size_t>(n_sites + n_mission)][static_cast<std::size_t>(j)] = 1.0;
    for (int k = 0; k < n_stake; ++k)
      lp.rows[static_cast<std::size_t>(n_sites + n_mission + 1 + k)][static_cast<std::size_t>(j)] =
          -col.profits[static_cast<std::size_t>(k)];
  }
  return lp;
}

DualSolution split_duals(const LpSolution& solution, const Instance& instance) {
  const int n_sites = instance.n_sites();
  const int n_mission = static_cast<int>(instance.resources.mission_budget.size());
  const int n_stake = instance.n_stakeholders;
  if (static_cast<int>(solution.duals.size()) != n_sites + n_mission + 1 + n_stake)
    throw std::invalid_argument("split_duals: dual vector has wrong dimension");

  DualSolution d;
  d.site.assign(solution.duals.begin(), solution.duals.begin() + n_sites);
  d.mission.assign(solution.duals.begin() + n_sites, solution.duals.begin() + n_sites + n_mission);
  d.route_count = solution.duals[static_cast<std::size_t>(n_sites + n_mission)];
  d.stakeholder.assign(solution.duals.begin() + n_sites + n_mission + 1, solution.duals.end());

  // Numerical drift on the profit-link rows is repaired by rescaling w so it
  // sums to -1 exactly.
  const double wsum = std::accumulate(d.stakeholder.begin(), d.stakeholder.end(), 0.0);
  if (std::abs(wsum + 1.0) > 1e-7 && wsum < -1e-12) {
    const double scale = -1.0 / wsum;
    for (double& w : d.stakeholder) w *= scale;
  }
  return d;
}

PricingScores pricing_scores(const DualSolution& duals, const Instance& instance,
                             const std::vector<int>* excluded_sites) {
  const int n_sites = instance.n_sites();
  PricingScores sc;
  sc.u.assign(static_cast<std::size_t>(n_sites), 0.0);
  std::vector<char> excluded(static_cast<std::size_t>(n_sites) + 1, 0);
  if (excluded_sites != nullptr)
    for (int id : *excluded_sites) excluded[static_cast<std::size_t>(id)] = 1;

  for (int i = 0; i < n_sites; ++i) {
    const Site& s = instance.sites[static_cast<std::size_t>(i)];
    double u = duals.site[static_cast<std::size_t>(i)];
    for (int k = 0; k < instance.n_stakeholders; ++k)
      u -= duals.stakeholder[static_cast<std::size_t>(k)] * s.profits[static_cast<std::size_t>(k)];
    sc.u[static_cast<std::size_t>(i)] = u;
    if (u > 0 && !excluded[static_cast<std::size_t>(i + 1)]) sc.order.push_back(i + 1);
  }
  std::sort(sc.order.begin(), sc.order.end(), [&sc](int a, int b) {
    const double ua = sc.u[static_cast<std::size_t>(a - 1)];
    const double ub = sc.u[static_cast<std::size_t>(b - 1)];
    if (ua != ub) return ua > ub;
    return a < b;
  });
  return sc;
}

namespace {

// DFS over positive-u sites in descending-u order. Exact tours are computed
// lazily: cheap lower/upper bounds settle most feasibility questions and the
// exact solver (memoized) runs only when a bound is inconclusive or a column
// is about to be recorded.
class PricingSearch {
 public:
  PricingSearch(const PricingScores& scores, const DualSolution& duals, const Instance& instance,
                const CostMatrix& matrix, TspCache* cache, const ColumnPool& pool, int cap)
      : scores_(scores),
        duals_(duals),
        instance_(instance),
        matrix_(matrix),
        cache_(cache),
        pool_(pool),
        cap_(cap),
        monotone_(matrix.triangle_holds()) {
    const std::size_t k = scores_.order.size();
    suffix_.assign(k + 1, 0.0);
    for (std::size_t p = k; p-- > 0;)
      suffix_[p] = suffix_[p + 1] + scores_.u[static_cast<std::size_t>(scores_.order[p] - 1)];
  }

  std::vector<Column> run() {
    SiteSet empty;
    explore(empty, 0.0, 0.0, 0);
    return std::move(found_);
  }

 private:
  // q2' h lower bound: h >= stay * d_r componentwise and q2 <= 0.
  double mission_term_upper(double stay) const {
    double v = 0.0;
    for (std::size_t b = 0; b < duals_.mission.size(); ++b)
      v += duals_.mission[b] * stay * instance_.resources.on_site_mission[b];
    return v;
  }

  double mission_term_exact(const Column& col) const {
    double v = 0.0;
    for (std::size_t b = 0; b < duals_.mission.size(); ++b)
      v += duals_.mission[b] * col.consumption[b];
    return v;
  }

  bool route_usage_within(double tsp_cost, double stay) const {
    const auto& r = instance_.resources;
    for (std::size_t b = 0; b < r.route_budget.size(); ++b)
      if (tsp_cost * r.on_arc_route[b] + stay * r.on_site_route[b] > r.route_budget[b] + kFeasTol)
        return false;
    return true;
  }

  void explore(const SiteSet& set, double u_sum, double stay, std::size_t next_pos) {
    if (done_) return;
    for (std::size_t p = next_pos; p < scores_.order.size(); ++p) {
      // Remaining positive-u mass cannot lift the reduced cost over the
      // tolerance: no deeper set from here can violate. suffix_ shrinks with
      // p, so stop the whole level.
      if (u_sum + suffix_[p] + duals_.route_count + mission_term_upper(stay) <= kPricingTol) break;

      const int id = scores_.order[p];
      SiteSet child = set;
      child.add(id);
      const double child_stay = stay + instance_.site(id).stay_hours;
      const double child_u = u_sum + scores_.u[static_cast<std::size_t>(id - 1)];

      if (child.count() > kTspSiteLimit) continue;

      if (!passes_feasibility_precheck(child, instance_, matrix_)) {
        if (!monotone_) explore(child, child_u, child_stay, p + 1);
        continue;
      }

      bool feasible;
      bool have_exact = false;
      Column col;
      const std::optional<Tour> hit = cache_ != nullptr ? cache_->find(child) : std::nullopt;
      if (hit.has_value()) {
        col = evaluate_column(child, instance_, matrix_, cache_);
        have_exact = true;
        feasible = col.feasible;
      } else if (route_usage_within(tsp_upper_bound(child, matrix_), child_stay)) {
        feasible = true;
      } else {
        col = evaluate_column(child, instance_, matrix_, cache_);
        have_exact = true;
        feasible = col.feasible;
      }

      if (feasible) {
        const double v_upper = child_u + duals_.route_count + mission_term_upper(child_stay);
        if (v_upper > kPricingTol && !pool_.contains(child)) {
          if (!have_exact) {
            col = evaluate_column(child, instance_, matrix_, cache_);
            have_exact = true;
          }
          if (col.feasible) {
            const double v = child_u + duals_.route_count + mission_term_exact(col);
            if (v > kPricingTol) {
              found_.push_back(col);
              if (static_cast<int>(found_.size()) >= cap_) {
                done_ = true;
                return;
              }
            }
          } else {
            feasible = false;  // heuristic bound was optimistic only via cache path; exact wins
          }
        }
      }

      if (feasible || !monotone_) {
        explore(child, child_u, child_stay, p + 1);
        if (done_) return;
      }
    }
  }

  const PricingScores& scores_;
  const DualSolution& duals_;
  const Instance& instance_;
  const CostMatrix& matrix_;
  TspCache* cache_;
  const ColumnPool& pool_;
  const int cap_;
  const bool monotone_;
  std::vector<double> suffix_;
  std::vector<Column> found_;
  bool done_ = false;
};

// Master variable layout: columns 0..P-1, z at P, internal split var at P+1,
// slacks after. Translates a basis token when the pool grows.
std::vector<int> translate_basis(const std::vector<int>& basis, int old_p, int new_p) {
  std::vector<int> out;
  out.reserve(basis.size());
  for (int v : basis) {
    if (v < old_p)
      out.push_back(v);
    else
      out.push_back(v + (new_p - old_p));
  }
  return out;
}

}  // namespace

std::vector<Column> generate_columns(const PricingScores& scores, const DualSolution& duals,
                                     const Instance& instance, const CostMatrix& matrix,
                                     TspCache* cache, const ColumnPool& pool, int cap) {
  if (cap <= 0 || scores.order.empty()) return {};
  PricingSearch search(scores, duals, instance, matrix, cache, pool, cap);
  return search.run();
}

RelaxationResult solve_relaxation(const Instance& instance, const CostMatrix& matrix,
                                  const RelaxationOptions& options, TspCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  TspCache local_cache;
  if (cache == nullptr) cache = &local_cache;

  RelaxationResult res;
  res.pool = init_columns(instance, matrix, cache, &res.unreachable_sites);

  std::vector<int> warm_basis;
  int warm_pool_size = 0;

  while (true) {
    const LpProblem master = build_master(res.pool, instance);
    const int p = static_cast<int>(res.pool.size());
    std::vector<int> translated;
    const std::vector<int>* warm = nullptr;
    if (!warm_basis.empty()) {
      translated = translate_basis(warm_basis, warm_pool_size, p);
      warm = &translated;
    }
    LpSolution sol = solve_lp(master, warm);
    if (sol.status != LpStatus::Optimal)
      throw std::runtime_error("solve_relaxation: master LP solve failed (status " +
                               std::to_string(static_cast<int>(sol.status)) + ")");
    warm_basis = sol.basis;
    warm_pool_size = p;

    res.final_duals = split_duals(sol, instance);
    res.iterations += 1;

    const PricingScores scores =
        pricing_scores(res.final_duals, instance, &res.unreachable_sites);
    std::vector<Column> fresh = generate_columns(scores, res.final_duals, instance, matrix, cache,
                                                 res.pool, options.column_cap);
    res.columns_per_iteration.push_back(static_cast<int>(fresh.size()));
    res.final_lp = std::move(sol);

    if (fresh.empty()) {
      res.converged = true;
      break;
    }
    for (auto& col : fresh) res.pool.add(std::move(col));
    if (res.iterations >= options.iteration_cap) {
      res.converged = false;
      break;
    }
  }

  res.j_lp = res.final_lp.objective;
  res.z_lp = -res.final_lp.objective;
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace vrpvp
