#include "vrpvp/routing.hpp"

#include "vrpvp/lp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace vrpvp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Tour tsp_exact(const SiteSet& sites, const CostMatrix& matrix) {
  const std::vector<int> ids = sites.ids();
  const int m = static_cast<int>(ids.size());
  if (m == 0) return Tour{0.0, {0}};
  if (m > kTspSiteLimit)
    throw std::invalid_argument("tsp_exact: subset of " + std::to_string(m) +
                                " sites exceeds limit " + std::to_string(kTspSiteLimit));
  for (int id : ids)
    if (id >= matrix.dim)
      throw std::invalid_argument("tsp_exact: site id beyond matrix dimension");

  if (m == 1) {
    const double c = matrix.at(0, ids[0]) + matrix.at(ids[0], 0);
    return Tour{c, {0, ids[0], 0}};
  }

  // dp[mask][last]: cheapest path depot -> visits mask -> ends at last.
  const std::size_t n_masks = 1ull << m;
  std::vector<double> dp(n_masks * static_cast<std::size_t>(m), kInf);
  std::vector<int> parent(n_masks * static_cast<std::size_t>(m), -1);
  auto at = [m](std::size_t mask, int last) { return mask * static_cast<std::size_t>(m) + last; };

  for (int i = 0; i < m; ++i) dp[at(1ull << i, i)] = matrix.at(0, ids[static_cast<std::size_t>(i)]);

  for (std::size_t mask = 1; mask < n_masks; ++mask) {
    for (int last = 0; last < m; ++last) {
      if (!(mask & (1ull << last))) continue;
      const double base = dp[at(mask, last)];
      if (base == kInf) continue;
      for (int next = 0; next < m; ++next) {
        if (mask & (1ull << next)) continue;
        const std::size_t nmask = mask | (1ull << next);
        const double cand =
            base + matrix.at(ids[static_cast<std::size_t>(last)], ids[static_cast<std::size_t>(next)]);
        if (cand < dp[at(nmask, next)]) {
          dp[at(nmask, next)] = cand;
          parent[at(nmask, next)] = last;
        }
      }
    }
  }

  const std::size_t full = n_masks - 1;
  double best = kInf;
  int best_last = -1;
  for (int last = 0; last < m; ++last) {
    const double c = dp[at(full, last)] + matrix.at(ids[static_cast<std::size_t>(last)], 0);
    if (c < best) {
      best = c;
      best_last = last;
    }
  }

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(m) + 2);
  std::size_t mask = full;
  int last = best_last;
  while (last != -1) {
    order.push_back(ids[static_cast<std::size_t>(last)]);
    const int prev = parent[at(mask, last)];
    mask &= ~(1ull << last);
    last = prev;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  order.push_back(0);
  return Tour{best, std::move(order)};
}

Tour tsp_cached(const SiteSet& sites, const CostMatrix& matrix, TspCache* cache) {
  if (cache == nullptr) return tsp_exact(sites, matrix);
  if (auto hit = cache->find(sites)) return *hit;
  return cache->insert_or_get(sites, tsp_exact(sites, matrix));
}

double tsp_upper_bound(const SiteSet& sites, const CostMatrix& matrix) {
  std::vector<int> ids = sites.ids();
  const int m = static_cast<int>(ids.size());
  if (m == 0) return 0.0;

  // Nearest-neighbour construction from the depot.
  std::vector<int> tour;
  tour.reserve(static_cast<std::size_t>(m) + 2);
  tour.push_back(0);
  std::vector<char> used(ids.size(), 0);
  int cur = 0;
  for (int step = 0; step < m; ++step) {
    int best = -1;
    double best_c = kInf;
    for (int i = 0; i < m; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double c = matrix.at(cur, ids[static_cast<std::size_t>(i)]);
      if (c < best_c) {
        best_c = c;
        best = i;
      }
    }
    used[static_cast<std::size_t>(best)] = 1;
    cur = ids[static_cast<std::size_t>(best)];
    tour.push_back(cur);
  }
  tour.push_back(0);

  auto tour_cost = [&matrix](const std::vector<int>& t) {
    double c = 0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) c += matrix.at(t[i], t[i + 1]);
    return c;
  };

  // 2-opt passes (segment reversal; valid for asymmetric matrices only via
  // full recost, so recost the reversed candidate directly).
  double cost = tour_cost(tour);
  bool improved = true;
  int passes = 0;
  while (improved && passes < 6) {
    improved = false;
    ++passes;
    for (std::size_t a = 1; a + 1 < tour.size() - 1; ++a) {
      for (std::size_t b = a + 1; b < tour.size() - 1; ++b) {
        std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(a),
                     tour.begin() + static_cast<std::ptrdiff_t>(b) + 1);
        const double cand = tour_cost(tour);
        if (cand + 1e-12 < cost) {
          cost = cand;
          improved = true;
        } else {
          std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(a),
                       tour.begin() + static_cast<std::ptrdiff_t>(b) + 1);
        }
      }
    }
  }
  return cost;
}

double tsp_lower_bound(const SiteSet& sites, const CostMatrix& matrix) {
  const std::vector<int> ids = sites.ids();
  if (ids.empty()) return 0.0;

  // Out-degree bound: every node of the closed tour pays at least its
  // cheapest outgoing arc within the tour's node set.
  double sum_out = 0.0;
  auto min_out = [&](int from) {
    double best = matrix.at(from, 0);
    if (from == 0) best = kInf;
    for (int id : ids)
      if (id != from) best = std::min(best, matrix.at(from, id));
    if (from != 0) best = std::min(best, matrix.at(from, 0));
    return best;
  };
  sum_out += min_out(0);
  for (int id : ids) sum_out += min_out(id);

  // Depot round trip through the farthest site; a lower bound only when
  // detours cannot shorten a leg, i.e. under the triangle inequality.
  if (matrix.triangle_holds()) {
    double round_trip = 0.0;
    for (int id : ids) round_trip = std::max(round_trip, matrix.at(0, id) + matrix.at(id, 0));
    sum_out = std::max(sum_out, round_trip);
  }
  return sum_out;
}

bool passes_feasibility_precheck(const SiteSet& sites, const Instance& instance,
                                 const CostMatrix& matrix) {
  double stay = 0.0;
  for (int id : sites.ids()) stay += instance.site(id).stay_hours;

  const auto& r = instance.resources;
  // Stay-time-only check, then the cheap tour lower bound.
  for (std::size_t b = 0; b < r.route_budget.size(); ++b)
    if (stay * r.on_site_route[b] > r.route_budget[b] + kFeasTol) return false;
  const double lb = tsp_lower_bound(sites, matrix);
  for (std::size_t b = 0; b < r.route_budget.size(); ++b)
    if (lb * r.on_arc_route[b] + stay * r.on_site_route[b] > r.route_budget[b] + kFeasTol)
      return false;
  return true;
}

Column evaluate_column(const SiteSet& sites, const Instance& instance, const CostMatrix& matrix,
                       TspCache* cache) {
  if (sites.empty()) throw std::invalid_argument("evaluate_column: empty site set");
  Column col;
  col.sites = sites;
  const Tour tour = tsp_cached(sites, matrix, cache);
  col.tsp_cost = tour.cost;
  col.tour = tour.order;

  double stay = 0.0;
  col.profits.assign(static_cast<std::size_t>(instance.n_stakeholders), 0.0);
  for (int id : sites.ids()) {
    const Site& s = instance.site(id);
    stay += s.stay_hours;
    for (int k = 0; k < instance.n_stakeholders; ++k)
      col.profits[static_cast<std::size_t>(k)] += s.profits[static_cast<std::size_t>(k)];
  }
  col.stay_hours = stay;

  const auto& r = instance.resources;
  col.route_usage.resize(r.route_budget.size());
  col.feasible = true;
  for (std::size_t b = 0; b < r.route_budget.size(); ++b) {
    col.route_usage[b] = col.tsp_cost * r.on_arc_route[b] + stay * r.on_site_route[b];
    if (col.route_usage[b] > r.route_budget[b] + kFeasTol) col.feasible = false;
  }
  col.consumption.resize(r.mission_budget.size());
  for (std::size_t b = 0; b < r.mission_budget.size(); ++b)
    col.consumption[b] = col.tsp_cost * r.on_arc_mission[b] + stay * r.on_site_mission[b];
  return col;
}

bool is_route_feasible(const SiteSet& sites, const Instance& instance, const CostMatrix& matrix,
                       TspCache* cache) {
  if (sites.empty()) return true;  // vacuous; never enumerated
  if (!passes_feasibility_precheck(sites, instance, matrix)) return false;
  return evaluate_column(sites, instance, matrix, cache).feasible;
}

}  // namespace vrpvp
