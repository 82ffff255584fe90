#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "vrpvp/cost_matrix.hpp"
#include "vrpvp/model.hpp"
#include "vrpvp/site_set.hpp"

namespace vrpvp {

/// Largest subset size accepted by the exact tour solver.
inline constexpr int kTspSiteLimit = 20;

/// Optimal closed tour through a site subset. order is depot-anchored:
/// starts and ends at 0.
struct Tour {
  double cost = 0.0;
  std::vector<int> order;
};

/// One master-problem variable: a feasible route and its aggregates.
struct Column {
  SiteSet sites;
  double tsp_cost = 0.0;
  std::vector<int> tour;              // 0, i1, ..., ik, 0
  double stay_hours = 0.0;            // sum of t_i over the site set
  std::vector<double> route_usage;    // tsp_cost*c_d + stay*c_r
  std::vector<double> consumption;    // h_j = tsp_cost*d_d + stay*d_r
  std::vector<double> profits;        // r_j^k per stakeholder
  bool feasible = false;
};

/// Concurrent memo table for exact tours. insert_or_get is last-writer-wins;
/// concurrent writers compute identical values.
class TspCache {
 public:
  std::optional<Tour> find(const SiteSet& sites) const {
    std::lock_guard lock(mutex_);
    auto it = map_.find(sites);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  Tour insert_or_get(const SiteSet& sites, Tour tour) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = map_.try_emplace(sites, std::move(tour));
    return it->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::unordered_map<SiteSet, Tour, SiteSet::Hash> map_;
};

/// Exact shortest closed tour depot -> sites -> depot (Held-Karp over
/// bitmasks; handles asymmetric matrices). Empty set yields cost 0 and
/// order {0}. Throws std::invalid_argument beyond kTspSiteLimit sites.
Tour tsp_exact(const SiteSet& sites, const CostMatrix& matrix);

/// tsp_exact with an optional memo table (cache may be null).
Tour tsp_cached(const SiteSet& sites, const CostMatrix& matrix, TspCache* cache);

/// A feasible tour through the set, not necessarily optimal (nearest
/// neighbour + 2-opt). Its cost upper-bounds the exact one.
double tsp_upper_bound(const SiteSet& sites, const CostMatrix& matrix);

/// Lower bound on the exact closed-tour cost; cheap, no DP.
double tsp_lower_bound(const SiteSet& sites, const CostMatrix& matrix);

/// Full evaluation of a route candidate: exact tour, budget usage,
/// mission consumption, and per-stakeholder profit sums.
Column evaluate_column(const SiteSet& sites, const Instance& instance,
                       const CostMatrix& matrix, TspCache* cache);

/// Infeasibility shortcut without running the exact solver: stay-time-only
/// and tour-lower-bound checks. Returns false only when provably infeasible.
bool passes_feasibility_precheck(const SiteSet& sites, const Instance& instance,
                                 const CostMatrix& matrix);

bool is_route_feasible(const SiteSet& sites, const Instance& instance,
                       const CostMatrix& matrix, TspCache* cache);

}  // namespace vrpvp
