#pragma once

#include <unordered_map>
#include <vector>

#include "vrpvp/lp.hpp"
#include "vrpvp/routing.hpp"

namespace vrpvp {

/// Ordered, deduplicated set of feasible columns.
class ColumnPool {
 public:
  bool add(Column column) {
    auto [it, inserted] = index_.try_emplace(column.sites, columns_.size());
    if (inserted) columns_.push_back(std::move(column));
    return inserted;
  }
  bool contains(const SiteSet& sites) const { return index_.count(sites) != 0; }
  const std::vector<Column>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }

 private:
  std::vector<Column> columns_;
  std::unordered_map<SiteSet, std::size_t, SiteSet::Hash> index_;
};

/// Master duals split by constraint block.
struct DualSolution {
  std::vector<double> site;         // q1, one per site
  std::vector<double> mission;      // q2, one per mission budget row
  double route_count = 0.0;         // q3
  std::vector<double> stakeholder;  // w, sums to -1
};

/// Per-site pricing scores u_i = q1_i - sum_k w_k p_i^k and the site
/// permutation sorting them descending (ties by ascending id).
struct PricingScores {
  std::vector<double> u;       // indexed by site id - 1
  std::vector<int> order;      // site ids, descending u, positive entries only
};

struct RelaxationOptions {
  int column_cap = 500;     // new columns per pricing call
  int iteration_cap = 10000;
};

struct RelaxationResult {
  double z_lp = 0.0;          // z* of the final master
  double j_lp = 0.0;          // min-form objective, -z*
  bool converged = false;
  int iterations = 0;
  std::vector<int> columns_per_iteration;
  double wall_seconds = 0.0;
  ColumnPool pool;
  LpSolution final_lp;
  DualSolution final_duals;
  std::vector<int> unreachable_sites;
};

/// All feasible depot round trips; sites whose singleton route breaks the
/// route budget are reported unreachable and excluded from pricing.
/// Throws std::runtime_error if no site is reachable.
ColumnPool init_columns(const Instance& instance, const CostMatrix& matrix, TspCache* cache,
                        std::vector<int>* unreachable = nullptr);

/// Restricted master over the pool: variables x_j plus free z, objective -z,
/// rows = site cover, mission budgets, route count, profit links.
LpProblem build_master(const ColumnPool& pool, const Instance& instance);

/// Splits raw master duals into blocks and rescales w so it sums to -1
/// exactly when numerical drift exceeds 1e-7.
DualSolution split_duals(const LpSolution& solution, const Instance& instance);

PricingScores pricing_scores(const DualSolution& duals, const Instance& instance,
                             const std::vector<int>* excluded_sites = nullptr);

/// Depth-first lexicographic enumeration over positive-u sites in
/// descending-u order. Returns up to cap columns whose reduced cost
/// violates dual feasibility by more than kPricingTol; duplicates against
/// the pool are excluded. Subset pruning on route infeasibility is enabled
/// only when the matrix passes the triangle check.
std::vector<Column> generate_columns(const PricingScores& scores, const DualSolution& duals,
                                     const Instance& instance, const CostMatrix& matrix,
                                     TspCache* cache, const ColumnPool& pool, int cap);

/// Full column-generation loop to the true optimum of the LP relaxation.
RelaxationResult solve_relaxation(const Instance& instance, const CostMatrix& matrix,
                                  const RelaxationOptions& options = {}, TspCache* cache = nullptr);

}  // namespace vrpvp
