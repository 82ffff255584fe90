#pragma once

#include <vector>

#include "vrpvp/colgen.hpp"

namespace vrpvp {

enum class MipStatus { Optimal, Infeasible, TimeLimit };

struct MipOptions {
  double time_limit_seconds = 0.0;  // 0 = no limit
  double integrality_tol = 1e-6;
};

struct IntegerSolution {
  MipStatus status = MipStatus::Infeasible;
  std::vector<int> selected;  // pool indices with x_j = 1
  double z_value = 0.0;
  double best_bound = 0.0;    // z upper bound at termination
  std::vector<double> stakeholder_sums;
  long nodes = 0;
};

/// Branch and bound over the frozen pool: best-bound node selection,
/// branching on the most fractional x_j (ties by larger total profit).
/// Optimal relative to the pool, not to the full feasible route set.
IntegerSolution solve_restricted_mip(const ColumnPool& pool, const Instance& instance,
                                     const MipOptions& options = {});

/// Independent recomputation of a selection from raw instance data.
struct EvaluationReport {
  std::vector<double> stakeholder_sums;
  std::vector<double> mission_usage;     // sum of h_j
  std::vector<double> route_usage_max;   // worst per-route usage per budget row
  std::vector<std::string> violations;   // overlap / budget / count breaches
};

EvaluationReport evaluate_solution(const std::vector<Column>& selected, const Instance& instance);

}  // namespace vrpvp
