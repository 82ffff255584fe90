#pragma once

#include <string>
#include <vector>

namespace vrpvp {

// Shared numeric tolerances (also consumed by colgen and the MIP).
inline constexpr double kFeasTol = 1e-9;
inline constexpr double kDualityTol = 1e-6;
inline constexpr double kPricingTol = 1e-7;

/// min c'x subject to rows*x <= rhs, x >= 0, with at most one designated
/// free variable (split internally into a difference of nonnegatives).
struct LpProblem {
  int n_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;  // dense, one per constraint
  std::vector<double> rhs;
  int free_var = -1;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, Failed };

struct LpSolution {
  LpStatus status = LpStatus::Failed;
  std::vector<double> x;
  double objective = 0.0;
  /// One multiplier per constraint; <= 0 for <= rows of a min problem.
  std::vector<double> duals;
  /// Final basis in the solver's internal numbering; opaque warm-start token.
  std::vector<int> basis;
  int pivots = 0;
};

/// Two-phase revised simplex. Deterministic for identical input.
/// warm_basis, when given, must be a basis token from a previous solve of a
/// problem with the same row count; invalid tokens fall back to a cold start.
LpSolution solve_lp(const LpProblem& problem, const std::vector<int>* warm_basis = nullptr);

/// Certificate check for an optimal solution: primal feasibility, dual
/// signs, dual feasibility, complementary slackness, strong duality.
/// Empty result means all certificates hold.
std::vector<std::string> check_duality(const LpProblem& problem, const LpSolution& solution);

}  // namespace vrpvp
