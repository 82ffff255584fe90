#pragma once

#include <string>
#include <vector>

#include "vrpvp/colgen.hpp"
#include "vrpvp/mip.hpp"

namespace vrpvp {

enum class ObjectiveMode { MaxMin, Stakeholder, WeightedSum };

struct SolveOptions {
  ObjectiveMode mode = ObjectiveMode::MaxMin;
  int stakeholder = 1;                  // Stakeholder mode, 1-based
  std::vector<double> weights;          // WeightedSum mode; empty = all ones
  int column_cap = 500;
  int iteration_cap = 10000;
  double time_limit_seconds = 0.0;      // MIP phase
  int workers = 1;
  std::string report_format = "text";   // "text" or "json"
};

struct RouteReport {
  std::vector<int> tour;                // 0, ..., 0
  double tsp_cost = 0.0;
  double time_hours = 0.0;              // first route-budget component
  std::vector<double> route_usage;
  std::vector<double> profits;
};

/// Relative gap of the integer solution against the LP bound, computed on
/// min-form objectives (both nonpositive for nonnegative-profit instances).
struct GapResult {
  double percent = 0.0;
  bool relative = true;    // false: LP bound was 0, absolute gap reported
  double absolute = 0.0;
};

GapResult optimality_gap(double j_lp_minform, double j_mip_minform);

struct SolveReport {
  std::string instance_name;
  std::string objective;            // "maxmin", "stakeholder=K", "sum=..."
  double z_lp = 0.0;
  double z_mip = 0.0;
  GapResult gap;
  bool lp_converged = true;
  std::vector<RouteReport> routes;
  std::vector<double> stakeholder_sums;  // against the original profit matrix
  std::vector<double> mission_usage;
  int iterations = 0;
  long generated_columns = 0;
  long bb_nodes = 0;
  double relaxation_seconds = 0.0;
  double mip_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Full pipeline: column generation on the LP relaxation, then branch and
/// bound over the frozen pool. Stakeholder / weighted-sum modes project the
/// profit matrix to a single row before solving and report sums against the
/// original vectors.
SolveReport solve_vrpvp(const Instance& instance, const CostMatrix& matrix,
                        const SolveOptions& options = {});

std::string report_to_json(const SolveReport& report);
SolveReport report_from_json(const std::string& json_text);
std::string report_to_text(const SolveReport& report);

struct ComparisonRow {
  std::string label;
  std::vector<double> stakeholder_sums;
  double minimum = 0.0;
  double total = 0.0;
};

/// Max-min plus every single-stakeholder and the all-ones weighted-sum
/// objective on the same instance; each row re-evaluated from raw data.
std::vector<ComparisonRow> compare_modes(const Instance& instance, const CostMatrix& matrix,
                                         const SolveOptions& base_options = {});

}  // namespace vrpvp
