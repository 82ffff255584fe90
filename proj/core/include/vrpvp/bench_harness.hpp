#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vrpvp/solver.hpp"

namespace vrpvp {

struct BenchmarkRow {
  std::string name;
  int n_sites = 0;
  int n_routes = 0;
  double budget = 0.0;
  double z_lp = 0.0;
  double z_mip = 0.0;
  double gap_pct = 0.0;
  double time_s = 0.0;
  long columns = 0;
  bool ok = true;
  std::string error;
};

/// Converts every Chao-style file in the directory with the given
/// stakeholder count and seed, solves it in max-min mode, and emits one row
/// per file. Unreadable files produce a row with ok = false.
std::vector<BenchmarkRow> run_benchmark(const std::string& directory, int n_stakeholders,
                                        std::uint64_t seed, const SolveOptions& options = {});

/// CSV columns: name,n_sites,n_routes,budget,z_lp,z_mip,gap_pct,time_s,columns
std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace vrpvp
