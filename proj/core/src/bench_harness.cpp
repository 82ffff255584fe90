#include "vrpvp/bench_harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vrpvp/cost_matrix.hpp"

namespace vrpvp {

namespace fs = std::filesystem;

std::vector<BenchmarkRow> run_benchmark(const std::string& directory, int n_stakeholders,
                                        std::uint64_t seed, const SolveOptions& options) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<BenchmarkRow> rows;
  for (const fs::path& path : files) {
    BenchmarkRow row;
    row.name = path.stem().string();
    try {
      std::ifstream in(path);
      if (!in) throw ParseError("cannot open " + path.string());
      std::ostringstream buf;
      buf << in.rdbuf();
      Instance instance = convert_chao(buf.str(), n_stakeholders, seed);
      instance.name = row.name;
      row.n_sites = instance.n_sites();
      row.n_routes = instance.max_routes;
      row.budget = instance.resources.route_budget.empty()
                       ? 0.0
                       : instance.resources.route_budget.front();

      SolveOptions run_options = options;
      run_options.mode = ObjectiveMode::MaxMin;
      const CostMatrix matrix = cost_matrix_for(instance, directory);
      const SolveReport rep = solve_vrpvp(instance, matrix, run_options);
      row.z_lp = rep.z_lp;
      row.z_mip = rep.z_mip;
      row.gap_pct = rep.gap.percent;
      row.time_s = rep.total_seconds;
      row.columns = rep.generated_columns;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "name,n_sites,n_routes,budget,z_lp,z_mip,gap_pct,time_s,columns\n";
  for (const BenchmarkRow& row : rows) {
    if (!row.ok) continue;
    os << row.name << "," << row.n_sites << "," << row.n_routes << "," << row.budget << ","
       << row.z_lp << "," << row.z_mip << "," << row.gap_pct << "," << row.time_s << ","
       << row.columns << "\n";
  }
  return os.str();
}

}  // namespace vrpvp
