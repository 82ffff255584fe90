#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vrpvp/bench_harness.hpp"
#include "vrpvp/cost_matrix.hpp"
#include "vrpvp/model.hpp"
#include "vrpvp/solver.hpp"
#include "vrpvp/svg.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

vrpvp::SolveOptions parse_objective(vrpvp::SolveOptions options, const std::string& text) {
  if (text == "maxmin") {
    options.mode = vrpvp::ObjectiveMode::MaxMin;
  } else if (text.rfind("stakeholder=", 0) == 0) {
    options.mode = vrpvp::ObjectiveMode::Stakeholder;
    options.stakeholder = std::stoi(text.substr(12));
  } else if (text == "sum" || text.rfind("sum=", 0) == 0) {
    options.mode = vrpvp::ObjectiveMode::WeightedSum;
    options.weights.clear();
    if (text.size() > 4) {
      std::istringstream in(text.substr(4));
      std::string tok;
      while (std::getline(in, tok, ',')) options.weights.push_back(std::stod(tok));
    }
  } else {
    throw CLI::ValidationError("--objective",
                               "expected maxmin, stakeholder=K, or sum[=w1,..,wn]");
  }
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-min vector-profit vehicle routing solver"};
  app.require_subcommand(1);

  std::string instance_path, matrix_path, objective = "maxmin", report_format = "text";
  std::string plot_path;
  vrpvp::SolveOptions options;
  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("--instance", instance_path, "instance JSON path")->required();
  solve->add_option("--matrix", matrix_path, "override arc-cost matrix CSV");
  solve->add_option("--objective", objective, "maxmin | stakeholder=K | sum[=w1,..,wn]");
  solve->add_option("--max-columns", options.column_cap, "columns added per pricing round");
  solve->add_option("--iter-cap", options.iteration_cap, "column generation iteration cap");
  solve->add_option("--time-limit", options.time_limit_seconds, "MIP time limit, seconds");
  solve->add_option("--workers", options.workers, "worker threads");
  solve->add_option("--report", report_format, "text | json");
  solve->add_option("--plot", plot_path, "write route map SVG here");

  std::string top_input, top_output;
  int n_stakeholders = 2;
  std::uint64_t seed = 0;
  auto* convert = app.add_subcommand("convert-top", "convert a team-orienteering file");
  convert->add_option("--input", top_input, "input file")->required();
  convert->add_option("--stakeholders", n_stakeholders, "stakeholder count")->required();
  convert->add_option("--seed", seed, "profit shuffle seed")->required();
  convert->add_option("--output", top_output, "output instance JSON")->required();

  std::string bench_dir, bench_out;
  auto* bench = app.add_subcommand("benchmark", "convert and solve a directory of files");
  bench->add_option("--dir", bench_dir, "directory of team-orienteering files")->required();
  bench->add_option("--stakeholders", n_stakeholders, "stakeholder count")->required();
  bench->add_option("--seed", seed, "profit shuffle seed")->required();
  bench->add_option("--out", bench_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      options = parse_objective(options, objective);
      options.report_format = report_format;
      const vrpvp::Instance instance = vrpvp::parse_instance(slurp(instance_path));
      const std::string base_dir =
          std::filesystem::path(instance_path).parent_path().string();
      const vrpvp::CostMatrix matrix =
          matrix_path.empty()
              ? vrpvp::cost_matrix_for(instance, base_dir.empty() ? "." : base_dir)
              : vrpvp::load_matrix_csv(slurp(matrix_path), instance.n_sites() + 1);
      const vrpvp::SolveReport report = vrpvp::solve_vrpvp(instance, matrix, options);
      std::cout << (report_format == "json" ? vrpvp::report_to_json(report)
                                            : vrpvp::report_to_text(report));
      if (report_format == "json") std::cout << "\n";
      if (!plot_path.empty()) spit(plot_path, vrpvp::render_svg(instance, report));
    } else if (*convert) {
      const vrpvp::Instance instance =
          vrpvp::convert_chao(slurp(top_input), n_stakeholders, seed);
      spit(top_output, vrpvp::serialize_instance(instance));
    } else if (*bench) {
      const auto rows = vrpvp::run_benchmark(bench_dir, n_stakeholders, seed);
      spit(bench_out, vrpvp::benchmark_to_csv(rows));
      for (const auto& row : rows)
        if (!row.ok) {
          std::cerr << "warning: " << row.name << ": " << row.error << "\n";
          return 1;
        }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
