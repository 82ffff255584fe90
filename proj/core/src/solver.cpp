#include "vrpvp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vrpvp {

namespace {

std::string objective_label(const SolveOptions& options, int n_stakeholders) {
  switch (options.mode) {
    case ObjectiveMode::MaxMin:
      return "maxmin";
    case ObjectiveMode::Stakeholder:
      return "stakeholder=" + std::to_string(options.stakeholder);
    case ObjectiveMode::WeightedSum: {
      std::ostringstream os;
      os << "sum=";
      std::vector<double> w = options.weights;
      if (w.empty()) w.assign(static_cast<std::size_t>(n_stakeholders), 1.0);
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) os << ",";
        os << w[k];
      }
      return os.str();
    }
  }
  return "maxmin";
}

// Stakeholder / weighted-sum modes run the identical pipeline on an instance
// whose profit matrix is projected to a single row.
Instance project_instance(const Instance& instance, const SolveOptions& options) {
  if (options.mode == ObjectiveMode::MaxMin) return instance;
  Instance proj = instance;
  proj.n_stakeholders = 1;
  if (options.mode == ObjectiveMode::Stakeholder) {
    if (options.stakeholder < 1 || options.stakeholder > instance.n_stakeholders)
      throw std::invalid_argument("solve_vrpvp: stakeholder index out of range");
    for (auto& s : proj.sites)
      s.profits = {s.profits[static_cast<std::size_t>(options.stakeholder - 1)]};
  } else {
    std::vector<double> w = options.weights;
    if (w.empty()) w.assign(static_cast<std::size_t>(instance.n_stakeholders), 1.0);
    if (static_cast<int>(w.size()) != instance.n_stakeholders)
      throw std::invalid_argument("solve_vrpvp: weight vector length != n_stakeholders");
    double wsum = 0.0;
    for (double v : w) {
      if (v < 0) throw std::invalid_argument("solve_vrpvp: negative weight");
      wsum += v;
    }
    if (wsum <= 0) throw std::invalid_argument("solve_vrpvp: weights must not be all zero");
    for (auto& s : proj.sites) {
      double p = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) p += w[k] * s.profits[k];
      s.profits = {p};
    }
  }
  return proj;
}

}  // namespace

GapResult optimality_gap(double j_lp_minform, double j_mip_minform) {
  GapResult g;
  g.absolute = j_lp_minform - j_mip_minform;  // <= 0 in min form
  if (j_lp_minform == 0.0) {
    g.relative = (j_mip_minform == 0.0);
    g.percent = 0.0;
    if (!g.relative) g.absolute = j_mip_minform - j_lp_minform;
    return g;
  }
  g.relative = true;
  g.percent = (j_lp_minform - j_mip_minform) / j_lp_minform * 100.0;
  g.absolute = j_mip_minform - j_lp_minform;
  return g;
}

SolveReport solve_vrpvp(const Instance& instance, const CostMatrix& matrix,
                        const SolveOptions& options) {
  if (matrix.dim != instance.n_sites() + 1)
    throw std::invalid_argument("solve_vrpvp: matrix dimension != n_sites + 1");
  {
    const auto violations = validate(instance);
    if (!violations.empty())
      throw std::invalid_argument("solve_vrpvp: invalid instance: " + violations.front());
  }

  const auto t0 = std::chrono::steady_clock::now();
  const Instance work = project_instance(instance, options);

  TspCache cache;
  RelaxationOptions relax_options;
  relax_options.column_cap = options.column_cap;
  relax_options.iteration_cap = options.iteration_cap;
  RelaxationResult relax = solve_relaxation(work, matrix, relax_options, &cache);

  MipOptions mip_options;
  mip_options.time_limit_seconds = options.time_limit_seconds;
  const auto t1 = std::chrono::steady_clock::now();
  IntegerSolution mip = solve_restricted_mip(relax.pool, work, mip_options);
  const auto t2 = std::chrono::steady_clock::now();

  SolveReport rep;
  rep.instance_name = instance.name;
  rep.objective = objective_label(options, instance.n_stakeholders);
  rep.z_lp = relax.z_lp;
  rep.z_mip = mip.z_value;
  rep.lp_converged = relax.converged;
  rep.gap = optimality_gap(relax.j_lp, -mip.z_value);
  rep.iterations = relax.iterations;
  rep.generated_columns = static_cast<long>(relax.pool.size());
  rep.bb_nodes = mip.nodes;

  // Re-evaluate the selection against the original profit vectors.
  std::vector<Column> selected;
  for (int j : mip.selected) {
    Column col = relax.pool.columns()[static_cast<std::size_t>(j)];
    col.profits.assign(static_cast<std::size_t>(instance.n_stakeholders), 0.0);
    for (int id : col.sites.ids())
      for (int k = 0; k < instance.n_stakeholders; ++k)
        col.profits[static_cast<std::size_t>(k)] +=
            instance.site(id).profits[static_cast<std::size_t>(k)];
    selected.push_back(std::move(col));
  }
  const EvaluationReport eval = evaluate_solution(selected, instance);
  rep.stakeholder_sums = eval.stakeholder_sums;
  rep.mission_usage = eval.mission_usage;
  for (const Column& col : selected) {
    RouteReport rr;
    rr.tour = col.tour;
    rr.tsp_cost = col.tsp_cost;
    rr.route_usage = col.route_usage;
    rr.time_hours = col.route_usage.empty() ? 0.0 : col.route_usage.front();
    rr.profits = col.profits;
    rep.routes.push_back(std::move(rr));
  }

  rep.relaxation_seconds = std::chrono::duration<double>(t1 - t0).count();
  rep.mip_seconds = std::chrono::duration<double>(t2 - t1).count();
  rep.total_seconds = std::chrono::duration<double>(t2 - t0).count();
  return rep;
}

std::string report_to_json(const SolveReport& report) {
  nlohmann::json j;
  j["instance"] = report.instance_name;
  j["objective"] = report.objective;
  j["z_lp"] = report.z_lp;
  j["z_mip"] = report.z_mip;
  j["gap"] = {{"percent", report.gap.percent},
              {"relative", report.gap.relative},
              {"absolute", report.gap.absolute}};
  j["lp_converged"] = report.lp_converged;
  j["stakeholder_sums"] = report.stakeholder_sums;
  j["mission_usage"] = report.mission_usage;
  nlohmann::json routes = nlohmann::json::array();
  for (const auto& r : report.routes)
    routes.push_back({{"tour", r.tour},
                      {"tsp_cost", r.tsp_cost},
                      {"time_hours", r.time_hours},
                      {"route_usage", r.route_usage},
                      {"profits", r.profits}});
  j["routes"] = std::move(routes);
  j["counters"] = {{"iterations", report.iterations},
                   {"generated_columns", report.generated_columns},
                   {"bb_nodes", report.bb_nodes}};
  j["timing"] = {{"relaxation_s", report.relaxation_seconds},
                 {"mip_s", report.mip_seconds},
                 {"total_s", report.total_seconds}};
  return j.dump(2);
}

SolveReport report_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  SolveReport rep;
  rep.instance_name = j.at("instance").get<std::string>();
  rep.objective = j.at("objective").get<std::string>();
  rep.z_lp = j.at("z_lp").get<double>();
  rep.z_mip = j.at("z_mip").get<double>();
  rep.gap.percent = j.at("gap").at("percent").get<double>();
  rep.gap.relative = j.at("gap").at("relative").get<bool>();
  rep.gap.absolute = j.at("gap").at("absolute").get<double>();
  rep.lp_converged = j.at("lp_converged").get<bool>();
  rep.stakeholder_sums = j.at("stakeholder_sums").get<std::vector<double>>();
  rep.mission_usage = j.at("mission_usage").get<std::vector<double>>();
  for (const auto& r : j.at("routes")) {
    RouteReport rr;
    rr.tour = r.at("tour").get<std::vector<int>>();
    rr.tsp_cost = r.at("tsp_cost").get<double>();
    rr.time_hours = r.at("time_hours").get<double>();
    rr.route_usage = r.at("route_usage").get<std::vector<double>>();
    rr.profits = r.at("profits").get<std::vector<double>>();
    rep.routes.push_back(std::move(rr));
  }
  rep.iterations = j.at("counters").at("iterations").get<int>();
  rep.generated_columns = j.at("counters").at("generated_columns").get<long>();
  rep.bb_nodes = j.at("counters").at("bb_nodes").get<long>();
  rep.relaxation_seconds = j.at("timing").at("relaxation_s").get<double>();
  rep.mip_seconds = j.at("timing").at("mip_s").get<double>();
  rep.total_seconds = j.at("timing").at("total_s").get<double>();
  return rep;
}

std::string report_to_text(const SolveReport& report) {
  std::ostringstream os;
  os.precision(6);
  os << "instance:  " << report.instance_name << "\n";
  os << "objective: " << report.objective << "\n";
  os << "z_lp = " << report.z_lp << "   z_mip = " << report.z_mip << "   gap = ";
  if (report.gap.relative)
    os << report.gap.percent << " %\n";
  else
    os << "unbounded-relative (absolute " << report.gap.absolute << ")\n";
  if (!report.lp_converged) os << "WARNING: relaxation not converged; gap uses best LP bound\n";
  for (std::size_t r = 0; r < report.routes.size(); ++r) {
    const auto& route = report.routes[r];
    os << "route " << (r + 1) << ": ";
    for (std::size_t i = 0; i < route.tour.size(); ++i) {
      if (i) os << " - ";
      os << (route.tour[i] == 0 ? std::string("depot") : std::to_string(route.tour[i]));
    }
    os << "   time " << route.time_hours << "   profits";
    for (double p : route.profits) os << " " << p;
    os << "\n";
  }
  os << "stakeholder sums:";
  for (double s : report.stakeholder_sums) os << " " << s;
  os << "\n";
  if (!report.mission_usage.empty()) {
    os << "mission usage:";
    for (double u : report.mission_usage) os << " " << u;
    os << "\n";
  }
  os << "iterations " << report.iterations << ", columns " << report.generated_columns
     << ", nodes " << report.bb_nodes << ", time " << report.total_seconds << " s\n";
  return os.str();
}

std::vector<ComparisonRow> compare_modes(const Instance& instance, const CostMatrix& matrix,
                                         const SolveOptions& base_options) {
  std::vector<ComparisonRow> rows;
  auto run = [&](SolveOptions options, const std::string& label) {
    options.report_format = base_options.report_format;
    const SolveReport rep = solve_vrpvp(instance, matrix, options);
    ComparisonRow row;
    row.label = label;
    row.stakeholder_sums = rep.stakeholder_sums;
    row.minimum = rep.stakeholder_sums.empty() ? 0.0 : maxmin_value(rep.stakeholder_sums);
    row.total = std::accumulate(rep.stakeholder_sums.begin(), rep.stakeholder_sums.end(), 0.0);
    rows.push_back(std::move(row));
  };

  SolveOptions opt = base_options;
  opt.mode = ObjectiveMode::MaxMin;
  run(opt, "maxmin");
  for (int k = 1; k <= instance.n_stakeholders; ++k) {
    opt.mode = ObjectiveMode::Stakeholder;
    opt.stakeholder = k;
    run(opt, "stakeholder=" + std::to_string(k));
  }
  opt.mode = ObjectiveMode::WeightedSum;
  opt.weights.clear();
  run(opt, "sum");
  return rows;
}

}  // namespace vrpvp
