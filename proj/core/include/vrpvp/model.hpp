#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vrpvp {

// Thrown for malformed input documents and dimension mismatches.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A candidate visit site. Coordinates are km for planar instances and
/// (x = longitude, y = latitude) in degrees for geographic ones.
struct Site {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  std::vector<double> profits;  // one entry per stakeholder
  double stay_hours = 0.0;
};

enum class MetricKind { Euclidean, Haversine, Matrix };

struct Metric {
  MetricKind kind = MetricKind::Euclidean;
  double speed_kmh = 0.0;   // haversine only
  std::string matrix_path;  // matrix only
};

/// Per-route and per-mission resource budgets with their on-arc / on-site
/// consumption coefficients. The mission budget may be empty (unconstrained).
struct ResourceModel {
  std::vector<double> route_budget;     // b_r
  std::vector<double> mission_budget;   // b_m
  std::vector<double> on_arc_route;     // c_d, per unit arc cost
  std::vector<double> on_site_route;    // c_r, per stay hour
  std::vector<double> on_arc_mission;   // d_d
  std::vector<double> on_site_mission;  // d_r
};

/// Immutable after construction; safe to share across threads.
struct Instance {
  std::string name;
  int n_stakeholders = 0;
  int max_routes = 0;
  double depot_x = 0.0;
  double depot_y = 0.0;
  Metric metric;
  ResourceModel resources;
  std::vector<Site> sites;  // site i at position i-1, ids are 1..n

  int n_sites() const { return static_cast<int>(sites.size()); }
  const Site& site(int id) const { return sites[static_cast<std::size_t>(id) - 1]; }
};

/// Parses the native JSON instance format. Throws ParseError on malformed
/// documents, dimension mismatches, and negative stay times or budgets.
Instance parse_instance(const std::string& text);

/// Inverse of parse_instance up to field order.
std::string serialize_instance(const Instance& instance);

/// Returns human-readable invariant violations; empty means valid.
std::vector<std::string> validate(const Instance& instance);

/// Converts a Chao-style team-orienteering document (header n/m/tmax, then
/// one "x y score" line per node) into a multi-stakeholder instance.
/// Stakeholder 1 keeps the original scores; stakeholders 2..n get seeded
/// Fisher-Yates permutations of the score column (mt19937_64, modulo draw).
/// The start node becomes the depot and the end node is dropped.
Instance convert_chao(const std::string& top_text, int n_stakeholders, std::uint64_t seed);

/// Minimum entry of a per-stakeholder profit-sum vector.
double maxmin_value(const std::vector<double>& sums);

}  // namespace vrpvp
