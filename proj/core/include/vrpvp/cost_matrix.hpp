#pragma once

#include <array>
#include <string>
#include <vector>

#include "vrpvp/model.hpp"

namespace vrpvp {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kDefaultWalkSpeedKmh = 4.5;

/// Dense (n_sites+1)^2 arc-cost matrix, depot at index 0.
/// Immutable after construction.
struct CostMatrix {
  enum class Unit { Km, Hours };

  int dim = 0;
  Unit unit = Unit::Km;
  bool symmetric = true;
  std::vector<double> cost;  // row-major

  double at(int i, int j) const { return cost[static_cast<std::size_t>(i) * dim + j]; }
  double& at(int i, int j) { return cost[static_cast<std::size_t>(i) * dim + j]; }

  /// Triangle-inequality check (full scan for small matrices, fixed-seed
  /// sampling beyond). Used to gate monotone subset pruning in pricing.
  /// The default-tolerance result is cached on first use.
  bool triangle_holds(double tol = 1e-9) const;

 private:
  mutable int triangle_cache_ = -1;  // -1 unknown, else 0/1 at the default tol
};

CostMatrix euclidean_matrix(const Instance& instance);

/// Great-circle travel times in hours at the given speed. Site coordinates
/// are (x = longitude, y = latitude) in degrees.
CostMatrix haversine_matrix(const Instance& instance, double speed_kmh);

/// CSV with a "unit,km" or "unit,hours" header line followed by
/// expected_dimension rows of comma-separated entries.
CostMatrix load_matrix_csv(const std::string& text, int expected_dimension);
std::string serialize_matrix_csv(const CostMatrix& matrix);

/// One blocking request against an OSRM-style table endpoint:
/// GET {endpoint}/table/v1/driving/lon,lat;lon,lat;... and a JSON body with a
/// square "durations" array in seconds. Returned matrix is in hours.
/// coordinates[0] is the depot; entries are (longitude, latitude).
CostMatrix fetch_remote_table(const std::string& endpoint,
                              const std::vector<std::array<double, 2>>& coordinates);

/// Resolves instance.metric. For Matrix metrics the file is resolved
/// relative to base_dir unless the path is absolute.
CostMatrix cost_matrix_for(const Instance& instance, const std::string& base_dir = ".");

}  // namespace vrpvp
