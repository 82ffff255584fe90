#include "vrpvp/cost_matrix.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

namespace vrpvp {

namespace {

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double deg = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * deg;
  const double dlon = (lon2 - lon1) * deg;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * deg) * std::cos(lat2 * deg) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

CostMatrix from_pairwise(const Instance& instance, CostMatrix::Unit unit,
                         const std::function<double(double, double, double, double)>& dist) {
  CostMatrix m;
  m.dim = instance.n_sites() + 1;
  m.unit = unit;
  m.symmetric = true;
  m.cost.assign(static_cast<std::size_t>(m.dim) * m.dim, 0.0);
  auto coord = [&instance](int i) -> std::pair<double, double> {
    if (i == 0) return {instance.depot_x, instance.depot_y};
    const Site& s = instance.site(i);
    return {s.x, s.y};
  };
  for (int i = 0; i < m.dim; ++i) {
    auto [xi, yi] = coord(i);
    for (int j = i + 1; j < m.dim; ++j) {
      auto [xj, yj] = coord(j);
      const double d = dist(xi, yi, xj, yj);
      m.at(i, j) = d;
      m.at(j, i) = d;
    }
  }
  return m;
}

}  // namespace

bool CostMatrix::triangle_holds(double tol) const {
  const bool default_tol = tol == 1e-9;
  if (default_tol && triangle_cache_ >= 0) return triangle_cache_ != 0;
  const bool holds = [&] {
    if (dim <= 150) {
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int k = 0; k < dim; ++k)
            if (at(i, k) > at(i, j) + at(j, k) + tol) return false;
      return true;
    }
    std::mt19937_64 eng(0x5eedu);
    for (int s = 0; s < 200000; ++s) {
      int i = static_cast<int>(eng() % static_cast<std::uint64_t>(dim));
      int j = static_cast<int>(eng() % static_cast<std::uint64_t>(dim));
      int k = static_cast<int>(eng() % static_cast<std::uint64_t>(dim));
      if (at(i, k) > at(i, j) + at(j, k) + tol) return false;
    }
    return true;
  }();
  if (default_tol) triangle_cache_ = holds ? 1 : 0;
  return holds;
}

CostMatrix euclidean_matrix(const Instance& instance) {
  return from_pairwise(instance, CostMatrix::Unit::Km,
                       [](double x1, double y1, double x2, double y2) {
                         return std::hypot(x1 - x2, y1 - y2);
                       });
}

CostMatrix haversine_matrix(const Instance& instance, double speed_kmh) {
  if (!(speed_kmh > 0)) throw std::invalid_argument("haversine_matrix: speed must be positive");
  // Site coordinates are (x = longitude, y = latitude).
  return from_pairwise(instance, CostMatrix::Unit::Hours,
                       [speed_kmh](double x1, double y1, double x2, double y2) {
                         return haversine_km(y1, x1, y2, x2) / speed_kmh;
                       });
}

CostMatrix load_matrix_csv(const std::string& text, int expected_dimension) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("matrix csv: empty document");
  // strip potential \r
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();

  CostMatrix m;
  if (line == "unit,km")
    m.unit = CostMatrix::Unit::Km;
  else if (line == "unit,hours")
    m.unit = CostMatrix::Unit::Hours;
  else
    throw ParseError("matrix csv: missing unit header ('unit,km' or 'unit,hours')");

  m.dim = expected_dimension;
  m.cost.reserve(static_cast<std::size_t>(m.dim) * m.dim);
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string cell;
    int cols = 0;
    while (std::getline(row, cell, ',')) {
      double v;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw ParseError("matrix csv: bad entry '" + cell + "'");
      }
      if (v < 0) throw ParseError("matrix csv: negative entry");
      if (!std::isfinite(v)) throw ParseError("matrix csv: non-finite entry");
      m.cost.push_back(v);
      ++cols;
    }
    if (cols != expected_dimension)
      throw ParseError("matrix csv: row " + std::to_string(rows) + " has " +
                       std::to_string(cols) + " entries, expected " +
                       std::to_string(expected_dimension));
    ++rows;
  }
  if (rows != expected_dimension)
    throw ParseError("matrix csv: " + std::to_string(rows) + " rows, expected " +
                     std::to_string(expected_dimension));
  m.symmetric = true;
  for (int i = 0; i < m.dim && m.symmetric; ++i)
    for (int j = i + 1; j < m.dim; ++j)
      if (m.at(i, j) != m.at(j, i)) {
        m.symmetric = false;
        break;
      }
  return m;
}

std::string serialize_matrix_csv(const CostMatrix& matrix) {
  std::ostringstream os;
  os.precision(17);
  os << (matrix.unit == CostMatrix::Unit::Km ? "unit,km" : "unit,hours") << "\n";
  for (int i = 0; i < matrix.dim; ++i) {
    for (int j = 0; j < matrix.dim; ++j) {
      if (j) os << ",";
      os << matrix.at(i, j);
    }
    os << "\n";
  }
  return os.str();
}

CostMatrix fetch_remote_table(const std::string& endpoint,
                              const std::vector<std::array<double, 2>>& coordinates) {
  if (coordinates.empty()) throw std::invalid_argument("fetch_remote_table: no coordinates");

  std::string host = endpoint;
  std::string base_path;
  // split a path suffix off the endpoint, e.g. http://host:port/prefix
  auto scheme = host.find("://");
  auto slash = host.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    base_path = host.substr(slash);
    host = host.substr(0, slash);
  }
  if (!base_path.empty() && base_path.back() == '/') base_path.pop_back();

  std::ostringstream path;
  path << base_path << "/table/v1/driving/";
  path.precision(12);
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (i) path << ";";
    path << coordinates[i][0] << "," << coordinates[i][1];
  }

  httplib::Client client(host);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto res = client.Get(path.str());
  if (!res)
    throw std::runtime_error("fetch_remote_table: transport failure contacting " + host);
  if (res->status != 200)
    throw std::runtime_error("fetch_remote_table: HTTP " + std::to_string(res->status));

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("fetch_remote_table: bad JSON body: ") + e.what());
  }
  if (!body.contains("durations") || !body["durations"].is_array())
    throw std::runtime_error("fetch_remote_table: response missing 'durations'");

  const int n = static_cast<int>(coordinates.size());
  CostMatrix m;
  m.dim = n;
  m.unit = CostMatrix::Unit::Hours;
  m.cost.assign(static_cast<std::size_t>(n) * n, 0.0);
  const auto& durations = body["durations"];
  if (static_cast<int>(durations.size()) != n)
    throw std::runtime_error("fetch_remote_table: durations has " +
                             std::to_string(durations.size()) + " rows, expected " +
                             std::to_string(n));
  for (int i = 0; i < n; ++i) {
    const auto& row = durations[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::runtime_error("fetch_remote_table: row " + std::to_string(i) +
                               " has wrong length");
    for (int j = 0; j < n; ++j) {
      double seconds = row[static_cast<std::size_t>(j)].get<double>();
      if (seconds < 0 || !std::isfinite(seconds))
        throw std::runtime_error("fetch_remote_table: bad duration entry");
      m.at(i, j) = seconds / 3600.0;
    }
  }
  m.symmetric = true;
  for (int i = 0; i < n && m.symmetric; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m.at(i, j) != m.at(j, i)) {
        m.symmetric = false;
        break;
      }
  return m;
}

CostMatrix cost_matrix_for(const Instance& instance, const std::string& base_dir) {
  switch (instance.metric.kind) {
    case MetricKind::Euclidean:
      return euclidean_matrix(instance);
    case MetricKind::Haversine:
      return haversine_matrix(instance, instance.metric.speed_kmh);
    case MetricKind::Matrix: {
      std::filesystem::path p(instance.metric.matrix_path);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      std::ifstream in(p);
      if (!in) throw std::runtime_error("cost_matrix_for: cannot open " + p.string());
      std::ostringstream buf;
      buf << in.rdbuf();
      return load_matrix_csv(buf.str(), instance.n_sites() + 1);
    }
  }
  throw std::logic_error("cost_matrix_for: unknown metric");
}

}  // namespace vrpvp
