#include "vrpvp/model.hpp"

#include "vrpvp/site_set.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace vrpvp {

namespace {

using nlohmann::json;

Metric parse_metric(const std::string& text) {
  Metric m;
  if (text == "euclidean") {
    m.kind = MetricKind::Euclidean;
  } else if (text.rfind("haversine:", 0) == 0) {
    m.kind = MetricKind::Haversine;
    try {
      m.speed_kmh = std::stod(text.substr(10));
    } catch (const std::exception&) {
      throw ParseError("metric: bad haversine speed in '" + text + "'");
    }
    if (!(m.speed_kmh > 0)) throw ParseError("metric: haversine speed must be positive");
  } else if (text.rfind("matrix:", 0) == 0) {
    m.kind = MetricKind::Matrix;
    m.matrix_path = text.substr(7);
    if (m.matrix_path.empty()) throw ParseError("metric: empty matrix path");
  } else {
    throw ParseError("metric: unknown metric '" + text + "'");
  }
  return m;
}

std::string metric_string(const Metric& m) {
  switch (m.kind) {
    case MetricKind::Euclidean:
      return "euclidean";
    case MetricKind::Haversine: {
      std::ostringstream os;
      os.precision(17);
      os << "haversine:" << m.speed_kmh;
      return os.str();
    }
    case MetricKind::Matrix:
      return "matrix:" + m.matrix_path;
  }
  return "euclidean";
}

std::vector<double> get_reals(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw ParseError(std::string(key) + ": missing");
    return {};
  }
  if (!j.at(key).is_array()) throw ParseError(std::string(key) + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ParseError(std::string(key) + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

void require_nonnegative(const std::vector<double>& v, const char* what) {
  for (double e : v)
    if (e < 0) throw ParseError(std::string(what) + ": negative entry");
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be an object");

  Instance inst;
  try {
    inst.name = doc.value("name", std::string{});
    inst.n_stakeholders = doc.at("n_stakeholders").get<int>();
    inst.max_routes = doc.at("max_routes").get<int>();
    const auto& depot = doc.at("depot");
    inst.depot_x = depot.at("x").get<double>();
    inst.depot_y = depot.at("y").get<double>();
    inst.metric = parse_metric(doc.at("metric").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }

  auto& res = inst.resources;
  res.route_budget = get_reals(doc, "route_budget", true);
  res.mission_budget = get_reals(doc, "mission_budget", false);
  if (doc.contains("coef")) {
    const auto& coef = doc.at("coef");
    res.on_arc_route = get_reals(coef, "c_d", true);
    res.on_site_route = get_reals(coef, "c_r", true);
    res.on_arc_mission = get_reals(coef, "d_d", false);
    res.on_site_mission = get_reals(coef, "d_r", false);
  } else {
    throw ParseError("coef: missing");
  }
  if (res.route_budget.empty()) throw ParseError("route_budget: at least one entry required");
  require_nonnegative(res.route_budget, "route_budget");
  require_nonnegative(res.mission_budget, "mission_budget");
  require_nonnegative(res.on_arc_route, "coef.c_d");
  require_nonnegative(res.on_site_route, "coef.c_r");
  require_nonnegative(res.on_arc_mission, "coef.d_d");
  require_nonnegative(res.on_site_mission, "coef.d_r");
  if (res.on_arc_route.size() != res.route_budget.size() ||
      res.on_site_route.size() != res.route_budget.size())
    throw ParseError("coef: c_d/c_r length must equal route_budget length");
  if (res.on_arc_mission.size() != res.mission_budget.size() ||
      res.on_site_mission.size() != res.mission_budget.size())
    throw ParseError("coef: d_d/d_r length must equal mission_budget length");

  if (!doc.contains("sites") || !doc.at("sites").is_array())
    throw ParseError("sites: missing or not an array");
  int expected_id = 1;
  for (const auto& sj : doc.at("sites")) {
    Site s;
    try {
      s.id = sj.at("id").get<int>();
      s.x = sj.at("x").get<double>();
      s.y = sj.at("y").get<double>();
      s.stay_hours = sj.at("stay_hours").get<double>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("sites: malformed entry: ") + e.what());
    }
    s.profits = get_reals(sj, "profits", true);
    if (s.id != expected_id)
      throw ParseError("sites: ids must be contiguous 1..n in order (got " +
                       std::to_string(s.id) + ", expected " + std::to_string(expected_id) + ")");
    if (static_cast<int>(s.profits.size()) != inst.n_stakeholders)
      throw ParseError("site " + std::to_string(s.id) + ": profit row length " +
                       std::to_string(s.profits.size()) + " != n_stakeholders " +
                       std::to_string(inst.n_stakeholders));
    if (s.stay_hours < 0)
      throw ParseError("site " + std::to_string(s.id) + ": negative stay time");
    inst.sites.push_back(std::move(s));
    ++expected_id;
  }
  if (inst.sites.empty()) throw ParseError("sites: at least one site required");
  if (inst.n_stakeholders < 1) throw ParseError("n_stakeholders must be >= 1");
  if (inst.max_routes < 1) throw ParseError("max_routes must be >= 1");
  if (inst.n_sites() >= SiteSet::kMaxSites)
    throw ParseError("too many sites (limit " + std::to_string(SiteSet::kMaxSites - 1) + ")");
  return inst;
}

std::string serialize_instance(const Instance& instance) {
  json doc;
  doc["name"] = instance.name;
  doc["n_stakeholders"] = instance.n_stakeholders;
  doc["max_routes"] = instance.max_routes;
  doc["depot"] = {{"x", instance.depot_x}, {"y", instance.depot_y}};
  doc["metric"] = metric_string(instance.metric);
  doc["route_budget"] = instance.resources.route_budget;
  doc["mission_budget"] = instance.resources.mission_budget;
  doc["coef"] = {{"c_d", instance.resources.on_arc_route},
                 {"c_r", instance.resources.on_site_route},
                 {"d_d", instance.resources.on_arc_mission},
                 {"d_r", instance.resources.on_site_mission}};
  json sites = json::array();
  for (const auto& s : instance.sites) {
    sites.push_back({{"id", s.id},
                     {"x", s.x},
                     {"y", s.y},
                     {"stay_hours", s.stay_hours},
                     {"profits", s.profits}});
  }
  doc["sites"] = std::move(sites);
  return doc.dump(2);
}

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> out;
  if (instance.n_stakeholders < 1) out.push_back("n_stakeholders must be >= 1");
  if (instance.max_routes < 1) out.push_back("max_routes must be >= 1");
  if (instance.sites.empty()) out.push_back("instance must have at least one site");

  const auto& r = instance.resources;
  if (r.route_budget.empty()) out.push_back("route_budget: at least one entry required");
  auto check_len = [&out](const std::vector<double>& v, std::size_t n, const char* name) {
    if (v.size() != n) out.push_back(std::string(name) + ": length mismatch");
  };
  check_len(r.on_arc_route, r.route_budget.size(), "coef.c_d");
  check_len(r.on_site_route, r.route_budget.size(), "coef.c_r");
  check_len(r.on_arc_mission, r.mission_budget.size(), "coef.d_d");
  check_len(r.on_site_mission, r.mission_budget.size(), "coef.d_r");
  auto check_nonneg = [&out](const std::vector<double>& v, const char* name) {
    for (double e : v)
      if (e < 0) {
        out.push_back(std::string(name) + ": negative entry");
        break;
      }
  };
  check_nonneg(r.route_budget, "route_budget");
  check_nonneg(r.mission_budget, "mission_budget");
  check_nonneg(r.on_arc_route, "coef.c_d");
  check_nonneg(r.on_site_route, "coef.c_r");
  check_nonneg(r.on_arc_mission, "coef.d_d");
  check_nonneg(r.on_site_mission, "coef.d_r");

  std::unordered_set<int> seen;
  for (std::size_t pos = 0; pos < instance.sites.size(); ++pos) {
    const Site& s = instance.sites[pos];
    std::string tag = "site " + std::to_string(s.id);
    if (!seen.insert(s.id).second) out.push_back(tag + ": duplicate id");
    if (s.id != static_cast<int>(pos) + 1) out.push_back(tag + ": id out of order");
    if (s.stay_hours < 0) out.push_back(tag + ": stay_time negative");
    if (static_cast<int>(s.profits.size()) != instance.n_stakeholders)
      out.push_back(tag + ": profit row length != n_stakeholders");
    for (double p : s.profits)
      if (p < 0) {
        out.push_back(tag + ": negative profit");
        break;
      }
  }
  return out;
}

namespace {

// Deterministic draw independent of library distribution internals.
std::uint64_t bounded_draw(std::mt19937_64& eng, std::uint64_t bound) {
  return eng() % bound;
}

struct TopNode {
  double x, y, score;
};

}  // namespace

Instance convert_chao(const std::string& top_text, int n_stakeholders, std::uint64_t seed) {
  if (n_stakeholders < 2)
    throw ParseError("convert_chao: n_stakeholders must be >= 2");

  std::istringstream in(top_text);
  auto read_header = [&in](const std::string& expected) -> double {
    std::string key;
    double value;
    if (!(in >> key >> value) || key != expected)
      throw ParseError("convert_chao: malformed header, expected '" + expected + "'");
    return value;
  };
  int n_nodes = static_cast<int>(read_header("n"));
  int n_routes = static_cast<int>(read_header("m"));
  double tmax = read_header("tmax");
  if (n_nodes < 3) throw ParseError("convert_chao: need at least start, one site, end");
  if (n_routes < 1) throw ParseError("convert_chao: m must be >= 1");
  if (tmax < 0) throw ParseError("convert_chao: negative tmax");

  std::vector<TopNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) {
    TopNode node{};
    if (!(in >> node.x >> node.y >> node.score))
      throw ParseError("convert_chao: expected " + std::to_string(n_nodes) + " node lines");
    nodes.push_back(node);
  }

  // Start node becomes the depot; the end node is co-located and dropped.
  Instance inst;
  inst.name = "converted-top";
  inst.n_stakeholders = n_stakeholders;
  inst.max_routes = n_routes;
  inst.depot_x = nodes.front().x;
  inst.depot_y = nodes.front().y;
  inst.metric.kind = MetricKind::Euclidean;
  inst.resources.route_budget = {tmax};
  inst.resources.on_arc_route = {1.0};
  inst.resources.on_site_route = {0.0};

  const int n_sites = n_nodes - 2;
  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(n_sites));
  for (int i = 1; i <= n_sites; ++i) scores.push_back(nodes[static_cast<std::size_t>(i)].score);

  std::vector<std::vector<double>> columns(static_cast<std::size_t>(n_stakeholders), scores);
  std::mt19937_64 eng(seed);
  for (int k = 1; k < n_stakeholders; ++k) {
    auto& col = columns[static_cast<std::size_t>(k)];
    for (std::size_t i = col.size(); i > 1; --i) {
      std::size_t j = bounded_draw(eng, i);
      std::swap(col[i - 1], col[j]);
    }
  }

  for (int i = 1; i <= n_sites; ++i) {
    Site s;
    s.id = i;
    s.x = nodes[static_cast<std::size_t>(i)].x;
    s.y = nodes[static_cast<std::size_t>(i)].y;
    s.stay_hours = 0.0;
    for (int k = 0; k < n_stakeholders; ++k)
      s.profits.push_back(columns[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)]);
    inst.sites.push_back(std::move(s));
  }
  return inst;
}

double maxmin_value(const std::vector<double>& sums) {
  if (sums.empty()) throw std::invalid_argument("maxmin_value: empty profit-sum vector");
  return *std::min_element(sums.begin(), sums.end());
}

}  // namespace vrpvp
