#include "vrpvp/svg.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace vrpvp {

namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd",
    "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

}  // namespace

std::string render_svg(const Instance& instance, const SolveReport& report) {
  double min_x = instance.depot_x, max_x = instance.depot_x;
  double min_y = instance.depot_y, max_y = instance.depot_y;
  for (const Site& s : instance.sites) {
    min_x = std::min(min_x, s.x);
    max_x = std::max(max_x, s.x);
    min_y = std::min(min_y, s.y);
    max_y = std::max(max_y, s.y);
  }
  const double span_x = std::max(max_x - min_x, 1e-9);
  const double span_y = std::max(max_y - min_y, 1e-9);
  const double margin_x = 0.05 * span_x;
  const double margin_y = 0.05 * span_y;

  // y axis flipped so north is up.
  const double scale = 800.0 / std::max(span_x + 2 * margin_x, span_y + 2 * margin_y);
  auto px = [&](double x) { return (x - min_x + margin_x) * scale; };
  auto py = [&](double y) { return (max_y - y + margin_y) * scale; };
  const double width = (span_x + 2 * margin_x) * scale;
  const double height = (span_y + 2 * margin_y) * scale;
  const double marker = std::max(3.0, 0.008 * std::max(width, height));

  std::vector<char> visited(instance.sites.size() + 1, 0);
  for (const auto& route : report.routes)
    for (int id : route.tour)
      if (id > 0) visited[static_cast<std::size_t>(id)] = 1;

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
     << "\">\n";
  os << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  for (std::size_t r = 0; r < report.routes.size(); ++r) {
    const auto& route = report.routes[r];
    os << "  <polyline fill=\"none\" stroke=\"" << kPalette[r % kPalette.size()]
       << "\" stroke-width=\"" << marker / 2 << "\" points=\"";
    for (std::size_t i = 0; i < route.tour.size(); ++i) {
      const int id = route.tour[i];
      const double x = id == 0 ? instance.depot_x : instance.site(id).x;
      const double y = id == 0 ? instance.depot_y : instance.site(id).y;
      if (i) os << " ";
      os << px(x) << "," << py(y);
    }
    os << "\"/>\n";
  }

  for (const Site& s : instance.sites) {
    const bool v = visited[static_cast<std::size_t>(s.id)] != 0;
    os << "  <circle cx=\"" << px(s.x) << "\" cy=\"" << py(s.y) << "\" r=\"" << marker
       << "\" fill=\"" << (v ? "#333333" : "none") << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  }
  os << "  <rect x=\"" << px(instance.depot_x) - marker << "\" y=\""
     << py(instance.depot_y) - marker << "\" width=\"" << 2 * marker << "\" height=\""
     << 2 * marker << "\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace vrpvp
