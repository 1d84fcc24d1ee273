#include "doi2/svg_path.hpp"

#include <algorithm>
#include <stdexcept>

namespace doi2 {

std::string planar_path_svg(const PlanarPath& path, const SvgOptions& opts) {
  if (path.points.empty()) throw std::invalid_argument("path has no points");
  if (opts.unit < 1) throw std::invalid_argument("unit must be >= 1");
  path.validate();

  long long min_x = path.points[0].first, max_x = min_x;
  long long min_y = path.points[0].second, max_y = min_y;
  for (const auto& [x, y] : path.points) {
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  const long long unit = opts.unit;
  const long long margin = unit;
  const long long width = (max_x - min_x) * unit + 2 * margin;
  const long long height = (max_y - min_y) * unit + 2 * margin;
  // SVG y grows downward; flip so "up" steps rise in the image.
  const auto sx = [&](long long x) { return (x - min_x) * unit + margin; };
  const auto sy = [&](long long y) { return (max_y - y) * unit + margin; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\">\n";
  svg += "<polyline fill=\"none\" stroke=\"" + opts.stroke + "\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    if (i) svg += " ";
    svg += std::to_string(sx(path.points[i].first)) + "," +
           std::to_string(sy(path.points[i].second));
  }
  svg += "\"/>\n";
  const long long radius = std::max(1ll, unit / 2);
  for (std::size_t m : path.marks) {
    svg += "<circle cx=\"" + std::to_string(sx(path.points[m].first)) + "\" cy=\"" +
           std::to_string(sy(path.points[m].second)) + "\" r=\"" + std::to_string(radius) +
           "\" fill=\"" + opts.mark_color + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace doi2
