#pragma once

#include <string>

#include "doi2/sturmian.hpp"

namespace doi2 {

// Deterministic SVG for a turtle path: one polyline plus one circle per
// marked point, lattice coordinates scaled by `unit`.  Pure text, no
// timestamps, so reruns are byte-identical.
struct SvgOptions {
  unsigned unit = 4;
  std::string stroke = "black";
  std::string mark_color = "red";
};

std::string planar_path_svg(const PlanarPath& path, const SvgOptions& opts = {});

}  // namespace doi2
