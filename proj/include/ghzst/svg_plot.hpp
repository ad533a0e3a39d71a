#pragma once

// Minimal static SVG line chart: axes, ticks, one polyline, optional
// horizontal reference line.

#include <optional>
#include <string>
#include <vector>

namespace ghzst {

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;
  std::vector<double> ys;
  std::optional<double> reference_y;
};

std::string render_svg(const LineChart& chart);

}  // namespace ghzst
