#pragma once

// Noise grids, threshold interpolation and number formatting shared by the
// curve generators.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ghzst {

/// Closed range start, start + step, ..., stop within [0, 0.2].
struct EpsGrid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.01;

  std::vector<double> values() const;
};

/// x where the piecewise-linear curve through (xs, ys) first drops from >= level to < level.
std::optional<double> first_downward_crossing(std::span<const double> xs, std::span<const double> ys,
                                              double level);

/// Shortest round-trip-stable decimal form used in every CSV cell.
std::string format_number(double v);

}  // namespace ghzst
