#include "ghzst/curves.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ghzst/errors.hpp"

namespace ghzst {

std::vector<double> EpsGrid::values() const {
  if (!(start >= 0.0 && stop <= 0.2 && start <= stop))
    throw ContractError("noise grid bounds must satisfy 0 <= start <= stop <= 0.2");
  if (!(step > 0.0)) throw ContractError("noise grid step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
  return out;
}

std::optional<double> first_downward_crossing(std::span<const double> xs, std::span<const double> ys,
                                              double level) {
  if (xs.size() != ys.size()) throw ShapeError("first_downward_crossing: length mismatch");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (ys[i] >= level && ys[i + 1] < level)
      return xs[i] + (level - ys[i]) * (xs[i + 1] - xs[i]) / (ys[i + 1] - ys[i]);
  return std::nullopt;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace ghzst
