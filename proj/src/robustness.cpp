#include "ghzst/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ghzst/curves.hpp"
#include "ghzst/errors.hpp"

namespace ghzst {

namespace {

void check_x(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw ContractError("s/t are defined on [0, 1)");
}

void check_q(double q) {
  if (!(q > 0.5 && q <= 1.0)) throw ContractError("quality bound needs q in (0.5, 1]");
}

double golden_min(double q, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = bound_integrand(q, c), fd = bound_integrand(q, d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = bound_integrand(q, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = bound_integrand(q, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double s_of(double x) {
  check_x(x);
  return 2.0 / std::sqrt(1.0 - x * x);
}

double t_of(double x) {
  check_x(x);
  return 4.0 / std::sqrt(1.0 - x * x) - 4.0 / (1.0 + x);
}

double u_interval_end(double q) {
  check_q(q);
  return 2.0 * std::sqrt(q * (1.0 - q));
}

double bound_integrand(double q, double u) {
  return (2.0 * q - 1.0) / std::sqrt(1.0 - u * u) + 1.0 / (1.0 + u);
}

double spectral_form(double q, double u) {
  const double eta = u_interval_end(q);
  return (4.0 * s_of(u) * q - t_of(u)) / (8.0 * (1.0 + eta) * (1.0 + eta));
}

QualityBound theorem2_bound(const QualityInput& input) {
  const double q = input.q;
  const double eta = u_interval_end(q);
  const double scale = 1.0 / (2.0 * (1.0 + eta) * (1.0 + eta));
  if (eta == 0.0) return {scale * bound_integrand(q, 0.0), 0.0};
  if (input.u_grid_resolution < 3) throw ContractError("theorem2_bound: grid needs at least 3 points");

  const std::size_t n = input.u_grid_resolution;
  std::size_t best = 0;
  double best_val = bound_integrand(q, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double v = bound_integrand(q, eta * static_cast<double>(k) / static_cast<double>(n - 1));
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double lo = eta * static_cast<double>(best == 0 ? 0 : best - 1) / static_cast<double>(n - 1);
  const double hi = eta * static_cast<double>(std::min(best + 1, n - 1)) / static_cast<double>(n - 1);
  double u = golden_min(q, lo, hi);
  double val = bound_integrand(q, u);
  for (double edge : {lo, hi}) {
    const double v = bound_integrand(q, edge);
    if (v < val) {
      val = v;
      u = edge;
    }
  }
  return {scale * val, u};
}

double average_fidelity(std::span<const double> fidelities, std::span<const double> probabilities) {
  if (fidelities.empty()) throw ContractError("average_fidelity: no outcomes");
  if (probabilities.empty())
    return std::accumulate(fidelities.begin(), fidelities.end(), 0.0) / static_cast<double>(fidelities.size());
  if (probabilities.size() != fidelities.size()) throw ShapeError("average_fidelity: length mismatch");
  double total = 0.0, q = 0.0;
  for (std::size_t r = 0; r < fidelities.size(); ++r) {
    if (probabilities[r] < 0.0) throw ContractError("average_fidelity: negative probability");
    total += probabilities[r];
    q += probabilities[r] * fidelities[r];
  }
  if (std::abs(total - 1.0) > 1e-9) throw ContractError("average_fidelity: probabilities must sum to 1");
  return q;
}

QualityCurve quality_curve(std::span<const double> eps, std::span<const double> g_values, double unit_tolerance) {
  if (eps.size() != g_values.size()) throw ShapeError("quality_curve: one G value per grid point required");
  QualityCurve curve;
  std::vector<double> ys;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    QualityPoint p{eps[i], g_values[i] >= 1.0 - unit_tolerance ? 1.0 : g_values[i], std::nullopt};
    if (p.q > 0.5) p.bound = theorem2_bound({p.q});
    // Points without a bound enter the threshold search at zero.
    ys.push_back(p.bound ? p.bound->value : 0.0);
    curve.points.push_back(p);
  }
  curve.threshold = first_downward_crossing(eps, ys, 0.5);
  return curve;
}

QualityCurve quality_curve(std::span<const double> eps, const std::function<double(double)>& g,
                           double unit_tolerance) {
  std::vector<double> values;
  for (double e : eps) values.push_back(g(e));
  return quality_curve(eps, values, unit_tolerance);
}

std::string quality_csv(const QualityCurve& curve) {
  std::string out = "epsilon,q,bound\n";
  for (const auto& p : curve.points)
    out += format_number(p.epsilon) + "," + format_number(p.q) + "," +
           (p.bound ? format_number(p.bound->value) : std::string("nobound")) + "\n";
  return out;
}

}  // namespace ghzst
