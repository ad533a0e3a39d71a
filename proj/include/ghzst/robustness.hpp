#pragma once

// Lower bound on the quality of a real GHZ-state measurement from the average
// extraction fidelity q, and its noise threshold.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ghzst {

/// s(x) = 2 / sqrt(1 - x^2), x in [0, 1).
double s_of(double x);
/// t(x) = 4 / sqrt(1 - x^2) - 4 / (1 + x), x in [0, 1).
double t_of(double x);

struct QualityInput {
  double q = 1.0;  // in (0.5, 1]
  std::size_t u_grid_resolution = 2001;
};

struct QualityBound {
  double value = 0.0;
  double argmin_u = 0.0;
};

/// Upper end 2 sqrt(q(1-q)) of the u interval.
double u_interval_end(double q);

/// (2q - 1)/sqrt(1 - u^2) + 1/(1 + u).
double bound_integrand(double q, double u);

/// (4 s(u) q - t(u)) / (8 (1 + eta)^2) at eta = 2 sqrt(q(1-q)): the bound before minimizing over u.
double spectral_form(double q, double u);

/// min over u of bound_integrand, scaled by 1 / (2 (1 + eta)^2). Grid scan, golden-section polish.
QualityBound theorem2_bound(const QualityInput& input);

/// q = sum_r p_r G(eps^r); uniform p_r when `probabilities` is empty.
double average_fidelity(std::span<const double> fidelities, std::span<const double> probabilities = {});

struct QualityPoint {
  double epsilon = 0.0;
  double q = 0.0;
  std::optional<QualityBound> bound;  // empty when q <= 0.5
};

struct QualityCurve {
  std::vector<QualityPoint> points;
  std::optional<double> threshold;  // eps where the bound crosses 0.5
};

/// G values within `unit_tolerance` of 1 (solver accuracy) are taken as q = 1.
QualityCurve quality_curve(std::span<const double> eps, std::span<const double> g_values,
                           double unit_tolerance = 1e-6);
QualityCurve quality_curve(std::span<const double> eps, const std::function<double(double)>& g,
                           double unit_tolerance = 1e-6);

/// "epsilon,q,bound" rows, "nobound" where q <= 0.5.
std::string quality_csv(const QualityCurve& curve);

}  // namespace ghzst
