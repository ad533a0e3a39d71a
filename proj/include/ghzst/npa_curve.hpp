#pragma once

// G(eps): the relaxation's minimal extraction fidelity over a noise grid.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghzst/sdp_solver.hpp"

namespace ghzst::npa {

struct CurvePoint {
  double epsilon = 0.0;
  double g = 0.0;
  SolveStatus status = SolveStatus::not_converged;
  double psd_residual = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;

  bool converged() const { return status == SolveStatus::optimal || status == SolveStatus::near_optimal; }
};

struct GCurve {
  std::vector<CurvePoint> points;
  std::optional<double> threshold;  // eps where G crosses 0.5

  bool all_converged() const;
  std::vector<double> epsilons() const;
  std::vector<double> values() const;
};

/// One solve per grid point (grid within [0, 0.2]); `threads` = 0 picks the hardware count.
GCurve g_curve(std::span<const double> grid, const SolverOptions& options = {}, unsigned threads = 0);

/// "epsilon,G,converged,psd_residual,primal_residual" rows.
std::string g_curve_csv(const GCurve& curve);

}  // namespace ghzst::npa
