#pragma once

// Primal-dual interior-point solver for the moment relaxation:
// minimize objective(y) subject to the equalities and M(y) >= 0.

#include "ghzst/npa.hpp"

namespace ghzst::npa {

struct SolverOptions {
  int max_iterations = 120;
  double feasibility_tolerance = 1e-8;  // relative primal and dual infeasibility
  double gap_tolerance = 1e-7;          // relative duality gap
  /// Accepted when progress stalls (no strictly feasible point, e.g. at zero noise).
  double acceptable_tolerance = 1e-4;
};

enum class SolveStatus { optimal, near_optimal, not_converged, infeasible };

const char* to_string(SolveStatus s);

struct SdpSolution {
  RealVector moments;
  double objective_value = 0.0;
  double primal_residual = 0.0;  // max |E y - t| over the equalities
  double psd_residual = 0.0;     // lambda_min(M(y))
  double gap_estimate = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::not_converged;

  bool converged() const { return status == SolveStatus::optimal || status == SolveStatus::near_optimal; }
};

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});

}  // namespace ghzst::npa
