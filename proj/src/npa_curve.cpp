#include "ghzst/npa_curve.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "ghzst/curves.hpp"

namespace ghzst::npa {

bool GCurve::all_converged() const {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.converged(); });
}

std::vector<double> GCurve::epsilons() const {
  std::vector<double> out;
  for (const auto& p : points) out.push_back(p.epsilon);
  return out;
}

std::vector<double> GCurve::values() const {
  std::vector<double> out;
  for (const auto& p : points) out.push_back(p.g);
  return out;
}

GCurve g_curve(std::span<const double> grid, const SolverOptions& options, unsigned threads) {
  for (double e : grid)
    if (!(e >= 0.0 && e <= 0.2)) throw ContractError("g_curve: grid points must lie in [0, 0.2]");

  GCurve curve;
  curve.points.resize(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        const auto sol = solve(build_problem(grid[i]), options);
        curve.points[i] = {grid[i], sol.objective_value, sol.status, sol.psd_residual, sol.primal_residual,
                           sol.iterations};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const auto xs = curve.epsilons();
  const auto ys = curve.values();
  curve.threshold = first_downward_crossing(xs, ys, 0.5);
  return curve;
}

std::string g_curve_csv(const GCurve& curve) {
  std::string out = "epsilon,G,converged,psd_residual,primal_residual\n";
  for (const auto& p : curve.points)
    out += format_number(p.epsilon) + "," + format_number(p.g) + "," + (p.converged() ? "true" : "false") + "," +
           format_number(p.psd_residual) + "," + format_number(p.primal_residual) + "\n";
  return out;
}

}  // namespace ghzst::npa
