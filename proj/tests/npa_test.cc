#include "ghzst/npa.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "ghzst/npa_curve.hpp"
#include "ghzst/sdp_solver.hpp"
#include "gtest/gtest.h"

using namespace ghzst;
using namespace ghzst::npa;

namespace {

Word word_of(std::initializer_list<Letter> letters) { return reduce(std::vector<Letter>(letters)).word; }

constexpr Letter a0{Party::A, 0}, a1{Party::A, 1}, b0{Party::B, 0}, b1{Party::B, 1}, c0{Party::C, 0},
    c1{Party::C, 1};

DensityMatrix ghz3() { return outer(tilted_ghz(TiltAngle(std::numbers::pi / 4), 3, OutcomeIndex(0, 3))); }

DensityMatrix noisy_ghz3(double eps) { return (1 - eps) * ghz3() + eps * ComplexMatrix::Identity(8, 8) / 8.0; }

const SdpProblem& problem_at(double eps) {
  static std::map<double, SdpProblem> cache;
  auto it = cache.find(eps);
  if (it == cache.end()) it = cache.emplace(eps, build_problem(eps)).first;
  return it->second;
}

}  // namespace

TEST(npa_word, reduce_examples) {
  const std::vector<Letter> aa = {a0, a0};
  EXPECT_TRUE(reduce(aa).word.is_identity());
  EXPECT_EQ(word_of({a0, b1, a0}).to_string(), "B1");
  EXPECT_EQ(word_of({c1, b0, a1}).to_string(), "A1B0C1");
  EXPECT_EQ(word_of({a0, a1, a1, a0}).to_string(), "I");
  // A1A0 is stored as its adjoint A0A1.
  const std::vector<Letter> rev = {a1, a0};
  const auto r = reduce(rev);
  EXPECT_EQ(r.word.to_string(), "A0A1");
  EXPECT_TRUE(r.conjugated);
  EXPECT_EQ(r.sign, 1);
  const std::vector<Letter> bad = {{Party::A, 2}};
  EXPECT_THROW(reduce(bad), ContractError);
}

TEST(npa_word, reduce_is_idempotent) {
  for (const auto& u : build_basis())
    for (const auto& v : build_basis()) {
      Word w;
      for (std::size_t p = 0; p < kParties; ++p) {
        w.parts[p] = u.parts[p];
        w.parts[p].insert(w.parts[p].end(), v.parts[p].begin(), v.parts[p].end());
      }
      const auto once = reduce(w);
      const auto twice = reduce(once.word);
      EXPECT_EQ(once.word, twice.word);
      EXPECT_FALSE(twice.conjugated);
    }
}

TEST(npa_word, word_accessors) {
  const Word w = word_of({a0, a1, c1});
  EXPECT_EQ(w.degree(), 3u);
  EXPECT_EQ(w.adjoint().to_string(), "A1A0C1");
  EXPECT_EQ(Word{}.to_string(), "I");
}

TEST(npa_problem, basis_and_moment_table) {
  const auto basis = build_basis();
  ASSERT_EQ(basis.size(), 125u);
  EXPECT_TRUE(basis.front().is_identity());
  EXPECT_EQ(std::set<Word>(basis.begin(), basis.end()).size(), 125u);
  const auto& prob = problem_at(0.0);
  EXPECT_EQ(prob.dim(), 125u);
  EXPECT_TRUE(prob.moments.front().is_identity());
  for (std::size_t u = 0; u < prob.dim(); ++u) {
    EXPECT_EQ(prob.entry(u, u).moment, 0u);
    EXPECT_EQ(prob.entry(u, u).sign, 1);
  }
  for (std::size_t u = 0; u < prob.dim(); ++u)
    for (std::size_t v = 0; v < prob.dim(); ++v) EXPECT_EQ(prob.entry(u, v).moment, prob.entry(v, u).moment);
  EXPECT_NO_THROW(prob.moment_index(word_of({c0, c1, c0})));
  EXPECT_NO_THROW(prob.moment_index(word_of({a1, b0, c1, c0})));
  EXPECT_THROW(prob.moment_index(word_of({a0, a1, a0, a1, a0})), ContractError);
}

TEST(npa_problem, objective_structure) {
  const auto obj = objective_fidelity();
  EXPECT_NEAR(obj.at(Word{}), 0.125, 1e-15);
  EXPECT_NEAR(obj.at(word_of({a0, b0})), 0.125, 1e-15);
  // Word present only through X conjugation.
  EXPECT_TRUE(obj.contains(word_of({a1, b1, c0})));
  const auto& prob = problem_at(0.0);
  const auto obs = ideal_observables();
  EXPECT_NEAR(evaluate(prob.objective, exact_moments(prob, ghz3(), obs)), 1.0, 1e-12);
  EXPECT_NEAR(evaluate(prob.objective, exact_moments(prob, ComplexMatrix::Identity(8, 8) / 8.0, obs)), 0.125,
              1e-12);
}

TEST(npa_problem, constraint_list) {
  const auto cs = constraints_eq9(0.1);
  ASSERT_EQ(cs.size(), 7u);
  const std::vector<std::string> labels = {"P0(A0)", "P0(B0)", "P0(A0)P0(B0)", "P0(A1)", "P1(A1)",
                                           "P0(A1)CHSH", "P1(A1)CHSH"};
  for (std::size_t k = 0; k < cs.size(); ++k) EXPECT_EQ(cs[k].label, labels[k]);
  EXPECT_NEAR(cs[2].target, 0.9 / 2 + 0.1 / 4, 1e-15);
  EXPECT_NEAR(cs[5].target, std::numbers::sqrt2 * 0.9, 1e-15);
  EXPECT_THROW(constraints_eq9(-0.1), ContractError);
  const auto& prob = problem_at(0.1);
  ASSERT_EQ(prob.constraints.size(), 8u);
  EXPECT_EQ(prob.constraints.front().label, "norm");
}

TEST(npa_problem, noisy_ghz_moments_are_feasible) {
  for (double eps : {0.0, 0.05, 0.12}) {
    const auto& prob = problem_at(eps);
    const auto y = exact_moments(prob, noisy_ghz3(eps), ideal_observables());
    for (const auto& c : prob.constraints) EXPECT_NEAR(evaluate(c.form, y), c.target, 1e-12) << c.label;
    const Eigen::MatrixXd m = assemble(prob, y);
    EXPECT_LT((m - m.transpose()).norm(), 1e-12);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff(), -1e-10);
    EXPECT_NEAR(evaluate(prob.objective, y), 1.0 - 7.0 * eps / 8.0, 1e-12);
  }
}

TEST(npa_solver, zero_noise_certifies_ghz) {
  const auto sol = solve(problem_at(0.0));
  ASSERT_TRUE(sol.converged()) << to_string(sol.status);
  EXPECT_GE(sol.objective_value, 0.999);
  EXPECT_LE(sol.objective_value, 1.0 + 1e-6);
}

TEST(npa_solver, solution_is_feasible_and_sound) {
  for (double eps : {0.05, 0.12}) {
    const auto& prob = problem_at(eps);
    const auto sol = solve(prob);
    ASSERT_TRUE(sol.converged()) << to_string(sol.status);
    EXPECT_LT(sol.primal_residual, 1e-6);
    EXPECT_GT(sol.psd_residual, -1e-6);
    EXPECT_NEAR(evaluate(prob.objective, sol.moments), sol.objective_value, 1e-9);
    // The noisy GHZ state is feasible, so the minimum cannot exceed its fidelity.
    EXPECT_LE(sol.objective_value, 1.0 - 7.0 * eps / 8.0 + 1e-4);
  }
}

TEST(npa_solver, g_curve_is_monotone) {
  std::vector<double> grid;
  for (int k = 0; k <= 12; k += 3) grid.push_back(0.01 * k);
  const auto curve = g_curve(grid, {}, 1);
  ASSERT_TRUE(curve.all_converged());
  for (std::size_t k = 1; k < curve.points.size(); ++k)
    EXPECT_LE(curve.points[k].g, curve.points[k - 1].g + 1e-5) << grid[k];
  EXPECT_FALSE(curve.threshold.has_value());
  const std::string csv = g_curve_csv(curve);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epsilon,G,converged,psd_residual,primal_residual");
  EXPECT_THROW(g_curve(std::vector<double>{0.3}), ContractError);
}

TEST(npa_solver, inconsistent_equalities_are_infeasible) {
  auto prob = build_problem(0.0);
  auto dup = prob.constraints[1];
  dup.target += 0.1;
  prob.constraints.push_back(dup);
  EXPECT_EQ(solve(prob).status, SolveStatus::infeasible);
}

TEST(npa_solver, out_of_range_targets_do_not_converge) {
  auto prob = build_problem(0.0);
  prob.constraints[1].target = 2.0;
  EXPECT_FALSE(solve(prob).converged());
}

TEST(npa_solver, rejects_bad_options) {
  SolverOptions opts;
  opts.max_iterations = 0;
  EXPECT_THROW(solve(problem_at(0.0), opts), ContractError);
}
