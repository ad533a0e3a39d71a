#include "ghzst/bellops.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace ghzst;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: W_b written out from Pauli matrices at the last two sites.
ComplexMatrix chsh_oracle(double theta, int b) {
  const double s2 = std::sin(2 * theta);
  const double alpha = 2 * std::cos(2 * theta) / std::sqrt(1 + s2 * s2);
  const double mu = std::atan(s2);
  const ComplexMatrix a0 = pauli::z(), a1 = pauli::x();
  const ComplexMatrix b0 = std::cos(mu) * pauli::z() + std::sin(mu) * pauli::x();
  const ComplexMatrix b1 = std::cos(mu) * pauli::z() - std::sin(mu) * pauli::x();
  const ComplexMatrix id = pauli::identity();
  const ComplexMatrix w0 = alpha * kron(a0, id) + kron(a0, b0) + kron(a0, b1) + kron(a1, b0) - kron(a1, b1);
  const ComplexMatrix w1 = -alpha * kron(a0, id) + kron(a0, b0) + kron(a0, b1) - kron(a1, b0) + kron(a1, b1);
  switch (b) {
    case 0: return w0;
    case 1: return w1;
    case 2: return -w1;
    default: return -w0;
  }
}

}  // namespace

TEST(bellops, alpha_mu_examples) {
  EXPECT_NEAR(alpha_of_theta(TiltAngle(kPi / 4)), 0.0, 1e-15);
  EXPECT_NEAR(mu_of_theta(TiltAngle(kPi / 4)), kPi / 4, 1e-15);
  EXPECT_NEAR(alpha_of_theta(TiltAngle(kPi / 6)), 0.7559289, 1e-7);
  EXPECT_NEAR(mu_of_theta(TiltAngle(kPi / 6)), 0.7137244, 1e-7);
  EXPECT_NEAR(alpha_of_theta(TiltAngle(1e-9)), 2.0, 1e-8);
  for (double t : {kPi / 4, kPi / 6, kPi / 8, kPi / 12})
    EXPECT_NEAR(std::tan(mu_of_theta(TiltAngle(t))), std::sin(2 * t), 1e-12);
}

TEST(bellops, max_violation_examples) {
  EXPECT_NEAR(max_violation(0.0), 2.8284271, 1e-7);
  EXPECT_NEAR(max_violation(0.7559289), 3.0237158, 1e-7);
  EXPECT_NEAR(max_violation(2.0 - 1e-12), 4.0, 1e-9);
  EXPECT_THROW(max_violation(2.0), ContractError);
  EXPECT_THROW(max_violation(-0.1), ContractError);
}

TEST(bellops, chsh_matches_oracle) {
  for (double t : {kPi / 4, kPi / 6, kPi / 8})
    for (int b = 0; b < 4; ++b) {
      const auto w = chsh_operator(ideal_settings(TiltAngle(t), 2), BellVariant::tilted(b));
      EXPECT_LT((w.matrix - chsh_oracle(t, b)).norm(), 1e-13);
    }
}

TEST(bellops, chsh_top_eigenvalue_nondegenerate) {
  for (double t : {kPi / 4, kPi / 6, kPi / 8, kPi / 12})
    for (int b = 0; b < 4; ++b) {
      const TiltAngle th(t);
      const auto w = chsh_operator(ideal_settings(th, 2), BellVariant::tilted(b));
      EXPECT_TRUE(is_hermitian(w.matrix, 1e-14));
      const auto e = herm_eig(w.matrix);
      EXPECT_NEAR(e.values(3), max_violation(w.alpha), 1e-9);
      EXPECT_GT(e.values(3) - e.values(2), 1e-6);
      const auto bell = tilted_bell(th, b);
      EXPECT_GE(std::abs(e.vectors.col(3).dot(bell)), 1 - 1e-9);
      EXPECT_NEAR(expectation(outer(bell), w.matrix), max_violation(w.alpha), 1e-12);
    }
}

TEST(bellops, conditioned_variant_signs) {
  const auto s = ideal_settings(TiltAngle(kPi / 6), 4);
  const auto w0 = chsh_operator(s, BellVariant::tilted(0));
  const auto even = chsh_operator(s, BellVariant::conditioned({1, 1}));
  const auto odd = chsh_operator(s, BellVariant::conditioned({0, 1}));
  EXPECT_LT((even.matrix - w0.matrix).norm(), 1e-14);
  // Odd parity flips exactly the A1 terms: W0 - odd = 2 (A1B0 - A1B1).
  const auto& [a0, a1] = s.observables[2];
  const auto& [b0, b1] = s.observables[3];
  EXPECT_LT((w0.matrix - odd.matrix - 2.0 * (kron(a1, b0) - kron(a1, b1))).norm(), 1e-13);
  EXPECT_EQ(BellVariant::conditioned({0, 1}).abar_parity(), 1);
  EXPECT_EQ(BellVariant::conditioned({0, 1}).label(), "abar=01");
}

TEST(bellops, tilde_examples) {
  const auto s = ideal_settings(TiltAngle(kPi / 6), 3);
  const auto w = chsh_operator(s, BellVariant::tilted(0));
  const std::size_t sites[] = {1, 2};
  const auto t0 = make_tilde_tag(3, OutcomeIndex(0, 3));
  EXPECT_LT((tilde(w.matrix, t0, sites) - w.matrix).norm(), 1e-14);

  const auto t7 = make_tilde_tag(3, OutcomeIndex(7, 3));
  const auto& [b0, b1] = s.observables[1];
  const auto& [c0, c1] = s.observables[2];
  // The correlator part is invariant under X (x) X; only the alpha B0 term flips.
  const ComplexMatrix expected =
      -w.alpha * kron(b0, pauli::identity()) + kron(b0, c0) + kron(b0, c1) + kron(b1, c0) - kron(b1, c1);
  const auto sub = tilde(w.matrix, t7, sites);
  ASSERT_EQ(sub.rows(), 4);
  EXPECT_LT((sub - expected).norm(), 1e-13);

  // k_1 = 1 flips the projector index of the ideal Z observable.
  const auto t4 = make_tilde_tag(3, OutcomeIndex(4, 3));
  const RegisterShape shape = RegisterShape::qubits(3);
  const auto p0 = embed(projector(pauli::z(), 0), shape, 0);
  const auto p1 = embed(projector(pauli::z(), 1), shape, 0);
  EXPECT_LT((tilde(p0, t4) - p1).norm(), 1e-14);
}

TEST(bellops, tilde_is_spectrum_preserving_homomorphism) {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  auto rand_herm = [&] {
    ComplexMatrix m(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i)
      for (Eigen::Index j = 0; j < 8; ++j) m(i, j) = Complex(g(rng), g(rng));
    return ComplexMatrix(0.5 * (m + m.adjoint()));
  };
  for (std::uint32_t r = 0; r < 8; ++r) {
    const auto tag = make_tilde_tag(3, OutcomeIndex(r, 3));
    const auto a = rand_herm(), b = rand_herm();
    EXPECT_LT((tilde(a * b, tag) - tilde(a, tag) * tilde(b, tag)).norm(), 1e-12);
    EXPECT_LT((herm_eig(tilde(a, tag)).values - herm_eig(a).values).norm(), 1e-10);
  }
}
