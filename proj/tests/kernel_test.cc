#include "ghzst/kernel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ghzst/qstates.hpp"
#include "gtest/gtest.h"

using namespace ghzst;

namespace {

ComplexMatrix random_hermitian(std::mt19937& rng, Eigen::Index d) {
  std::normal_distribution<double> g;
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) d(k++) = x;
  return d.cast<Complex>().asDiagonal();
}

}  // namespace

TEST(kernel, kron_examples) {
  EXPECT_TRUE(kron(pauli::identity(), pauli::identity()).isApprox(pauli::identity(4)));
  EXPECT_TRUE(kron(pauli::z(), pauli::z()).isApprox(diag({1, -1, -1, 1})));
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  const ComplexMatrix k = kron(p0, pauli::x());
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 1) = expected(1, 0) = 1;
  EXPECT_EQ(k, expected);
}

TEST(kernel, kron_associative) {
  std::mt19937 rng(7);
  const auto a = random_hermitian(rng, 2), b = random_hermitian(rng, 3), c = random_hermitian(rng, 2);
  EXPECT_LT((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(kernel, partial_trace_examples) {
  const auto bell = outer(tilted_bell(TiltAngle(std::numbers::pi / 4), 0));
  EXPECT_TRUE(partial_trace(bell, RegisterShape::qubits(2), {0}).isApprox(pauli::identity() / 2.0, 1e-14));

  std::mt19937 rng(1);
  ComplexMatrix rho = random_hermitian(rng, 2), sigma = random_hermitian(rng, 4);
  const ComplexMatrix reduced = partial_trace(kron(rho, sigma), RegisterShape({2, 4}), {0});
  EXPECT_LT((reduced - rho * sigma.trace()).cwiseAbs().maxCoeff(), 1e-12);

  const double t = std::numbers::pi / 6;
  const auto ghz = outer(tilted_ghz(TiltAngle(t), 3, OutcomeIndex(0, 3)));
  const ComplexMatrix site0 = partial_trace(ghz, RegisterShape::qubits(3), {0});
  EXPECT_LT((site0 - diag({std::cos(t) * std::cos(t), std::sin(t) * std::sin(t)})).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(kernel, partial_trace_preserves_trace) {
  std::mt19937 rng(2);
  const RegisterShape shape({2, 3, 2});
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_hermitian(rng, 12);
    for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}, {}})
      EXPECT_NEAR(std::abs(partial_trace(m, shape, keep).trace() - m.trace()), 0.0, 1e-12);
  }
}

TEST(kernel, partial_trace_shape_error) {
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(4, 4), RegisterShape::qubits(3), {0}), ShapeError);
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(4, 4), RegisterShape::qubits(2), {2}), ShapeError);
}

TEST(kernel, permute_and_embed) {
  std::mt19937 rng(3);
  const auto a = random_hermitian(rng, 2), b = random_hermitian(rng, 3);
  const std::size_t perm[] = {1, 0};
  EXPECT_LT((permute_sites(kron(a, b), RegisterShape({2, 3}), perm) - kron(b, a)).cwiseAbs().maxCoeff(), 1e-14);
  const auto e = embed(pauli::x(), RegisterShape::qubits(3), 1);
  EXPECT_TRUE(e.isApprox(kron_all({pauli::identity(), pauli::x(), pauli::identity()})));
  const std::size_t sites[] = {2, 0};
  const auto zx = embed(kron(pauli::z(), pauli::x()), RegisterShape::qubits(3), sites);
  EXPECT_TRUE(zx.isApprox(kron_all({pauli::x(), pauli::identity(), pauli::z()})));
}

TEST(kernel, herm_eig_examples) {
  const auto e = herm_eig(diag({3, 1, 2}));
  EXPECT_NEAR(e.values(0), 1, 1e-14);
  EXPECT_NEAR(e.values(1), 2, 1e-14);
  EXPECT_NEAR(e.values(2), 3, 1e-14);

  const auto ex = herm_eig(pauli::x());
  EXPECT_NEAR(ex.values(0), -1, 1e-14);
  EXPECT_NEAR(ex.values(1), 1, 1e-14);
  EXPECT_NEAR(std::abs(ex.vectors(0, 1)), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(ex.vectors(1, 1)), 1 / std::sqrt(2.0), 1e-14);

  ComplexMatrix bad = pauli::x();
  bad(0, 1) = 2.0;
  EXPECT_THROW(herm_eig(bad), ContractError);
}

TEST(kernel, herm_eig_reconstruction) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_hermitian(rng, 9);
    const auto e = herm_eig(m);
    const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((back - m).norm(), 1e-9 * m.norm());
    EXPECT_LT((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(9, 9)).norm(), 1e-10);
    for (Eigen::Index k = 1; k < 9; ++k) EXPECT_LE(e.values(k - 1), e.values(k));
  }
}

TEST(kernel, psd_project_examples) {
  EXPECT_TRUE(psd_project(pauli::identity()).isApprox(pauli::identity()));
  EXPECT_LT((psd_project(diag({1, -1})) - diag({1, 0})).norm(), 1e-14);
  EXPECT_LT((psd_project(pauli::x()) - (pauli::identity() + pauli::x()) / 2.0).norm(), 1e-14);
}

TEST(kernel, psd_project_idempotent) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = psd_project(random_hermitian(rng, 6));
    EXPECT_GE(min_eigenvalue(p), -1e-10);
    EXPECT_LT((psd_project(p) - p).norm(), 1e-10);
  }
}

TEST(kernel, least_squares_examples) {
  ComplexVector b(3);
  b << 1.0, Complex(0, 2), -3.0;
  EXPECT_TRUE(solve_least_squares(ComplexMatrix::Identity(3, 3), b).isApprox(b));

  ComplexMatrix a(2, 1);
  a << 1.0, 1.0;
  ComplexVector obs(2);
  obs << 0.0, 2.0;
  EXPECT_NEAR(std::abs(solve_least_squares(a, obs)(0) - 1.0), 0.0, 1e-14);

  std::mt19937 rng(6);
  std::normal_distribution<double> g;
  ComplexMatrix big(10, 6);
  ComplexVector rhs(10);
  for (Eigen::Index i = 0; i < 10; ++i) {
    rhs(i) = Complex(g(rng), g(rng));
    for (Eigen::Index j = 0; j < 6; ++j) big(i, j) = Complex(g(rng), g(rng));
  }
  const auto x = solve_least_squares(big, rhs);
  EXPECT_LT((big.adjoint() * (big * x - rhs)).norm(), 1e-10);
}

TEST(kernel, least_squares_rank_deficient_min_norm) {
  ComplexMatrix a(2, 2);
  a << 1.0, 1.0, 1.0, 1.0;
  ComplexVector b(2);
  b << 2.0, 2.0;
  const auto x = solve_least_squares(a, b);
  EXPECT_NEAR(std::abs(x(0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(x(1) - 1.0), 0.0, 1e-12);
}

TEST(kernel, trace_out_with_matches_partial_trace) {
  std::mt19937 rng(8);
  const auto t = random_hermitian(rng, 8);
  const auto e = random_hermitian(rng, 4);
  const ComplexMatrix full = kron(ComplexMatrix::Identity(2, 2), e) * t;
  const ComplexMatrix oracle = partial_trace(full, RegisterShape({2, 4}), {0});
  EXPECT_LT((trace_out_with(t, 2, 4, e) - oracle).cwiseAbs().maxCoeff(), 1e-12);
}
