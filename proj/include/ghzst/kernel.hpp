#pragma once

// Dense complex linear algebra shared by every other module.
//
// Basis ordering convention: in a register of sites 0..n-1, site 0 is the most
// significant digit of the flat computational-basis index, i.e. the leftmost
// factor of a Kronecker product.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ghzst/errors.hpp"

namespace ghzst {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Local dimensions of a tensor-product register.
struct RegisterShape {
  std::vector<std::size_t> dims;

  RegisterShape() = default;
  explicit RegisterShape(std::vector<std::size_t> d) : dims(std::move(d)) {}

  static RegisterShape qubits(std::size_t n) { return RegisterShape(std::vector<std::size_t>(n, 2)); }

  std::size_t sites() const { return dims.size(); }
  std::size_t total() const;
};

struct HermEig {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
};

namespace pauli {
ComplexMatrix identity(std::size_t dim = 2);
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors);
StateVector kron(const StateVector& a, const StateVector& b);

/// Reduced matrix on the `keep` sites (kept in ascending site order).
ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterShape& shape,
                            std::vector<std::size_t> keep);

/// Reorders the tensor factors so that output site k is input site perm[k].
ComplexMatrix permute_sites(const ComplexMatrix& m, const RegisterShape& shape,
                            std::span<const std::size_t> perm);

/// Places `op` (acting on `sites`, in the listed order) into the full register.
ComplexMatrix embed(const ComplexMatrix& op, const RegisterShape& shape,
                    std::span<const std::size_t> sites);
ComplexMatrix embed(const ComplexMatrix& op, const RegisterShape& shape, std::size_t site);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_finite(const ComplexMatrix& m);

/// Throws ContractError when m is not Hermitian within `tol` (relative to max(1, max|m_ij|)).
void require_hermitian(const ComplexMatrix& m, double tol, const char* what);

/// Hermitian eigendecomposition: m = V diag(values) V^dagger, values ascending.
HermEig herm_eig(const ComplexMatrix& m);

/// Nearest positive semidefinite matrix in Frobenius norm.
ComplexMatrix psd_project(const ComplexMatrix& m);

/// Minimum-norm least-squares solution of A x = b.
ComplexVector solve_least_squares(const ComplexMatrix& a, const ComplexVector& b);

/// Rank-one projector |v><v|.
ComplexMatrix outer(const StateVector& v);

/// Re Tr(rho op).
double expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

double min_eigenvalue(const ComplexMatrix& m);

/// Tr_B[(I_A (x) e) t] for t on A (x) B (A first) and e on B.
ComplexMatrix trace_out_with(const ComplexMatrix& t, std::size_t dim_a, std::size_t dim_b,
                             const ComplexMatrix& e);

}  // namespace ghzst
