#include "ghzst/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ghzst {

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

void require_square(const ComplexMatrix& m, const RegisterShape& shape) {
  if (m.rows() != m.cols())
    throw ShapeError("matrix is not square");
  if (static_cast<std::size_t>(m.rows()) != shape.total())
    throw ShapeError("matrix dimension " + std::to_string(m.rows()) +
                     " does not match register dimension " + std::to_string(shape.total()));
}

}  // namespace

std::size_t RegisterShape::total() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

namespace pauli {
ComplexMatrix identity(std::size_t dim) { return ComplexMatrix::Identity(dim, dim); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors) {
  return kron_all(std::span<const ComplexMatrix>(factors.begin(), factors.size()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterShape& shape,
                            std::vector<std::size_t> keep) {
  require_square(m, shape);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto s : keep)
    if (s >= shape.sites()) throw ShapeError("partial_trace: site index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < shape.sites(); ++s)
    if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

  const auto strides = strides_of(shape.dims);
  auto offsets = [&](const std::vector<std::size_t>& sites) {
    std::size_t count = 1;
    for (auto s : sites) count *= shape.dims[s];
    std::vector<std::size_t> off(count, 0);
    // Enumerate multi-indices over `sites`, first listed site most significant.
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat, o = 0;
      for (std::size_t k = sites.size(); k-- > 0;) {
        const std::size_t d = shape.dims[sites[k]];
        o += (rem % d) * strides[sites[k]];
        rem /= d;
      }
      off[flat] = o;
    }
    return off;
  };

  const auto kept_off = offsets(keep);
  const auto traced_off = offsets(traced);
  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0;
      for (auto t : traced_off) acc += m(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  return out;
}

ComplexMatrix permute_sites(const ComplexMatrix& m, const RegisterShape& shape,
                            std::span<const std::size_t> perm) {
  require_square(m, shape);
  if (perm.size() != shape.sites()) throw ShapeError("permute_sites: permutation size mismatch");
  std::vector<std::size_t> new_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = shape.dims.at(perm[k]);
  const auto old_strides = strides_of(shape.dims);

  // map[new_flat] = old_flat
  const std::size_t total = shape.total();
  std::vector<Eigen::Index> map(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat, old = 0;
    for (std::size_t k = perm.size(); k-- > 0;) {
      old += (rem % new_dims[k]) * old_strides[perm[k]];
      rem /= new_dims[k];
    }
    map[flat] = static_cast<Eigen::Index>(old);
  }
  const auto n = static_cast<Eigen::Index>(total);
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const RegisterShape& shape,
                    std::span<const std::size_t> sites) {
  std::size_t sub = 1;
  for (auto s : sites) {
    if (s >= shape.sites()) throw ShapeError("embed: site index out of range");
    sub *= shape.dims[s];
  }
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != sub)
    throw ShapeError("embed: operator dimension does not match the listed sites");

  // Build op (x) I_rest in the order [sites..., rest...], then permute back.
  std::vector<std::size_t> order(sites.begin(), sites.end());
  std::size_t rest = 1;
  for (std::size_t s = 0; s < shape.sites(); ++s)
    if (std::find(sites.begin(), sites.end(), s) == sites.end()) {
      order.push_back(s);
      rest *= shape.dims[s];
    }
  ComplexMatrix staged = kron(op, ComplexMatrix::Identity(rest, rest));
  RegisterShape staged_shape;
  for (auto s : order) staged_shape.dims.push_back(shape.dims[s]);
  // inverse permutation: output site s comes from staged position pos(s)
  std::vector<std::size_t> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inv[order[k]] = k;
  return permute_sites(staged, staged_shape, inv);
}

ComplexMatrix embed(const ComplexMatrix& op, const RegisterShape& shape, std::size_t site) {
  const std::size_t sites[] = {site};
  return embed(op, shape, sites);
}

bool is_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(what) + ": matrix is not square");
  if (!is_finite(m)) throw ContractError(std::string(what) + ": non-finite entries");
  if (!is_hermitian(m, tol)) throw ContractError(std::string(what) + ": matrix is not Hermitian");
}

HermEig herm_eig(const ComplexMatrix& m) {
  require_hermitian(m, 1e-12, "herm_eig");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.info() != Eigen::Success) throw ContractError("herm_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix psd_project(const ComplexMatrix& m) {
  const auto eig = herm_eig(m);
  const RealVector clipped = eig.values.cwiseMax(0.0);
  return eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexVector solve_least_squares(const ComplexMatrix& a, const ComplexVector& b) {
  if (b.size() != a.rows()) throw ShapeError("solve_least_squares: rhs length mismatch");
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
  return cod.solve(b);
}

ComplexMatrix outer(const StateVector& v) { return v * v.adjoint(); }

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols())
    throw ShapeError("expectation: dimension mismatch");
  return (rho * op).trace().real();
}

double min_eigenvalue(const ComplexMatrix& m) { return herm_eig(m).values(0); }

ComplexMatrix trace_out_with(const ComplexMatrix& t, std::size_t dim_a, std::size_t dim_b,
                             const ComplexMatrix& e) {
  const auto da = static_cast<Eigen::Index>(dim_a), db = static_cast<Eigen::Index>(dim_b);
  if (t.rows() != da * db || t.cols() != da * db)
    throw ShapeError("trace_out_with: operator does not live on A (x) B");
  if (e.rows() != db || e.cols() != db) throw ShapeError("trace_out_with: effect dimension mismatch");
  // out(a, a') = sum_{b, b'} e(b, b') t((a, b'), (a', b))
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index ap = 0; ap < da; ++ap)
      out(a, ap) = (e.transpose().cwiseProduct(t.block(a * db, ap * db, db, db))).sum();
  return out;
}

}  // namespace ghzst
