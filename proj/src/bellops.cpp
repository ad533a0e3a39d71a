#include "ghzst/bellops.hpp"

#include <cmath>
#include <string>

namespace ghzst {

double alpha_of_theta(TiltAngle theta) {
  const double s2 = std::sin(2 * theta.radians());
  return 2 * std::cos(2 * theta.radians()) / std::sqrt(1 + s2 * s2);
}

double mu_of_theta(TiltAngle theta) { return std::atan(std::sin(2 * theta.radians())); }

double max_violation(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0))
    throw ContractError("max_violation: alpha must lie in [0, 2), got " + std::to_string(alpha));
  return std::sqrt(8 + 2 * alpha * alpha);
}

BellVariant BellVariant::tilted(int b) {
  if (b < 0 || b > 3) throw ContractError("BellVariant: b must be in {0,1,2,3}");
  BellVariant v;
  v.b_ = b;
  return v;
}

BellVariant BellVariant::conditioned(std::vector<int> abar) {
  for (int a : abar)
    if (a != 0 && a != 1) throw ContractError("BellVariant: abar entries must be bits");
  BellVariant v;
  v.conditioned_ = true;
  v.abar_ = std::move(abar);
  return v;
}

int BellVariant::abar_parity() const {
  int s = 0;
  for (int a : abar_) s += a;
  return s % 2;
}

std::string BellVariant::label() const {
  if (!conditioned_) return "b=" + std::to_string(b_);
  std::string s = "abar=";
  for (int a : abar_) s += static_cast<char>('0' + a);
  return s;
}

BellOperator chsh_operator(const MeasurementSettings& settings, const BellVariant& variant) {
  if (settings.parties() < 2) throw ContractError("chsh_operator: need at least two parties");
  const auto& [a0, a1] = settings.observables[settings.parties() - 2];
  const auto& [b0, b1] = settings.observables[settings.parties() - 1];
  const ComplexMatrix ia = ComplexMatrix::Identity(b0.rows(), b0.cols());
  const double alpha = settings.alpha;

  const ComplexMatrix a0i = kron(a0, ia);
  const ComplexMatrix a0b0 = kron(a0, b0), a0b1 = kron(a0, b1);
  const ComplexMatrix a1b0 = kron(a1, b0), a1b1 = kron(a1, b1);

  ComplexMatrix w;
  if (variant.is_conditioned()) {
    const double sign = variant.abar_parity() ? -1.0 : 1.0;
    w = alpha * a0i + a0b0 + a0b1 + sign * (a1b0 - a1b1);
  } else {
    const ComplexMatrix w0 = alpha * a0i + a0b0 + a0b1 + a1b0 - a1b1;
    const ComplexMatrix w1 = -alpha * a0i + a0b0 + a0b1 - a1b0 + a1b1;
    switch (variant.b()) {
      case 0: w = w0; break;
      case 1: w = w1; break;
      case 2: w = -w1; break;
      default: w = -w0; break;
    }
  }
  return {alpha, variant, std::move(w)};
}

TildeTag make_tilde_tag(std::size_t n, OutcomeIndex r) { return {r, ghz_correction_word(n, r)}; }

ComplexMatrix tilde(const ComplexMatrix& op, const TildeTag& tag) {
  const ComplexMatrix u = tag.word.matrix();
  if (op.rows() != u.rows() || op.cols() != u.cols())
    throw ShapeError("tilde: operator does not act on the word's register");
  return u.adjoint() * op * u;
}

ComplexMatrix tilde(const ComplexMatrix& op, const TildeTag& tag, std::span<const std::size_t> sites) {
  for (auto s : sites)
    if (s >= tag.word.sites()) throw ShapeError("tilde: site outside the word's register");
  const ComplexMatrix u = tag.word.restrict_to(sites).matrix();
  if (op.rows() != u.rows() || op.cols() != u.cols())
    throw ShapeError("tilde: operator does not act on the declared sites");
  return u.adjoint() * op * u;
}

}  // namespace ghzst
