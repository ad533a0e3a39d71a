#include "ghzst/qstates.hpp"

#include <cmath>
#include <string>

#include "ghzst/bellops.hpp"

namespace ghzst {

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4;
constexpr double kSnap = 1e-4;
}  // namespace

TiltAngle::TiltAngle(double theta) : theta_(theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta > kQuarterPi + kSnap)
    throw ContractError("theta must lie in (0, pi/4], got " + std::to_string(theta));
  if (theta_ > kQuarterPi) theta_ = kQuarterPi;
}

double TiltAngle::cos() const { return std::cos(theta_); }
double TiltAngle::sin() const { return std::sin(theta_); }

OutcomeIndex::OutcomeIndex(std::uint32_t r, std::size_t n) : r_(r), n_(n) {
  if (n == 0 || n > 16) throw ContractError("outcome index: unsupported party count");
  if (r >= (1U << n))
    throw ContractError("outcome index " + std::to_string(r) + " out of range for " +
                        std::to_string(n) + " parties");
}

int OutcomeIndex::parity() const {
  int s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += bit(i);
  return s % 2;
}

PauliWord PauliWord::operator*(const PauliWord& rhs) const {
  if (sites() != rhs.sites()) throw ShapeError("PauliWord product: site count mismatch");
  Complex phase = phase_ * rhs.phase_;
  std::vector<Letter> out(sites());
  for (std::size_t i = 0; i < sites(); ++i) {
    // X^a Z^b X^c Z^d = (-1)^{b c} X^{a+c} Z^{b+d}
    if (letters_[i].z && rhs.letters_[i].x) phase = -phase;
    out[i].x = letters_[i].x != rhs.letters_[i].x;
    out[i].z = letters_[i].z != rhs.letters_[i].z;
  }
  return PauliWord(phase, std::move(out));
}

PauliWord PauliWord::adjoint() const {
  Complex phase = std::conj(phase_);
  for (const auto& l : letters_)
    if (l.x && l.z) phase = -phase;
  return PauliWord(phase, letters_);
}

ComplexMatrix PauliWord::matrix() const {
  const ComplexMatrix x = pauli::x(), z = pauli::z(), id = pauli::identity();
  std::vector<ComplexMatrix> factors;
  factors.reserve(sites());
  for (const auto& l : letters_) {
    ComplexMatrix f = id;
    if (l.x) f = f * x;
    if (l.z) f = f * z;
    factors.push_back(std::move(f));
  }
  return phase_ * kron_all(factors);
}

PauliWord PauliWord::restrict_to(std::span<const std::size_t> sites_subset) const {
  std::vector<Letter> out;
  out.reserve(sites_subset.size());
  for (auto s : sites_subset) out.push_back(letters_.at(s));
  return PauliWord(phase_, std::move(out));
}

StateVector tilted_bell(TiltAngle theta, int b) {
  const double c = theta.cos(), s = theta.sin();
  StateVector v = StateVector::Zero(4);
  switch (b) {
    case 0: v(0) = c; v(3) = s; break;
    case 1: v(0) = s; v(3) = -c; break;
    case 2: v(1) = c; v(2) = s; break;
    case 3: v(1) = s; v(2) = -c; break;
    default: throw ContractError("tilted_bell: b must be in {0,1,2,3}, got " + std::to_string(b));
  }
  return v;
}

StateVector tilted_ghz(TiltAngle theta, std::size_t n, OutcomeIndex r) {
  if (n < 2) throw ContractError("tilted_ghz: need at least two parties");
  if (r.parties() != n) throw ContractError("tilted_ghz: outcome index is for a different party count");
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t k = r.value();
  const std::size_t kbar = (dim - 1) ^ k;
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = (r.parity() ? -1.0 : 1.0) * theta.cos();
  v(static_cast<Eigen::Index>(kbar)) = theta.sin();
  return v;
}

ComplexMatrix projector(const ComplexMatrix& d, int a) {
  if (a != 0 && a != 1) throw ContractError("projector: outcome must be 0 or 1");
  require_hermitian(d, 1e-10, "projector");
  const auto id = ComplexMatrix::Identity(d.rows(), d.cols());
  if ((d * d - id).cwiseAbs().maxCoeff() > 1e-10)
    throw ContractError("projector: observable is not an involution (D^2 != I)");
  return 0.5 * (id + (a == 0 ? 1.0 : -1.0) * d);
}

MeasurementSettings ideal_settings(TiltAngle theta, std::size_t n) {
  if (n < 2) throw ContractError("ideal_settings: need at least two parties");
  MeasurementSettings s;
  s.theta = theta.radians();
  s.mu = mu_of_theta(theta);
  s.alpha = alpha_of_theta(theta);
  const ComplexMatrix z = pauli::z(), x = pauli::x();
  s.observables.assign(n - 1, {z, x});
  const double cm = std::cos(s.mu), sm = std::sin(s.mu);
  s.observables.emplace_back(cm * z + sm * x, cm * z - sm * x);
  return s;
}

void validate_settings(const MeasurementSettings& s) {
  if (s.parties() < 2) throw ContractError("settings: need at least two parties");
  if (std::abs(std::tan(s.mu) - std::sin(2 * s.theta)) > 1e-12)
    throw ContractError("settings: tan(mu) != sin(2 theta)");
  const double s2 = std::sin(2 * s.theta);
  if (std::abs(s.alpha - 2 * std::cos(2 * s.theta) / std::sqrt(1 + s2 * s2)) > 1e-12)
    throw ContractError("settings: alpha inconsistent with theta");
  for (std::size_t i = 0; i < s.parties(); ++i) {
    for (const auto* o : {&s.observables[i].first, &s.observables[i].second}) {
      require_hermitian(*o, 1e-10, "settings");
      const auto id = ComplexMatrix::Identity(o->rows(), o->cols());
      if ((*o * *o - id).cwiseAbs().maxCoeff() > 1e-10)
        throw ContractError("settings: observable of party " + std::to_string(i) +
                            " is not an involution");
    }
  }
}

PauliWord ghz_correction_word(std::size_t n, OutcomeIndex r) {
  if (n < 2) throw ContractError("ghz_correction_word: need at least two parties");
  if (r.parties() != n) throw ContractError("ghz_correction_word: party count mismatch");
  std::vector<PauliWord::Letter> letters(n);
  for (std::size_t i = 0; i < n; ++i) letters[i].x = r.bit(i) != 0;
  letters[0].z = r.parity() != 0;
  return PauliWord(Complex(1.0, 0.0), std::move(letters));
}

}  // namespace ghzst
