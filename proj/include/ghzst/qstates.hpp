#pragma once

// Tilted Bell/GHZ states, dichotomic projectors, ideal measurement settings and
// the Pauli words that rotate every tilted GHZ state onto |GHZ^0_theta>.

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "ghzst/kernel.hpp"

namespace ghzst {

/// Tilt angle theta in (0, pi/4].
class TiltAngle {
 public:
  /// Values up to 1e-4 above pi/4 are snapped to pi/4 so that decimal inputs
  /// such as 0.7854 denote the maximally entangled point.
  explicit TiltAngle(double theta);

  double radians() const { return theta_; }
  double cos() const;
  double sin() const;

 private:
  double theta_;
};

/// Outcome r of an n-party GHZ measurement; bit i (site 0 most significant) is k_i.
class OutcomeIndex {
 public:
  OutcomeIndex(std::uint32_t r, std::size_t n);

  std::uint32_t value() const { return r_; }
  std::size_t parties() const { return n_; }
  int bit(std::size_t site) const { return static_cast<int>((r_ >> (n_ - 1 - site)) & 1U); }
  int parity() const;

 private:
  std::uint32_t r_;
  std::size_t n_;
};

/// Signed tensor product of single-site Pauli letters X^x Z^z (matrix product, X on the left).
class PauliWord {
 public:
  struct Letter {
    bool x = false;
    bool z = false;
    friend bool operator==(const Letter&, const Letter&) = default;
  };

  PauliWord() = default;
  explicit PauliWord(std::size_t sites) : letters_(sites) {}
  PauliWord(Complex phase, std::vector<Letter> letters) : phase_(phase), letters_(std::move(letters)) {}

  static PauliWord identity(std::size_t sites) { return PauliWord(sites); }

  std::size_t sites() const { return letters_.size(); }
  Complex phase() const { return phase_; }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter letter(std::size_t site) const { return letters_.at(site); }

  PauliWord operator*(const PauliWord& rhs) const;
  PauliWord adjoint() const;
  /// Letters equal (phase ignored).
  bool same_letters(const PauliWord& rhs) const { return letters_ == rhs.letters_; }

  ComplexMatrix matrix() const;
  /// Restriction to a subset of sites; the phase is kept.
  PauliWord restrict_to(std::span<const std::size_t> sites) const;

 private:
  Complex phase_{1.0, 0.0};
  std::vector<Letter> letters_;
};

/// Ideal observables for one party: (A_0, A_1).
using ObservablePair = std::pair<ComplexMatrix, ComplexMatrix>;

struct MeasurementSettings {
  double theta = std::numbers::pi / 4;
  double mu = std::numbers::pi / 4;
  double alpha = 0.0;
  std::vector<ObservablePair> observables;  // one pair per party

  std::size_t parties() const { return observables.size(); }
};

StateVector tilted_bell(TiltAngle theta, int b);
StateVector tilted_ghz(TiltAngle theta, std::size_t n, OutcomeIndex r);

/// P_D^a = (I + (-1)^a D) / 2 for a Hermitian involution D.
ComplexMatrix projector(const ComplexMatrix& d, int a);

MeasurementSettings ideal_settings(TiltAngle theta, std::size_t n);

/// Checks the settings invariants (angle relations, Hermitian involutions).
void validate_settings(const MeasurementSettings& s);

/// Pauli word U with U |GHZ^r_theta> = phase |GHZ^0_theta>:
/// X^{k_i} on every site, preceded on site 0 by Z when sum k_i is odd.
PauliWord ghz_correction_word(std::size_t n, OutcomeIndex r);

}  // namespace ghzst
