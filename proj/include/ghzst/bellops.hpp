#pragma once

// Tilted CHSH Bell operators and the outcome-dependent ("tilde") conjugation
// of observables by the GHZ correction words.

#include <string>
#include <vector>

#include "ghzst/qstates.hpp"

namespace ghzst {

double alpha_of_theta(TiltAngle theta);
double mu_of_theta(TiltAngle theta);

/// sqrt(8 + 2 alpha^2), alpha in [0, 2).
double max_violation(double alpha);

/// Label of a tilted CHSH operator. Either one of the four two-party operators
/// W_b (b in 0..3) or the multipartite W_abar whose sign pattern depends on the
/// parity of the outcome string abar measured on the first N-2 parties.
class BellVariant {
 public:
  static BellVariant tilted(int b);
  static BellVariant conditioned(std::vector<int> abar);

  bool is_conditioned() const { return conditioned_; }
  int b() const { return b_; }
  const std::vector<int>& abar() const { return abar_; }
  int abar_parity() const;
  std::string label() const;

 private:
  bool conditioned_ = false;
  int b_ = 0;
  std::vector<int> abar_;
};

struct BellOperator {
  double alpha = 0.0;
  BellVariant variant;
  ComplexMatrix matrix;  // acts on (party N-1) (x) (party N)
};

/// Bell operator on the last two parties of `settings`.
BellOperator chsh_operator(const MeasurementSettings& settings, const BellVariant& variant);

struct TildeTag {
  OutcomeIndex r;
  PauliWord word;
};

TildeTag make_tilde_tag(std::size_t n, OutcomeIndex r);

/// U^dagger op U with U the tag's word on the full register.
ComplexMatrix tilde(const ComplexMatrix& op, const TildeTag& tag);
/// Same, for an operator acting only on `sites` (in that order).
ComplexMatrix tilde(const ComplexMatrix& op, const TildeTag& tag, std::span<const std::size_t> sites);

}  // namespace ghzst
