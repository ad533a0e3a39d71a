#pragma once

// Moment-matrix relaxation for the three-party GHZ extraction fidelity under
// white noise: word algebra over dichotomic observables A_i, B_i, C_i, the
// moment basis, the fidelity objective and the noise constraints.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ghzst/qstates.hpp"

namespace ghzst::npa {

enum class Party : std::uint8_t { A = 0, B = 1, C = 2 };

struct Letter {
  Party party;
  std::uint8_t index;  // 0 or 1

  friend bool operator==(const Letter&, const Letter&) = default;
};

inline constexpr std::size_t kParties = 3;

/// Reduced word: one alternating letter-index sequence per party.
struct Word {
  std::array<std::vector<std::uint8_t>, kParties> parts;

  bool is_identity() const;
  std::size_t degree() const;
  /// Per-party reversal (parties commute).
  Word adjoint() const;
  /// "I" for the empty word, otherwise e.g. "A0A1B0C1C0".
  std::string to_string() const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;
};

struct Reduction {
  Word word;
  int sign = 1;
  bool conjugated = false;  // the adjoint was stored
};

/// Cancels O^2 = I, separates parties and picks the smaller of word and adjoint.
Reduction reduce(std::span<const Letter> letters);
Reduction reduce(const Word& word);

/// Linear combination of canonical words.
using WordPolynomial = std::map<Word, double>;

/// Per party {I, O0, O1, O0O1, O1O0}; all 125 triples, party A most significant.
std::vector<Word> build_basis();

/// Extraction fidelity functional at theta = pi/4 with Z_C = (C0 + C1)/sqrt2, X_C = (C0 - C1)/sqrt2.
WordPolynomial objective_fidelity();

struct PolyConstraint {
  std::string label;
  WordPolynomial poly;
  double target = 0.0;
};

/// The seven noise constraints at white-noise weight eps.
std::vector<PolyConstraint> constraints_eq9(double epsilon);

struct SparseForm {
  std::vector<std::pair<std::size_t, double>> terms;  // (moment index, coefficient)
};

struct EqualityConstraint {
  std::string label;
  SparseForm form;
  double target = 0.0;
};

struct EntryRef {
  std::uint32_t moment;
  std::int8_t sign;
};

struct SdpProblem {
  double epsilon = 0.0;
  std::vector<Word> basis;
  std::vector<Word> moments;  // canonical words, moments[0] is I
  std::vector<EntryRef> entries;  // row-major basis.size()^2 table of u^dagger v
  std::vector<EqualityConstraint> constraints;  // normalization first
  SparseForm objective;

  std::size_t dim() const { return basis.size(); }
  const EntryRef& entry(std::size_t row, std::size_t col) const { return entries[row * basis.size() + col]; }
  /// Index of a canonical word; throws ContractError if it is not a moment.
  std::size_t moment_index(const Word& w) const;

  std::vector<std::size_t> word_order;  // moment indices in word order
};

/// Basis, moment table, normalization plus the noise constraints, and the objective.
/// Throws ContractError listing words that are not reachable in the moment matrix.
SdpProblem build_problem(double epsilon);

double evaluate(const SparseForm& form, const RealVector& y);

/// M(y)_{uv} = sign * y[moment(u^dagger v)].
Eigen::MatrixXd assemble(const SdpProblem& problem, const RealVector& y);

/// Re Tr(rho w) for every moment word, observables given per party as (O0, O1) on qubits A, B, C.
RealVector exact_moments(const SdpProblem& problem, const DensityMatrix& rho,
                         const std::array<ObservablePair, kParties>& observables);

/// Observables behind the objective's substitution: A, B = (Z, X); C = ((Z+X)/sqrt2, (Z-X)/sqrt2).
std::array<ObservablePair, kParties> ideal_observables();

}  // namespace ghzst::npa
