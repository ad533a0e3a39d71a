#pragma once

// Swap-gate extraction: operator regularization, swap gates and their induced
// channels, local isometry extraction, Choi-Jamiolkowski maps and the check
// that Roy's effects are mapped onto the tilted GHZ projectors.

#include <vector>

#include "ghzst/starnet.hpp"

namespace ghzst {

/// Zero-eigenvalue cutoff used when regularizing the last party's operators.
inline constexpr double kRegularizationCutoff = 1e-8;

/// A party's (X, Z) pair of Hermitian involutions. Anticommutation is not assumed.
struct SwapPair {
  ComplexMatrix x;
  ComplexMatrix z;

  SwapPair(ComplexMatrix x_op, ComplexMatrix z_op);
  std::size_t dim() const { return static_cast<std::size_t>(z.rows()); }
  static SwapPair ideal() { return SwapPair(pauli::x(), pauli::z()); }
};

/// Z = sign((A0 + A1) / 2cos mu), X = sign((A0 - A1) / 2sin mu), with (near-)zero
/// eigenvalues mapped to +1.
SwapPair regularize(const ComplexMatrix& a0, const ComplexMatrix& a1, double mu);

/// Swap pairs implied by a set of settings: (A_1, A_0) for the first N-1 parties,
/// the regularized pair for the last one.
std::vector<SwapPair> swap_pairs_from_settings(const MeasurementSettings& settings);

/// Action of the swap gate on |0>_ancilla (x) |xi>: |0> P_Z^0 xi + |1> X P_Z^1 xi.
StateVector swap_gate_apply(const SwapPair& pair, const StateVector& xi);

/// Induced qubit channel: <a|Gamma(rho)|b> = Tr(K_a rho K_b^dagger), K_0 = P_Z^0, K_1 = X P_Z^1.
DensityMatrix swap_channel(const SwapPair& pair, const DensityMatrix& rho);

/// Applies the swap channel of `pair` to one site of a register; that site becomes a qubit.
DensityMatrix swap_channel_on_site(const SwapPair& pair, const DensityMatrix& rho,
                                   const RegisterShape& shape, std::size_t site);

/// (Gamma_1 (x) ... (x) Gamma_N)(rho) for one pair per party.
DensityMatrix apply_swap_channels(const std::vector<SwapPair>& pairs, const DensityMatrix& rho);

struct Extraction {
  DensityMatrix junk;       // original registers after the swap
  DensityMatrix extracted;  // ancilla qubits
};

/// Runs the product of swap gates on |0...0>|psi> and splits off the ancillas.
Extraction isometry_extract(const StateVector& psi, const std::vector<SwapPair>& pairs);

/// Fidelity of (x)Gamma_f (tau) with (|0..0> + |1..1>)/sqrt2, written as the
/// linear functional of tau built from the Z_f, X_f polynomials.
double ghz_fidelity_functional(const DensityMatrix& tau, const std::vector<SwapPair>& pairs);

/// Same quantity computed by running the swap channels.
double ghz_fidelity_via_channels(const DensityMatrix& tau, const std::vector<SwapPair>& pairs);

/// Lambda(s) = Tr_in[(I (x) s^T) choi], choi on output (x) input.
class ChoiMap {
 public:
  ChoiMap(ComplexMatrix choi, std::size_t output_dim, std::size_t input_dim);

  ComplexMatrix apply(const ComplexMatrix& input) const;
  const ComplexMatrix& choi() const { return choi_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  /// ||Lambda(I) - I||_F
  double unitality_residual() const;

 private:
  ComplexMatrix choi_;
  std::size_t output_dim_;
  std::size_t input_dim_;
};

ChoiMap choi_from_state(const DensityMatrix& sigma, double scale, std::size_t output_dim = 2);

struct Theorem1Report {
  std::vector<double> probabilities;        // p_r of each effect on the network
  std::vector<double> distances;            // ||(x)Lambda(R^r) - GHZ^r||_F
  std::vector<double> unitality_residuals;  // one per map
  double max_distance = 0.0;
  double max_unitality = 0.0;
  double povm_residual = 0.0;  // ||sum_r R^r - I||_F

  bool passed(double tol) const { return max_distance <= tol && max_unitality <= tol; }
};

/// strict: effects must sum to the identity. positivity_only: the sum is only
/// reported, which admits the even-N tilted GHZ families (those are not orthogonal).
enum class PovmCheck { strict, positivity_only };

/// Builds sigma_i = (Gamma_i (x) id)(tau_i) per link, the Choi maps of 2 sigma_i,
/// applies their product to every effect and compares with the GHZ^r projectors.
Theorem1Report theorem1_verify(const StarNetwork& net, const std::vector<ComplexMatrix>& effects,
                               const std::vector<SwapPair>& pairs, PovmCheck check = PovmCheck::strict);

}  // namespace ghzst
