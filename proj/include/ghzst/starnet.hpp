#pragma once

// Star network: N Alices each share a two-qubit link with a central node (Roy)
// who performs the tilted GHZ-state measurement on his N halves.

#include <optional>
#include <string>
#include <vector>

#include "ghzst/bellops.hpp"

namespace ghzst {

struct StarNetwork {
  std::size_t n = 0;
  std::vector<DensityMatrix> links;  // link i acts on (A_i, R_i), A_i first
  TiltAngle theta{std::numbers::pi / 4};
};

/// Every link in the maximally entangled state |Bell^0_{pi/4}>.
StarNetwork build_star(std::size_t n, TiltAngle theta);

/// Every link depolarized: (1 - eps) |Bell><Bell| + eps I/4.
StarNetwork build_noisy_star(std::size_t n, TiltAngle theta, double eps);

/// Throws ContractError unless every link is a valid two-qubit density matrix.
void validate_network(const StarNetwork& net);

/// Global state of all links, reordered to (A_1..A_N, R_1..R_N).
DensityMatrix alice_roy_state(const StarNetwork& net);

/// Roy's tilted GSM effects |GHZ^r_theta><GHZ^r_theta|, r = 0..2^N-1.
std::vector<ComplexMatrix> tilted_gsm(TiltAngle theta, std::size_t n);

struct ConditionalOutcome {
  std::uint32_t r = 0;
  double probability = 0.0;
  std::optional<DensityMatrix> state;  // empty when probability vanishes
};

/// Outcome probabilities and normalized Alice states for arbitrary effects on Roy's registers.
std::vector<ConditionalOutcome> condition_on_effects(const StarNetwork& net,
                                                     const std::vector<ComplexMatrix>& effects);

std::vector<ConditionalOutcome> apply_gsm(const StarNetwork& net);

struct CorrelationRecord {
  std::string id;
  double lhs = 0.0;
  double target = 0.0;
  double deviation = 0.0;
};

struct CorrelationReport {
  std::uint32_t r = 0;
  std::vector<CorrelationRecord> records;
  double max_deviation = 0.0;
};

/// Correlation conditions self-testing |GHZ^r_theta>, evaluated on `state`.
/// Record order: c2 family over (i, j), i <= j, lexicographic; then the
/// marginal family and the CHSH family, each over abar lexicographic.
CorrelationReport evaluate_lemma2(const DensityMatrix& state, const MeasurementSettings& settings,
                                  OutcomeIndex r);

/// The r = 0 conditions.
CorrelationReport evaluate_lemma1(const DensityMatrix& state, const MeasurementSettings& settings);

}  // namespace ghzst
