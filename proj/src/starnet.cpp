#include "ghzst/starnet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ghzst {

namespace {

std::string abar_string(std::uint32_t bits, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += ((bits >> (len - 1 - i)) & 1U) ? '1' : '0';
  return s;
}

void push(CorrelationReport& rep, std::string id, double lhs, double target) {
  const double dev = std::abs(lhs - target);
  rep.max_deviation = std::max(rep.max_deviation, dev);
  rep.records.push_back({std::move(id), lhs, target, dev});
}

}  // namespace

StarNetwork build_star(std::size_t n, TiltAngle theta) {
  return build_noisy_star(n, theta, 0.0);
}

StarNetwork build_noisy_star(std::size_t n, TiltAngle theta, double eps) {
  if (n < 2) throw ContractError("star network needs at least two Alices");
  if (!(eps >= 0.0 && eps <= 1.0)) throw ContractError("link noise must lie in [0, 1]");
  const DensityMatrix bell = outer(tilted_bell(TiltAngle(std::numbers::pi / 4), 0));
  const DensityMatrix link = (1.0 - eps) * bell + eps * ComplexMatrix::Identity(4, 4) / 4.0;
  return StarNetwork{n, std::vector<DensityMatrix>(n, link), theta};
}

void validate_network(const StarNetwork& net) {
  if (net.n < 2) throw ContractError("star network needs at least two Alices");
  if (net.links.size() != net.n) throw ContractError("star network: one link per Alice required");
  for (std::size_t i = 0; i < net.n; ++i) {
    const auto& l = net.links[i];
    if (l.rows() != 4 || l.cols() != 4)
      throw ShapeError("link " + std::to_string(i) + " is not a two-qubit operator");
    require_hermitian(l, 1e-10, "link state");
    if (std::abs(l.trace().real() - 1.0) > 1e-10)
      throw ContractError("link " + std::to_string(i) + " does not have unit trace");
    if (min_eigenvalue(l) < -1e-10)
      throw ContractError("link " + std::to_string(i) + " is not positive semidefinite");
  }
}

DensityMatrix alice_roy_state(const StarNetwork& net) {
  validate_network(net);
  const DensityMatrix global = kron_all(std::span<const ComplexMatrix>(net.links));
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < net.n; ++i) perm.push_back(2 * i);
  for (std::size_t i = 0; i < net.n; ++i) perm.push_back(2 * i + 1);
  return permute_sites(global, RegisterShape::qubits(2 * net.n), perm);
}

std::vector<ComplexMatrix> tilted_gsm(TiltAngle theta, std::size_t n) {
  std::vector<ComplexMatrix> effects;
  const std::uint32_t count = 1U << n;
  effects.reserve(count);
  for (std::uint32_t r = 0; r < count; ++r)
    effects.push_back(outer(tilted_ghz(theta, n, OutcomeIndex(r, n))));
  return effects;
}

std::vector<ConditionalOutcome> condition_on_effects(const StarNetwork& net,
                                                     const std::vector<ComplexMatrix>& effects) {
  const DensityMatrix joint = alice_roy_state(net);
  const std::size_t dim = std::size_t{1} << net.n;
  std::vector<ConditionalOutcome> out;
  out.reserve(effects.size());
  for (std::size_t r = 0; r < effects.size(); ++r) {
    DensityMatrix unnorm = trace_out_with(joint, dim, dim, effects[r]);
    ConditionalOutcome o;
    o.r = static_cast<std::uint32_t>(r);
    o.probability = unnorm.trace().real();
    if (o.probability > 1e-14) o.state = unnorm / o.probability;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<ConditionalOutcome> apply_gsm(const StarNetwork& net) {
  return condition_on_effects(net, tilted_gsm(net.theta, net.n));
}

CorrelationReport evaluate_lemma2(const DensityMatrix& state, const MeasurementSettings& settings,
                                  OutcomeIndex r) {
  const std::size_t n = settings.parties();
  if (n < 2) throw ContractError("evaluate_lemma2: need at least two parties");
  if (r.parties() != n) throw ContractError("evaluate_lemma2: outcome index party count mismatch");
  RegisterShape shape;
  for (const auto& [a0, a1] : settings.observables) {
    if (a0.rows() != a1.rows()) throw ShapeError("evaluate_lemma2: observable pair dimension mismatch");
    shape.dims.push_back(static_cast<std::size_t>(a0.rows()));
  }
  if (state.rows() != state.cols() || static_cast<std::size_t>(state.rows()) != shape.total())
    throw ShapeError("evaluate_lemma2: state does not live on the settings' register");
  const bool conjugate = r.value() != 0;
  if (conjugate && std::any_of(shape.dims.begin(), shape.dims.end(), [](auto d) { return d != 2; }))
    throw ShapeError("evaluate_lemma2: outcome-dependent conditions need qubit parties");

  const TildeTag tag = make_tilde_tag(n, r);
  auto tilde_r = [&](const ComplexMatrix& full) { return conjugate ? tilde(full, tag) : full; };
  auto ev = [&](const ComplexMatrix& op) { return (state * op).trace().real(); };

  const double c = std::cos(settings.theta);
  const std::size_t conditioned = n - 2;
  const double weight = 1.0 / static_cast<double>(std::uint64_t{1} << conditioned);

  CorrelationReport rep;
  rep.r = r.value();

  std::vector<ComplexMatrix> p0(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    p0[i] = tilde_r(embed(projector(settings.observables[i].first, 0), shape, i));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i; j + 1 < n; ++j) {
      const double lhs = i == j ? ev(p0[i]) : ev(p0[i] * p0[j]);
      push(rep, "c2(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", lhs, c * c);
    }

  const std::uint32_t patterns = 1U << conditioned;
  std::vector<ComplexMatrix> prods(patterns);
  for (std::uint32_t bits = 0; bits < patterns; ++bits) {
    ComplexMatrix prod = ComplexMatrix::Identity(state.rows(), state.cols());
    for (std::size_t i = 0; i < conditioned; ++i) {
      const int a = static_cast<int>((bits >> (conditioned - 1 - i)) & 1U);
      prod = prod * tilde_r(embed(projector(settings.observables[i].second, a), shape, i));
    }
    prods[bits] = std::move(prod);
    push(rep, "marg(" + abar_string(bits, conditioned) + ")", ev(prods[bits]), weight);
  }

  const double violation = max_violation(settings.alpha);
  const std::size_t last_two[] = {n - 2, n - 1};
  for (std::uint32_t bits = 0; bits < patterns; ++bits) {
    std::vector<int> abar(conditioned);
    for (std::size_t i = 0; i < conditioned; ++i) abar[i] = static_cast<int>((bits >> (conditioned - 1 - i)) & 1U);
    const auto w = chsh_operator(settings, BellVariant::conditioned(abar));
    const ComplexMatrix w_full = tilde_r(embed(w.matrix, shape, last_two));
    push(rep, "chsh(" + abar_string(bits, conditioned) + ")", ev(prods[bits] * w_full), violation * weight);
  }
  return rep;
}

CorrelationReport evaluate_lemma1(const DensityMatrix& state, const MeasurementSettings& settings) {
  return evaluate_lemma2(state, settings, OutcomeIndex(0, settings.parties()));
}

}  // namespace ghzst
