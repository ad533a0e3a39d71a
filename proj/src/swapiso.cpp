#include "ghzst/swapiso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ghzst {

namespace {

void require_involution(const ComplexMatrix& m, const char* what) {
  require_hermitian(m, 1e-10, what);
  const auto id = ComplexMatrix::Identity(m.rows(), m.cols());
  if ((m * m - id).cwiseAbs().maxCoeff() > 1e-10)
    throw ContractError(std::string(what) + ": operator is not an involution");
}

ComplexMatrix sign_with_cutoff(const ComplexMatrix& m) {
  const auto eig = herm_eig(m);
  RealVector s(eig.values.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double l = eig.values(k);
    s(k) = std::abs(l) < kRegularizationCutoff ? 1.0 : (l > 0 ? 1.0 : -1.0);
  }
  return eig.vectors * s.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

struct Kraus {
  ComplexMatrix k0;
  ComplexMatrix k1;
};

Kraus kraus_of(const SwapPair& p) {
  const auto id = ComplexMatrix::Identity(p.z.rows(), p.z.cols());
  const ComplexMatrix p0 = 0.5 * (id + p.z);
  const ComplexMatrix p1 = 0.5 * (id - p.z);
  return {p0, p.x * p1};
}

RegisterShape shape_of(const std::vector<SwapPair>& pairs) {
  RegisterShape s;
  for (const auto& p : pairs) s.dims.push_back(p.dim());
  return s;
}

}  // namespace

SwapPair::SwapPair(ComplexMatrix x_op, ComplexMatrix z_op) : x(std::move(x_op)), z(std::move(z_op)) {
  if (x.rows() != z.rows() || x.cols() != z.cols()) throw ShapeError("SwapPair: X and Z dimension mismatch");
  require_involution(x, "SwapPair X");
  require_involution(z, "SwapPair Z");
}

SwapPair regularize(const ComplexMatrix& a0, const ComplexMatrix& a1, double mu) {
  const double c = std::cos(mu), s = std::sin(mu);
  if (std::abs(c) < 1e-12 || std::abs(s) < 1e-12)
    throw ContractError("regularize: mu must avoid 0 and pi/2 (division by zero)");
  if (a0.rows() != a1.rows() || a0.cols() != a1.cols()) throw ShapeError("regularize: dimension mismatch");
  require_involution(a0, "regularize A0");
  require_involution(a1, "regularize A1");
  const ComplexMatrix z_star = (a0 + a1) / (2 * c);
  const ComplexMatrix x_star = (a0 - a1) / (2 * s);
  return SwapPair(sign_with_cutoff(x_star), sign_with_cutoff(z_star));
}

std::vector<SwapPair> swap_pairs_from_settings(const MeasurementSettings& settings) {
  std::vector<SwapPair> pairs;
  const std::size_t n = settings.parties();
  for (std::size_t i = 0; i + 1 < n; ++i)
    pairs.emplace_back(settings.observables[i].second, settings.observables[i].first);
  const auto& [a0, a1] = settings.observables.back();
  pairs.push_back(regularize(a0, a1, settings.mu));
  return pairs;
}

StateVector swap_gate_apply(const SwapPair& pair, const StateVector& xi) {
  if (static_cast<std::size_t>(xi.size()) != pair.dim()) throw ShapeError("swap_gate_apply: dimension mismatch");
  const auto k = kraus_of(pair);
  StateVector out(2 * xi.size());
  out.head(xi.size()) = k.k0 * xi;
  out.tail(xi.size()) = k.k1 * xi;
  return out;
}

DensityMatrix swap_channel(const SwapPair& pair, const DensityMatrix& rho) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != pair.dim())
    throw ShapeError("swap_channel: dimension mismatch");
  const auto k = kraus_of(pair);
  const ComplexMatrix* ks[2] = {&k.k0, &k.k1};
  DensityMatrix out(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out(a, b) = (*ks[a] * rho * ks[b]->adjoint()).trace();
  return out;
}

DensityMatrix swap_channel_on_site(const SwapPair& pair, const DensityMatrix& rho,
                                   const RegisterShape& shape, std::size_t site) {
  if (site >= shape.sites()) throw ShapeError("swap_channel_on_site: site out of range");
  if (shape.dims[site] != pair.dim()) throw ShapeError("swap_channel_on_site: pair does not act on this site");
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != shape.total())
    throw ShapeError("swap_channel_on_site: state does not live on the register");

  const auto k = kraus_of(pair);
  const ComplexMatrix ks[2] = {embed(k.k0, shape, site), embed(k.k1, shape, site)};
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < shape.sites(); ++s)
    if (s != site) rest.push_back(s);

  // Stage as (qubit, rest...) and move the qubit back into position.
  ComplexMatrix staged;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const ComplexMatrix block = partial_trace(ks[a] * rho * ks[b].adjoint(), shape, rest);
      if (staged.size() == 0) staged = ComplexMatrix::Zero(2 * block.rows(), 2 * block.cols());
      staged.block(a * block.rows(), b * block.cols(), block.rows(), block.cols()) = block;
    }
  RegisterShape staged_shape;
  staged_shape.dims.push_back(2);
  for (auto s : rest) staged_shape.dims.push_back(shape.dims[s]);
  std::vector<std::size_t> perm(shape.sites());
  for (std::size_t s = 0, pos = 1; s < shape.sites(); ++s) perm[s] = s == site ? 0 : pos++;
  return permute_sites(staged, staged_shape, perm);
}

DensityMatrix apply_swap_channels(const std::vector<SwapPair>& pairs, const DensityMatrix& rho) {
  RegisterShape shape = shape_of(pairs);
  DensityMatrix out = rho;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out = swap_channel_on_site(pairs[i], out, shape, i);
    shape.dims[i] = 2;
  }
  return out;
}

Extraction isometry_extract(const StateVector& psi, const std::vector<SwapPair>& pairs) {
  const RegisterShape shape = shape_of(pairs);
  const auto dim = static_cast<Eigen::Index>(shape.total());
  if (psi.size() != dim) throw ShapeError("isometry_extract: state does not live on the pairs' register");
  const std::size_t n = pairs.size();
  std::vector<Kraus> ks;
  for (const auto& p : pairs) ks.push_back(kraus_of(p));

  const std::size_t sectors = std::size_t{1} << n;
  StateVector out(static_cast<Eigen::Index>(sectors) * dim);
  for (std::size_t a = 0; a < sectors; ++a) {
    std::vector<ComplexMatrix> factors;
    for (std::size_t i = 0; i < n; ++i) factors.push_back(((a >> (n - 1 - i)) & 1U) ? ks[i].k1 : ks[i].k0);
    out.segment(static_cast<Eigen::Index>(a) * dim, dim) = kron_all(factors) * psi;
  }

  RegisterShape full = RegisterShape::qubits(n);
  full.dims.insert(full.dims.end(), shape.dims.begin(), shape.dims.end());
  std::vector<std::size_t> ancillas, originals;
  for (std::size_t i = 0; i < n; ++i) {
    ancillas.push_back(i);
    originals.push_back(n + i);
  }
  const DensityMatrix joint = outer(out);
  return {partial_trace(joint, full, originals), partial_trace(joint, full, ancillas)};
}

double ghz_fidelity_functional(const DensityMatrix& tau, const std::vector<SwapPair>& pairs) {
  const RegisterShape shape = shape_of(pairs);
  if (tau.rows() != tau.cols() || static_cast<std::size_t>(tau.rows()) != shape.total())
    throw ShapeError("ghz_fidelity_functional: state does not live on the pairs' register");
  const auto dim = tau.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix plus = id, minus = id, cross_pm = id, cross_mp = id;
  for (std::size_t f = 0; f < pairs.size(); ++f) {
    const ComplexMatrix z = embed(pairs[f].z, shape, f);
    const ComplexMatrix x = embed(pairs[f].x, shape, f);
    plus = plus * (id + z);
    minus = minus * (id - z);
    cross_pm = cross_pm * ((id + z) * x * (id - z));
    cross_mp = cross_mp * ((id - z) * x * (id + z));
  }
  const double n = static_cast<double>(pairs.size());
  const double diag = ((plus + minus) * tau).trace().real() / std::pow(2.0, n + 1);
  const double cross = ((cross_pm + cross_mp) * tau).trace().real() / (2.0 * std::pow(4.0, n));
  return diag + cross;
}

double ghz_fidelity_via_channels(const DensityMatrix& tau, const std::vector<SwapPair>& pairs) {
  const DensityMatrix sigma = apply_swap_channels(pairs, tau);
  const auto d = sigma.rows();
  StateVector ghz = StateVector::Zero(d);
  ghz(0) = ghz(d - 1) = 1.0 / std::sqrt(2.0);
  return (ghz.adjoint() * sigma * ghz)(0, 0).real();
}

ChoiMap::ChoiMap(ComplexMatrix choi, std::size_t output_dim, std::size_t input_dim)
    : choi_(std::move(choi)), output_dim_(output_dim), input_dim_(input_dim) {
  const auto d = static_cast<Eigen::Index>(output_dim * input_dim);
  if (choi_.rows() != d || choi_.cols() != d) throw ShapeError("ChoiMap: Choi operator dimension mismatch");
}

ComplexMatrix ChoiMap::apply(const ComplexMatrix& input) const {
  if (static_cast<std::size_t>(input.rows()) != input_dim_ || input.rows() != input.cols())
    throw ShapeError("ChoiMap::apply: input dimension mismatch");
  return trace_out_with(choi_, output_dim_, input_dim_, input.transpose());
}

double ChoiMap::unitality_residual() const {
  const auto in = static_cast<Eigen::Index>(input_dim_), out = static_cast<Eigen::Index>(output_dim_);
  return (apply(ComplexMatrix::Identity(in, in)) - ComplexMatrix::Identity(out, out)).norm();
}

ChoiMap choi_from_state(const DensityMatrix& sigma, double scale, std::size_t output_dim) {
  if (sigma.rows() != sigma.cols() || output_dim == 0 || sigma.rows() % static_cast<Eigen::Index>(output_dim) != 0)
    throw ShapeError("choi_from_state: operator is not on output (x) input");
  return ChoiMap(scale * sigma, output_dim, static_cast<std::size_t>(sigma.rows()) / output_dim);
}

Theorem1Report theorem1_verify(const StarNetwork& net, const std::vector<ComplexMatrix>& effects,
                               const std::vector<SwapPair>& pairs, PovmCheck check) {
  validate_network(net);
  const std::size_t n = net.n;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (effects.size() != static_cast<std::size_t>(dim))
    throw ContractError("theorem1_verify: expected one effect per GHZ outcome");
  if (pairs.size() != n) throw ContractError("theorem1_verify: one swap pair per Alice required");

  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::size_t r = 0; r < effects.size(); ++r) {
    const auto& e = effects[r];
    if (e.rows() != dim || e.cols() != dim) throw ShapeError("theorem1_verify: effect " + std::to_string(r) + " has wrong dimension");
    if (!is_hermitian(e, 1e-10) || min_eigenvalue(e) < -1e-10)
      throw ContractError("theorem1_verify: effect " + std::to_string(r) + " is not positive semidefinite");
    total += e;
  }
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  const double povm_residual = (total - id).norm();
  if (check == PovmCheck::strict && (total - id).cwiseAbs().maxCoeff() > 1e-10) {
    // The offending effect is the one whose completion I - sum_{s != r} E_s is closest to positive.
    std::size_t worst = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < effects.size(); ++r) {
      const double lmin = min_eigenvalue(id - total + effects[r]);
      if (lmin > best) {
        best = lmin;
        worst = r;
      }
    }
    throw ContractError("theorem1_verify: effects do not sum to the identity (offending effect " +
                        std::to_string(worst) + ")");
  }

  Theorem1Report rep;
  rep.povm_residual = povm_residual;
  std::vector<ComplexMatrix> choi_states;
  const RegisterShape link_shape = RegisterShape::qubits(2);
  for (std::size_t i = 0; i < n; ++i) {
    if (pairs[i].dim() != 2) throw ShapeError("theorem1_verify: swap pairs must act on the qubit links");
    const DensityMatrix sigma = swap_channel_on_site(pairs[i], net.links[i], link_shape, 0);
    const ChoiMap map = choi_from_state(sigma, 2.0);
    rep.unitality_residuals.push_back(map.unitality_residual());
    choi_states.push_back(map.choi());
  }

  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i) perm.push_back(2 * i);
  for (std::size_t i = 0; i < n; ++i) perm.push_back(2 * i + 1);
  const ComplexMatrix joint_choi =
      permute_sites(kron_all(std::span<const ComplexMatrix>(choi_states)), RegisterShape::qubits(2 * n), perm);
  const DensityMatrix joint_state = alice_roy_state(net);

  const auto udim = static_cast<std::size_t>(dim);
  for (std::size_t r = 0; r < effects.size(); ++r) {
    const ComplexMatrix image = trace_out_with(joint_choi, udim, udim, effects[r].transpose());
    const ComplexMatrix target = outer(tilted_ghz(net.theta, n, OutcomeIndex(static_cast<std::uint32_t>(r), n)));
    rep.distances.push_back((image - target).norm());
    rep.probabilities.push_back(trace_out_with(joint_state, udim, udim, effects[r]).trace().real());
  }
  rep.max_distance = *std::max_element(rep.distances.begin(), rep.distances.end());
  rep.max_unitality = *std::max_element(rep.unitality_residuals.begin(), rep.unitality_residuals.end());
  return rep;
}

}  // namespace ghzst
