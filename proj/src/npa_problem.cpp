#include "ghzst/npa.hpp"

#include <cmath>
#include <numbers>

namespace ghzst::npa {

namespace {

struct Term {
  double coef;
  std::vector<Letter> letters;
};
using RawPoly = std::vector<Term>;

RawPoly operator*(const RawPoly& a, const RawPoly& b) {
  RawPoly out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      Term t{x.coef * y.coef, x.letters};
      t.letters.insert(t.letters.end(), y.letters.begin(), y.letters.end());
      out.push_back(std::move(t));
    }
  return out;
}

RawPoly operator+(RawPoly a, const RawPoly& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

RawPoly scaled(RawPoly a, double s) {
  for (auto& t : a) t.coef *= s;
  return a;
}

RawPoly one() { return {{1.0, {}}}; }
RawPoly letter(Party p, std::uint8_t i) { return {{1.0, {{p, i}}}}; }

WordPolynomial canonical(const RawPoly& raw) {
  WordPolynomial out;
  for (const auto& t : raw) {
    const auto red = reduce(t.letters);
    out[red.word] += red.sign * t.coef;
  }
  std::erase_if(out, [](const auto& kv) { return std::abs(kv.second) < 1e-15; });
  return out;
}

// Projector (1 + (-1)^a O) / 2.
RawPoly proj(const RawPoly& o, int a) { return scaled(one() + scaled(o, a == 0 ? 1.0 : -1.0), 0.5); }

ComplexMatrix word_matrix(const Word& w, const std::array<ComplexMatrix, 6>& letters) {
  ComplexMatrix m = ComplexMatrix::Identity(8, 8);
  for (std::size_t p = 0; p < kParties; ++p)
    for (auto idx : w.parts[p]) m = m * letters[2 * p + idx];
  return m;
}

SparseForm to_form(const SdpProblem& prob, const WordPolynomial& poly) {
  SparseForm f;
  for (const auto& [w, c] : poly) f.terms.emplace_back(prob.moment_index(w), c);
  return f;
}

}  // namespace

std::vector<Word> build_basis() {
  static const std::vector<std::vector<std::uint8_t>> local = {{}, {0}, {1}, {0, 1}, {1, 0}};
  std::vector<Word> basis;
  for (const auto& a : local)
    for (const auto& b : local)
      for (const auto& c : local) basis.push_back(Word{{a, b, c}});
  return basis;
}

WordPolynomial objective_fidelity() {
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<RawPoly, kParties> z = {letter(Party::A, 0), letter(Party::B, 0),
                                           scaled(letter(Party::C, 0), r) + scaled(letter(Party::C, 1), r)};
  const std::array<RawPoly, kParties> x = {letter(Party::A, 1), letter(Party::B, 1),
                                           scaled(letter(Party::C, 0), r) + scaled(letter(Party::C, 1), -r)};
  RawPoly plus = one(), minus = one(), cross_pm = one(), cross_mp = one();
  for (std::size_t f = 0; f < kParties; ++f) {
    const RawPoly up = one() + z[f];
    const RawPoly down = one() + scaled(z[f], -1.0);
    plus = plus * up;
    minus = minus * down;
    cross_pm = cross_pm * (up * x[f] * down);
    cross_mp = cross_mp * (down * x[f] * up);
  }
  return canonical(scaled(plus + minus, 8.0 / 128.0) + scaled(cross_pm + cross_mp, 1.0 / 128.0));
}

std::vector<PolyConstraint> constraints_eq9(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ContractError("constraints_eq9: epsilon must lie in [0, 1]");
  const RawPoly a0 = letter(Party::A, 0), a1 = letter(Party::A, 1);
  const RawPoly b0 = letter(Party::B, 0), b1 = letter(Party::B, 1);
  const RawPoly c0 = letter(Party::C, 0), c1 = letter(Party::C, 1);

  std::vector<PolyConstraint> out;
  out.push_back({"P0(A0)", canonical(proj(a0, 0)), 0.5});
  out.push_back({"P0(B0)", canonical(proj(b0, 0)), 0.5});
  out.push_back({"P0(A0)P0(B0)", canonical(proj(a0, 0) * proj(b0, 0)), (1.0 - epsilon) / 2.0 + epsilon / 4.0});
  for (int a = 0; a < 2; ++a)
    out.push_back({"P" + std::to_string(a) + "(A1)", canonical(proj(a1, a)), 0.5});
  for (int a = 0; a < 2; ++a) {
    const double s = a == 0 ? 1.0 : -1.0;
    const RawPoly chsh = b0 * c0 + b0 * c1 + scaled(b1 * c0 + scaled(b1 * c1, -1.0), s);
    out.push_back({"P" + std::to_string(a) + "(A1)CHSH", canonical(proj(a1, a) * chsh),
                   std::numbers::sqrt2 * (1.0 - epsilon)});
  }
  return out;
}

std::size_t SdpProblem::moment_index(const Word& w) const {
  const auto it = std::lower_bound(word_order.begin(), word_order.end(), w,
                                   [this](std::size_t i, const Word& key) { return moments[i] < key; });
  if (it == word_order.end() || moments[*it] != w)
    throw ContractError("word " + w.to_string() + " is not a moment of the relaxation");
  return *it;
}

SdpProblem build_problem(double epsilon) {
  SdpProblem prob;
  prob.epsilon = epsilon;
  prob.basis = build_basis();
  const std::size_t d = prob.basis.size();

  std::map<Word, std::uint32_t> index;
  prob.entries.reserve(d * d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      Word w;
      for (std::size_t p = 0; p < kParties; ++p) {
        w.parts[p].assign(prob.basis[u].parts[p].rbegin(), prob.basis[u].parts[p].rend());
        w.parts[p].insert(w.parts[p].end(), prob.basis[v].parts[p].begin(), prob.basis[v].parts[p].end());
      }
      const auto red = reduce(w);
      auto [it, fresh] = index.try_emplace(red.word, static_cast<std::uint32_t>(prob.moments.size()));
      if (fresh) prob.moments.push_back(red.word);
      prob.entries.push_back({it->second, static_cast<std::int8_t>(red.sign)});
    }
  prob.word_order.reserve(index.size());
  for (const auto& [w, i] : index) prob.word_order.push_back(i);

  const auto objective = objective_fidelity();
  auto constraints = constraints_eq9(epsilon);
  std::string missing;
  auto check = [&](const WordPolynomial& poly) {
    for (const auto& [w, c] : poly)
      if (!index.contains(w)) missing += (missing.empty() ? "" : ", ") + w.to_string();
  };
  check(objective);
  for (const auto& c : constraints) check(c.poly);
  if (!missing.empty()) throw ContractError("moment basis is not closed; missing words: " + missing);

  prob.objective = to_form(prob, objective);
  prob.constraints.push_back({"norm", {{{0, 1.0}}}, 1.0});
  for (const auto& c : constraints) prob.constraints.push_back({c.label, to_form(prob, c.poly), c.target});
  return prob;
}

double evaluate(const SparseForm& form, const RealVector& y) {
  double s = 0.0;
  for (const auto& [i, c] : form.terms) s += c * y(static_cast<Eigen::Index>(i));
  return s;
}

Eigen::MatrixXd assemble(const SdpProblem& problem, const RealVector& y) {
  const auto d = static_cast<Eigen::Index>(problem.dim());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index u = 0; u < d; ++u)
    for (Eigen::Index v = 0; v < d; ++v) {
      const auto& e = problem.entry(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
      m(u, v) = e.sign * y(e.moment);
    }
  return m;
}

std::array<ObservablePair, kParties> ideal_observables() {
  const double r = 1.0 / std::numbers::sqrt2;
  const ObservablePair zx{pauli::z(), pauli::x()};
  return {zx, zx, ObservablePair{r * (pauli::z() + pauli::x()), r * (pauli::z() - pauli::x())}};
}

RealVector exact_moments(const SdpProblem& problem, const DensityMatrix& rho,
                         const std::array<ObservablePair, kParties>& observables) {
  if (rho.rows() != 8 || rho.cols() != 8) throw ShapeError("exact_moments: expected a three-qubit state");
  const RegisterShape shape = RegisterShape::qubits(kParties);
  std::array<ComplexMatrix, 6> letters;
  for (std::size_t p = 0; p < kParties; ++p) {
    letters[2 * p] = embed(observables[p].first, shape, p);
    letters[2 * p + 1] = embed(observables[p].second, shape, p);
  }
  RealVector y(static_cast<Eigen::Index>(problem.moments.size()));
  for (std::size_t k = 0; k < problem.moments.size(); ++k)
    y(static_cast<Eigen::Index>(k)) = expectation(rho, word_matrix(problem.moments[k], letters));
  return y;
}

}  // namespace ghzst::npa
