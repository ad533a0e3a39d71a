#include "ghzst/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace ghzst::npa {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Triplet {
  Index row;
  Index col;
  double value;
};

// Symmetric constraint matrix stored both as triplets (full, both triangles)
// and as a dense block on its row/column support.
struct SymSparse {
  std::vector<Triplet> entries;
  std::vector<Index> support;
  MatrixXd block;
};

// Dual-form data: max b^T z  s.t.  C - sum_j z_j A_j >= 0.
struct DualForm {
  MatrixXd c;
  std::vector<SymSparse> a;
  VectorXd b;
  double offset = 0.0;   // objective = offset - b^T z
  VectorXd y0;           // y = y0 + sum_j z_j n_j
  std::vector<std::vector<std::pair<Index, double>>> n;
  bool inconsistent = false;
};

DualForm eliminate(const SdpProblem& prob) {
  const Index m = static_cast<Index>(prob.moments.size());
  const Index k = static_cast<Index>(prob.constraints.size());
  MatrixXd e = MatrixXd::Zero(k, m);
  VectorXd t(k);
  for (Index r = 0; r < k; ++r) {
    for (const auto& [i, c] : prob.constraints[static_cast<std::size_t>(r)].form.terms) e(r, static_cast<Index>(i)) += c;
    t(r) = prob.constraints[static_cast<std::size_t>(r)].target;
  }

  DualForm df;
  std::vector<Index> pivot_col, pivot_row;
  std::vector<bool> is_pivot(static_cast<std::size_t>(m), false);
  for (Index r = 0; r < k; ++r) {
    Index col = -1;
    double best = 1e-12 * std::max(1.0, e.cwiseAbs().maxCoeff());
    for (Index j = 0; j < m; ++j)
      if (!is_pivot[static_cast<std::size_t>(j)] && std::abs(e(r, j)) > best) {
        best = std::abs(e(r, j));
        col = j;
      }
    if (col < 0) {
      if (std::abs(t(r)) > 1e-9) df.inconsistent = true;
      continue;
    }
    const double p = e(r, col);
    e.row(r) /= p;
    t(r) /= p;
    for (Index o = 0; o < k; ++o)
      if (o != r && e(o, col) != 0.0) {
        const double f = e(o, col);
        e.row(o) -= f * e.row(r);
        t(o) -= f * t(r);
      }
    is_pivot[static_cast<std::size_t>(col)] = true;
    pivot_col.push_back(col);
    pivot_row.push_back(r);
  }

  df.y0 = VectorXd::Zero(m);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) df.y0(pivot_col[i]) = t(pivot_row[i]);
  for (Index j = 0; j < m; ++j) {
    if (is_pivot[static_cast<std::size_t>(j)]) continue;
    std::vector<std::pair<Index, double>> col{{j, 1.0}};
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      const double v = e(pivot_row[i], j);
      if (std::abs(v) > 1e-15) col.emplace_back(pivot_col[i], -v);
    }
    df.n.push_back(std::move(col));
  }

  // Per-moment entry lists of M.
  const Index d = static_cast<Index>(prob.dim());
  std::vector<std::vector<Triplet>> pattern(static_cast<std::size_t>(m));
  for (Index u = 0; u < d; ++u)
    for (Index v = 0; v < d; ++v) {
      const auto& ent = prob.entry(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
      pattern[ent.moment].push_back({u, v, static_cast<double>(ent.sign)});
    }

  df.c = MatrixXd::Zero(d, d);
  for (Index i = 0; i < m; ++i)
    if (df.y0(i) != 0.0)
      for (const auto& tr : pattern[static_cast<std::size_t>(i)]) df.c(tr.row, tr.col) += df.y0(i) * tr.value;

  VectorXd cost = VectorXd::Zero(m);
  for (const auto& [i, c] : prob.objective.terms) cost(static_cast<Index>(i)) += c;
  df.offset = cost.dot(df.y0);
  df.b.resize(static_cast<Index>(df.n.size()));

  for (std::size_t j = 0; j < df.n.size(); ++j) {
    std::unordered_map<Index, double> acc;
    double bj = 0.0;
    for (const auto& [i, w] : df.n[j]) {
      bj -= w * cost(i);
      for (const auto& tr : pattern[static_cast<std::size_t>(i)]) acc[tr.row * d + tr.col] -= w * tr.value;
    }
    df.b(static_cast<Index>(j)) = bj;

    SymSparse s;
    std::vector<std::pair<Index, double>> sorted(acc.begin(), acc.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [key, val] : sorted)
      if (std::abs(val) > 1e-15) {
        s.entries.push_back({key / d, key % d, val});
        s.support.push_back(key / d);
      }
    std::sort(s.support.begin(), s.support.end());
    s.support.erase(std::unique(s.support.begin(), s.support.end()), s.support.end());
    std::vector<Index> pos(static_cast<std::size_t>(d), -1);
    for (std::size_t p = 0; p < s.support.size(); ++p) pos[static_cast<std::size_t>(s.support[p])] = static_cast<Index>(p);
    const Index sz = static_cast<Index>(s.support.size());
    s.block = MatrixXd::Zero(sz, sz);
    for (const auto& tr : s.entries) s.block(pos[static_cast<std::size_t>(tr.row)], pos[static_cast<std::size_t>(tr.col)]) = tr.value;
    df.a.push_back(std::move(s));
  }
  return df;
}

double inner(const SymSparse& a, const MatrixXd& x) {
  double s = 0.0;
  for (const auto& t : a.entries) s += t.value * x(t.row, t.col);
  return s;
}

VectorXd op_a(const DualForm& df, const MatrixXd& x) {
  VectorXd out(static_cast<Index>(df.a.size()));
  for (std::size_t j = 0; j < df.a.size(); ++j) out(static_cast<Index>(j)) = inner(df.a[j], x);
  return out;
}

MatrixXd op_a_adjoint(const DualForm& df, const VectorXd& z) {
  MatrixXd out = MatrixXd::Zero(df.c.rows(), df.c.cols());
  for (std::size_t j = 0; j < df.a.size(); ++j) {
    const double zj = z(static_cast<Index>(j));
    if (zj == 0.0) continue;
    for (const auto& t : df.a[j].entries) out(t.row, t.col) += zj * t.value;
  }
  return out;
}

MatrixXd schur(const DualForm& df, const MatrixXd& x, const MatrixXd& s_inv) {
  const Index m = static_cast<Index>(df.a.size());
  MatrixXd h(m, m);
  MatrixXd g;
  for (Index j = 0; j < m; ++j) {
    const auto& aj = df.a[static_cast<std::size_t>(j)];
    g.noalias() = (x(Eigen::all, aj.support) * aj.block) * s_inv(aj.support, Eigen::all);
    for (Index i = 0; i < m; ++i) h(i, j) = inner(df.a[static_cast<std::size_t>(i)], g);
  }
  return 0.5 * (h + h.transpose());
}

// Largest step in (0, 1] keeping m + alpha d positive definite, backed off by gamma.
double step_length(const MatrixXd& m, const MatrixXd& d, double gamma) {
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd l_inv_d = llt.matrixL().solve(d);
  const MatrixXd w = llt.matrixL().solve(l_inv_d.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (w + w.transpose()), Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()(0);
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -gamma / lmin);
}

constexpr int kStallIterations = 8;

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

VectorXd solve_schur(const MatrixXd& h, const VectorXd& rhs) {
  Eigen::LLT<MatrixXd> llt(h);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  return h.ldlt().solve(rhs);
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::near_optimal: return "near_optimal";
    case SolveStatus::not_converged: return "not_converged";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  if (options.max_iterations <= 0 || !(options.feasibility_tolerance > 0) || !(options.gap_tolerance > 0) ||
      !(options.acceptable_tolerance > 0))
    throw ContractError("solve: iteration cap and tolerances must be positive");
  const DualForm df = eliminate(problem);
  SdpSolution sol;
  if (df.inconsistent) {
    sol.status = SolveStatus::infeasible;
    sol.moments = df.y0;
    return sol;
  }

  const Index n = df.c.rows();
  const Index m = static_cast<Index>(df.a.size());
  const double c_norm = df.c.norm();
  const double b_norm = df.b.norm();
  double max_a = 0.0, x_scale = 10.0;
  for (Index j = 0; j < m; ++j) {
    const double an = df.a[static_cast<std::size_t>(j)].block.norm();
    max_a = std::max(max_a, an);
    x_scale = std::max(x_scale, (1.0 + std::abs(df.b(j))) / (1.0 + an));
  }
  x_scale = std::max(x_scale, std::sqrt(static_cast<double>(n)));
  const double s_scale = std::max({10.0, std::sqrt(static_cast<double>(n)), c_norm, max_a});

  MatrixXd x = x_scale * MatrixXd::Identity(n, n);
  MatrixXd s = s_scale * MatrixXd::Identity(n, n);
  VectorXd z = VectorXd::Zero(m);
  const double nd = static_cast<double>(n);
  double best_merit = std::numeric_limits<double>::infinity();
  int last_progress = 0;

  for (int it = 0; it < options.max_iterations; ++it) {
    const VectorXd rp = df.b - op_a(df, x);
    const MatrixXd rd = df.c - s - op_a_adjoint(df, z);
    const double mu = (x.cwiseProduct(s)).sum() / nd;
    const double pobj = (df.c.cwiseProduct(x)).sum();
    const double dobj = df.b.dot(z);
    const double relp = rp.norm() / (1.0 + b_norm);
    const double reld = rd.norm() / (1.0 + c_norm);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    sol.iterations = it;
    sol.gap_estimate = std::abs(pobj - dobj);
    if (relp < options.feasibility_tolerance && reld < options.feasibility_tolerance && gap < options.gap_tolerance) {
      sol.status = SolveStatus::optimal;
      break;
    }
    if (!std::isfinite(mu) || z.norm() > 1e12 || x.norm() > 1e14) {
      sol.status = SolveStatus::infeasible;
      break;
    }
    const double merit = std::max({relp, reld, gap});
    if (merit < 0.9 * best_merit) {
      best_merit = merit;
      last_progress = it;
    } else if (it - last_progress >= kStallIterations) {
      if (merit < options.acceptable_tolerance) sol.status = SolveStatus::near_optimal;
      break;
    }

    Eigen::LLT<MatrixXd> s_llt(s);
    if (s_llt.info() != Eigen::Success) {
      if (std::max({relp, reld, gap}) < options.acceptable_tolerance) sol.status = SolveStatus::near_optimal;
      break;
    }
    const MatrixXd s_inv = s_llt.solve(MatrixXd::Identity(n, n));
    const MatrixXd h = schur(df, x, s_inv);
    const MatrixXd x_rd_sinv = x * rd * s_inv;

    auto direction = [&](double sigma, const MatrixXd* corr, VectorXd& dz, MatrixXd& ds, MatrixXd& dx) {
      MatrixXd base = sigma * mu * s_inv - x - x_rd_sinv;
      if (corr) base -= *corr;
      dz = solve_schur(h, rp - op_a(df, base));
      ds = rd - op_a_adjoint(df, dz);
      MatrixXd tail = sigma * mu * s_inv - x - x * ds * s_inv;
      if (corr) tail -= *corr;
      dx = sym(tail);
    };

    VectorXd dz;
    MatrixXd ds, dx;
    direction(0.0, nullptr, dz, ds, dx);
    const double ap_aff = step_length(x, dx, 1.0);
    const double ad_aff = step_length(s, ds, 1.0);
    const double mu_aff = ((x + ap_aff * dx).cwiseProduct(s + ad_aff * ds)).sum() / nd;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    const MatrixXd corr = dx * ds * s_inv;
    direction(sigma, &corr, dz, ds, dx);
    const double gamma = 0.95;
    const double ap = step_length(x, dx, gamma);
    const double ad = step_length(s, ds, gamma);
    x = sym(x + ap * dx);
    s = sym(s + ad * ds);
    z += ad * dz;
    sol.iterations = it + 1;
  }

  VectorXd y = df.y0;
  for (Index j = 0; j < m; ++j)
    for (const auto& [i, w] : df.n[static_cast<std::size_t>(j)]) y(i) += w * z(j);
  sol.moments = y;
  sol.objective_value = evaluate(problem.objective, y);
  for (const auto& c : problem.constraints)
    sol.primal_residual = std::max(sol.primal_residual, std::abs(evaluate(c.form, y) - c.target));
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(assemble(problem, y), Eigen::EigenvaluesOnly);
  sol.psd_residual = eig.eigenvalues()(0);
  return sol;
}

}  // namespace ghzst::npa
