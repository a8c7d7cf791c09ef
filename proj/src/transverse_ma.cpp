#include "lck/transverse_ma.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include <Eigen/SparseLU>

namespace lck {

namespace {

constexpr double kD2[7] = {1.0 / 90.0, -3.0 / 20.0, 1.5, -49.0 / 18.0, 1.5, -3.0 / 20.0, 1.0 / 90.0};
constexpr int kReach = GridSpec::stencil_reach;
constexpr int kInterpDegree = 5;

// Window base index and 1D Lagrange weights for a query coordinate.
void axis_weights(const GridSpec& g, double x, int degree, int* lo, double* wts) {
  const int npts = degree + 1;
  const double h = g.h();
  int base = static_cast<int>(std::floor((x + g.radius) / h)) - degree / 2;
  base = std::max(0, std::min(base, g.n - npts));
  *lo = base;
  for (int k = 0; k < npts; ++k) {
    double w = 1.0;
    for (int m = 0; m < npts; ++m) {
      if (m == k) continue;
      w *= (x - g.coord(base + m)) / (h * (k - m));
    }
    wts[k] = w;
  }
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void CalabiProblem::validate() const {
  if (!(f.grid() == eta0.grid())) throw std::invalid_argument("problem grids disagree");
  if (!eta0.positive()) throw std::invalid_argument("reference form must be positive");
  if (!f.all_finite()) throw std::invalid_argument("log-density must be finite");
}

CompositeGrid::CompositeGrid(const GridSpec& g) : g_(g) {
  g_.validate();
  const int n = g.n;
  const double h = g.h();
  r_pde_ = std::min(1.3, g.radius - 0.15);
  if (r_pde_ <= 1.05) throw std::invalid_argument("chart radius leaves no room for the PDE region");
  r_keep_ = r_pde_ + 3.5 * h;

  index_[0] = Eigen::ArrayXXi::Constant(n, n, -1);
  index_[1] = index_[0];
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double r = std::hypot(g.coord(i), g.coord(j));
        if (r > r_keep_) continue;
        index_[c](i, j) = static_cast<int>(dofs_.size());
        dofs_.push_back({c, i, j});
        bool pde = r <= r_pde_ && i >= kReach && j >= kReach && i < n - kReach && j < n - kReach;
        is_pde_.push_back(pde ? 1 : 0);
        if (pde) ++pde_count_;
      }

  const int nd = size();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(nd * 16);
  const double inv_h2 = 1.0 / (h * h);
  for (int d = 0; d < nd; ++d) {
    const Dof& p = dofs_[d];
    if (is_pde_[d]) {
      for (int k = -kReach; k <= kReach; ++k) {
        int cx = index_[p.chart](p.i + k, p.j);
        int cy = index_[p.chart](p.i, p.j + k);
        if (cx < 0 || cy < 0) throw std::runtime_error("operator assembly failed: missing stencil point");
        trip.emplace_back(d, cx, kD2[k + kReach] * inv_h2);
        trip.emplace_back(d, cy, kD2[k + kReach] * inv_h2);
      }
    } else {
      trip.emplace_back(d, d, 1.0);
      std::complex<double> wi = chart_invert({g.coord(p.i), g.coord(p.j)});
      int lx, ly;
      double wx[kInterpDegree + 1], wy[kInterpDegree + 1];
      axis_weights(g_, wi.real(), kInterpDegree, &lx, wx);
      axis_weights(g_, wi.imag(), kInterpDegree, &ly, wy);
      for (int a = 0; a <= kInterpDegree; ++a)
        for (int b = 0; b <= kInterpDegree; ++b) {
          int col = index_[1 - p.chart](lx + a, ly + b);
          if (col < 0) throw std::runtime_error("operator assembly failed: collar image outside dofs");
          trip.emplace_back(d, col, -wx[a] * wy[b]);
        }
    }
  }
  lap_.resize(nd, nd);
  lap_.setFromTriplets(trip.begin(), trip.end());

  // Left-null vector of the composite operator via one bordered solve:
  // [[L^T, 1], [1^T, 0]] [y; b] = [0; 1].  The constants are not in the
  // range of L^T, so the bordered matrix is nonsingular and y spans the
  // cokernel of L.
  std::vector<Eigen::Triplet<double>> at;
  at.reserve(trip.size() + 2 * nd);
  for (const auto& t : trip) at.emplace_back(t.col(), t.row(), t.value());
  for (int d = 0; d < nd; ++d) {
    at.emplace_back(d, nd, 1.0);
    at.emplace_back(nd, d, 1.0);
  }
  Eigen::SparseMatrix<double> aug(nd + 1, nd + 1);
  aug.setFromTriplets(at.begin(), at.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(aug);
  if (lu.info() != Eigen::Success) throw std::runtime_error("operator assembly failed: factorization");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nd + 1);
  rhs[nd] = 1.0;
  Eigen::VectorXd sol = lu.solve(rhs);
  ell_ = sol.head(nd).normalized();
}

Eigen::VectorXd CompositeGrid::restrict_field(const ScalarField& u) const {
  if (!(u.grid() == g_)) throw std::invalid_argument("grid mismatch");
  Eigen::VectorXd v(size());
  for (int d = 0; d < size(); ++d) v[d] = u.chart(dofs_[d].chart)(dofs_[d].i, dofs_[d].j);
  return v;
}

ScalarField CompositeGrid::prolong(const Eigen::VectorXd& v) const {
  ScalarField out(g_);
  for (int d = 0; d < size(); ++d) out.chart(dofs_[d].chart)(dofs_[d].i, dofs_[d].j) = v[d];
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g_.n; ++i)
      for (int j = 0; j < g_.n; ++j) {
        if (index_[c](i, j) >= 0) continue;
        std::complex<double> wi = chart_invert({g_.coord(i), g_.coord(j)});
        out.chart(c)(i, j) =
            lagrange_interp<double>(g_, out.chart(1 - c), wi.real(), wi.imag(), 7);
      }
  return out;
}

Eigen::VectorXd CompositeGrid::bordered_solve(const Eigen::SparseMatrix<double>& a,
                                              const Eigen::VectorXd& slack,
                                              const Eigen::VectorXd& rhs, double* mu) const {
  const int nd = static_cast<int>(a.rows());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(a.nonZeros() + 2 * nd);
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int d = 0; d < nd; ++d) {
    trip.emplace_back(d, nd, slack[d]);
    trip.emplace_back(nd, d, 1.0);
  }
  Eigen::SparseMatrix<double> aug(nd + 1, nd + 1);
  aug.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(aug);
  if (lu.info() != Eigen::Success) throw std::runtime_error("linear solve failed");
  Eigen::VectorXd r = Eigen::VectorXd::Zero(nd + 1);
  r.head(nd) = rhs;
  Eigen::VectorXd sol = lu.solve(r);
  if (mu) *mu = sol[nd];
  return sol.head(nd);
}

double normalization_constant(const ScalarField& f, const Form11Field& eta0) {
  if (!eta0.positive()) throw std::invalid_argument("reference form must be positive");
  double num = integrate(eta0);
  double den = integrate_scaled(eta0, f, [](double v) { return std::exp(v); });
  if (!(den > 0.0)) throw std::domain_error("degenerate density integral");
  return num / den;
}

ResidualField calabi_residual(const ScalarField& u, const CalabiProblem& prob, double lambda,
                              double delta_pos) {
  prob.validate();
  const GridSpec& g = u.grid();
  if (!(g == prob.f.grid())) throw std::invalid_argument("grid mismatch");
  Form11Field ddu = ddc(u);

  ResidualField res;
  res.field = Form11Field(g);
  for (int c = 0; c < 2; ++c) {
    res.field.chart(c) = prob.eta0.chart(c) + ddu.chart(c) -
                         lambda * prob.f.chart(c).exp() * prob.eta0.chart(c);
    if (((prob.eta0.chart(c) + ddu.chart(c)) <= delta_pos).any()) res.admissible = false;
  }
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (std::hypot(g.coord(i), g.coord(j)) <= 1.1)
          res.sup = std::max(res.sup, std::abs(res.field.chart(c)(i, j)));
  return res;
}

namespace {

// Shared damped-Newton driver over composite dofs.
struct NewtonProblem {
  // residual(u) -> F; returns false if u is outside the admissible set.
  std::function<bool(const Eigen::VectorXd&, Eigen::VectorXd*)> residual;
  // step(u, F) -> delta (Newton direction for F(u + delta) = 0).
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> step;
  // Convergence measure (sup norm when unset).  Lets a solver quotient out a
  // residual component the iteration cannot remove by construction.
  std::function<double(const Eigen::VectorXd&)> norm;
};

struct NewtonOutcome {
  Eigen::VectorXd u;
  int iterations = 0;
  double residual_sup = 0.0;
  bool converged = false;
};

NewtonOutcome damped_newton(const NewtonProblem& np, Eigen::VectorXd u, const SolverConfig& cfg) {
  NewtonOutcome out;
  auto measure = [&](const Eigen::VectorXd& F) {
    return np.norm ? np.norm(F) : F.lpNorm<Eigen::Infinity>();
  };
  Eigen::VectorXd F;
  if (!np.residual(u, &F)) throw std::domain_error("initial guess violates positivity floor");
  double sup = measure(F);
  for (int it = 0; it < cfg.max_iter && sup > cfg.tol_newton; ++it) {
    Eigen::VectorXd delta = np.step(u, F);
    double t = 1.0;
    bool accepted = false;
    for (int halve = 0; halve <= cfg.max_halvings; ++halve) {
      Eigen::VectorXd trial = u + t * delta;
      Eigen::VectorXd Ft;
      if (np.residual(trial, &Ft)) {
        double sup_t = measure(Ft);
        if (sup_t < sup) {
          u = std::move(trial);
          F = std::move(Ft);
          sup = sup_t;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    out.iterations = it + 1;
    if (!accepted) break;  // stagnation: the residual floor has been reached
  }
  out.u = std::move(u);
  out.residual_sup = sup;
  out.converged = sup <= cfg.tol_newton;
  return out;
}

}  // namespace

std::pair<ScalarField, SolveReport> solve_calabi(const CalabiProblem& prob,
                                                 const SolverConfig& cfg,
                                                 const ScalarField& init) {
  auto t0 = std::chrono::steady_clock::now();
  prob.validate();
  const GridSpec& g = prob.f.grid();
  CompositeGrid cg(g);
  const int nd = cg.size();

  double lambda = normalization_constant(prob.f, prob.eta0);
  Eigen::VectorXd c0(nd), target(nd);
  for (int d = 0; d < nd; ++d) {
    const auto& p = cg.dofs()[d];
    c0[d] = prob.eta0.chart(p.chart)(p.i, p.j);
    target[d] = (lambda * std::exp(prob.f.chart(p.chart)(p.i, p.j)) - 1.0) * c0[d];
  }

  NewtonProblem np;
  np.residual = [&](const Eigen::VectorXd& u, Eigen::VectorXd* F) {
    Eigen::VectorXd lu = cg.op() * u;
    *F = lu;
    for (int d = 0; d < nd; ++d)
      if (cg.is_pde(d)) {
        if (c0[d] + lu[d] < cfg.delta_pos) return false;
        (*F)[d] = lu[d] - target[d];
      }
    return true;
  };
  np.step = [&](const Eigen::VectorXd&, const Eigen::VectorXd& F) {
    return cg.bordered_solve(cg.op(), cg.left_null(), -F);
  };
  // The component of F along the left-null vector is the distance of the
  // discrete problem from solvability (it shrinks with the stencil order, not
  // with Newton); convergence is judged on the solvable part.
  np.norm = [&](const Eigen::VectorXd& F) {
    return (F - cg.left_null() * cg.left_null().dot(F)).lpNorm<Eigen::Infinity>();
  };

  NewtonOutcome res = damped_newton(np, cg.restrict_field(init), cfg);

  ScalarField u = cg.prolong(res.u);
  double mass = integrate(prob.eta0);
  u += -integrate_scaled(prob.eta0, u) / mass;

  SolveReport rep;
  rep.iterations = res.iterations;
  rep.lambda = lambda;
  ResidualField rf = calabi_residual(u, prob, lambda, cfg.delta_pos);
  // Convergence is judged on the discrete system; the reported residual also
  // folds in the glued-field defect so it reflects the delivered solution.
  rep.residual_sup = std::max(res.residual_sup, rf.sup);
  rep.converged = res.converged && rf.admissible;
  rep.gauge = integrate_scaled(prob.eta0, u) / mass;
  rep.wall_ms = wall_since(t0);
  return {std::move(u), rep};
}

Eigen::VectorXd aubin_residual(const CompositeGrid& cg, const Eigen::VectorXd& c0, double eps,
                               const Eigen::VectorXd& psi, double delta_pos) {
  const int nd = cg.size();
  Eigen::VectorXd lp = cg.op() * psi;
  double s1 = 0.0, s2 = 0.0;
  for (int d = 0; d < nd; ++d)
    if (cg.is_pde(d)) {
      double arg = c0[d] - lp[d];
      if (arg <= delta_pos) throw std::domain_error("positivity floor violated");
      s1 += std::log(arg / c0[d]);
      s2 += psi[d];
    }
  double cst = (s1 - eps * s2) / cg.pde_count();
  Eigen::VectorXd F = lp;
  for (int d = 0; d < nd; ++d)
    if (cg.is_pde(d)) F[d] = std::log((c0[d] - lp[d]) / c0[d]) - eps * psi[d] - cst;
  return F;
}

Eigen::VectorXd aubin_jacobian_apply(const CompositeGrid& cg, const Eigen::VectorXd& c0,
                                     double eps, const Eigen::VectorXd& psi,
                                     const Eigen::VectorXd& delta) {
  const int nd = cg.size();
  Eigen::VectorXd lp = cg.op() * psi;
  Eigen::VectorXd ld = cg.op() * delta;
  Eigen::VectorXd out = ld;
  double mean = 0.0;
  for (int d = 0; d < nd; ++d)
    if (cg.is_pde(d)) {
      out[d] = -ld[d] / (c0[d] - lp[d]) - eps * delta[d];
      mean += out[d];
    }
  mean /= cg.pde_count();
  for (int d = 0; d < nd; ++d)
    if (cg.is_pde(d)) out[d] -= mean;
  return out;
}

std::pair<ScalarField, SolveReport> solve_aubin(double eps, const CalabiProblem& prob,
                                                const SolverConfig& cfg, const ScalarField& init) {
  auto t0 = std::chrono::steady_clock::now();
  prob.validate();
  if (eps < -1.0 || eps > 1.0) throw std::invalid_argument("epsilon outside [-1, 1]");
  const GridSpec& g = prob.f.grid();
  CompositeGrid cg(g);
  const int nd = cg.size();
  const int npde = cg.pde_count();

  Eigen::VectorXd c0(nd);
  for (int d = 0; d < nd; ++d) {
    const auto& p = cg.dofs()[d];
    c0[d] = prob.eta0.chart(p.chart)(p.i, p.j);
  }

  std::vector<double> stages;
  if (eps > 0.0)
    for (double e = 0.25; e < eps + 1e-12; e += 0.25) stages.push_back(std::min(e, eps));
  else
    stages.push_back(eps);

  SolveReport rep;
  Eigen::VectorXd psi = cg.restrict_field(init);
  double cur_eps = 0.0;
  double final_const = 0.0;

  auto consistency_const = [&](const Eigen::VectorXd& p, double e) {
    Eigen::VectorXd lp = cg.op() * p;
    double s1 = 0.0, s2 = 0.0;
    for (int d = 0; d < nd; ++d)
      if (cg.is_pde(d)) {
        s1 += std::log((c0[d] - lp[d]) / c0[d]);
        s2 += p[d];
      }
    return (s1 - e * s2) / npde;
  };

  auto run_stage = [&](double e) {
    cur_eps = e;
    NewtonProblem np;
    np.residual = [&, e](const Eigen::VectorXd& p, Eigen::VectorXd* F) {
      try {
        *F = aubin_residual(cg, c0, e, p, cfg.delta_pos);
      } catch (const std::domain_error&) {
        return false;
      }
      return true;
    };
    np.step = [&, e](const Eigen::VectorXd& p, const Eigen::VectorXd& F) {
      Eigen::VectorXd lp = cg.op() * p;
      // Sparse part of the Jacobian: scaled stencil rows plus the eps term.
      std::vector<Eigen::Triplet<double>> trip;
      trip.reserve(cg.op().nonZeros() + npde);
      Eigen::VectorXd slack(nd);
      for (int k = 0; k < cg.op().outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(cg.op(), k); it; ++it) {
          double scale = cg.is_pde(it.row()) ? -1.0 / (c0[it.row()] - lp[it.row()]) : 1.0;
          trip.emplace_back(it.row(), it.col(), scale * it.value());
        }
      for (int d = 0; d < nd; ++d) {
        double scale = cg.is_pde(d) ? -1.0 / (c0[d] - lp[d]) : 1.0;
        slack[d] = cg.left_null()[d] / scale;
        if (cg.is_pde(d)) trip.emplace_back(d, d, -e);
      }
      Eigen::SparseMatrix<double> as(nd, nd);
      as.setFromTriplets(trip.begin(), trip.end());

      // The recomputed constant contributes a rank-one term
      // J = A - 1_pde v^T with v = A^T 1_pde / n_pde; Sherman-Morrison.
      Eigen::VectorXd ind = Eigen::VectorXd::Zero(nd);
      for (int d = 0; d < nd; ++d)
        if (cg.is_pde(d)) ind[d] = 1.0;
      Eigen::VectorXd v = (as.transpose() * ind) / npde;

      Eigen::VectorXd x1 = cg.bordered_solve(as, slack, -F);
      Eigen::VectorXd x2 = cg.bordered_solve(as, slack, ind);
      double denom = 1.0 - v.dot(x2);
      return Eigen::VectorXd(x1 + x2 * (v.dot(x1) / denom));
    };

    NewtonOutcome res = damped_newton(np, psi, cfg);
    psi = res.u;
    rep.iterations += res.iterations;
    rep.residual_sup = res.residual_sup;
    rep.converged = res.converged;
    rep.continuation.push_back(e);
    return res.converged;
  };

  for (double e : stages)
    if (!run_stage(e)) break;
  final_const = consistency_const(psi, cur_eps);

  ScalarField out = cg.prolong(psi);
  double mass = integrate(prob.eta0);
  out += -integrate_scaled(prob.eta0, out) / mass;
  rep.lambda = final_const;
  rep.gauge = integrate_scaled(prob.eta0, out) / mass;
  rep.converged = rep.converged && std::abs(cur_eps - eps) < 1e-12;
  rep.wall_ms = wall_since(t0);
  return {std::move(out), rep};
}

ScalarField d_operator(const ScalarField& f, const Form11Field& alpha) {
  if (!(f.grid() == alpha.grid())) throw std::invalid_argument("grid mismatch");
  if (!alpha.positive()) throw std::invalid_argument("reference form must be positive");
  Form11Field num = ddc(f);
  ScalarField out(f.grid());
  for (int c = 0; c < 2; ++c) out.chart(c) = num.chart(c) / alpha.chart(c);
  return out;
}

double d_operator_point(const HermitianValue& ddcf, const HermitianValue& alpha, int m) {
  if (ddcf.m != m || alpha.m != m) throw std::invalid_argument("dimension mismatch");
  alpha.check_hermitian();
  ddcf.check_hermitian();
  if (!alpha.positive_definite()) throw std::domain_error("reference form must be positive");
  Eigen::MatrixXcd a = alpha.block();
  return (a.inverse() * ddcf.block()).trace().real() / m;
}

HermitianValue rho_mix(const HermitianValue& eta1, const HermitianValue& eta2, int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("rho mix supports n in {2, 3}");
  if (!eta1.positive_definite() || !eta2.positive_definite())
    throw std::domain_error("rho mix requires positive inputs");
  if (n == 2) {
    // Empty sum k + l = 0: the scalar 1.
    HermitianValue out;
    out.m = 1;
    out.mat(0, 0) = 1.0;
    return out;
  }
  if (eta1.m != 3 || eta2.m != 3) throw std::invalid_argument("dimension mismatch");
  HermitianValue out;
  out.m = 3;
  out.mat = eta1.mat + eta2.mat;
  return out;
}

UniquenessResult uniqueness_check(const ScalarField& u1, const ScalarField& u2,
                                  const CalabiProblem& prob, double residual_tol,
                                  double unique_tol) {
  prob.validate();
  double lambda = normalization_constant(prob.f, prob.eta0);
  UniquenessResult res;
  res.residual1 = calabi_residual(u1, prob, lambda).sup;
  res.residual2 = calabi_residual(u2, prob, lambda).sup;
  if (res.residual1 > residual_tol || res.residual2 > residual_tol) {
    res.verdict = UniquenessVerdict::Inapplicable;
    return res;
  }
  ScalarField psi = u1;
  psi -= u2;
  ScalarField dpsi = d_operator(psi, prob.eta0);
  double mean = integrate_scaled(prob.eta0, psi) / integrate(prob.eta0);
  const GridSpec& g = psi.grid();
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        if (std::hypot(g.coord(i), g.coord(j)) > 1.1) continue;
        res.psi_sup = std::max(res.psi_sup, std::abs(psi.chart(c)(i, j) - mean));
        res.d_psi_sup = std::max(res.d_psi_sup, std::abs(dpsi.chart(c)(i, j)));
      }
  res.verdict = (res.psi_sup <= unique_tol && res.d_psi_sup <= unique_tol)
                    ? UniquenessVerdict::Unique
                    : UniquenessVerdict::Distinct;
  return res;
}

KernelSummary kernel_check(const Form11Field& alpha) {
  if (!alpha.positive()) throw std::invalid_argument("reference form must be positive");
  CompositeGrid cg(alpha.grid());
  const int nd = cg.size();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(nd, nd);
  for (int k = 0; k < cg.op().outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(cg.op(), k); it; ++it) {
      const auto& p = cg.dofs()[it.row()];
      double scale = cg.is_pde(it.row()) ? 1.0 / alpha.chart(p.chart)(p.i, p.j) : 1.0;
      D(it.row(), it.col()) += scale * it.value();
    }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  KernelSummary out;
  out.dofs = nd;
  out.smallest = sv[nd - 1];
  out.second_smallest = sv[nd - 2];
  Eigen::VectorXd kernel = svd.matrixV().col(nd - 1);
  out.constant_cosine = std::abs(kernel.sum()) / std::sqrt(static_cast<double>(nd));
  return out;
}

ScalarField random_bandlimited(const GridSpec& g, std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const char* basis[] = {"h1", "re_w1", "im_w1", "re_w2", "im_w2"};
  ExprPtr e = expr_const(0.0);
  for (const char* b : basis)
    e = expr_add(e, expr_mul(expr_const(amplitude * unif(rng) / 5.0), parse_expr(b)));
  return ScalarField::from_expr(g, e);
}

}  // namespace lck
