#include "lck/hopf.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lck {

namespace {

// Complex-valued jets as (re, im) pairs; only the few ops the Hessian
// determinants need.
struct CJet {
  Jet re, im;

  CJet operator+(const CJet& o) const { return {re + o.re, im + o.im}; }
  CJet operator-(const CJet& o) const { return {re - o.re, im - o.im}; }
  CJet operator*(const CJet& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

// Jets of phi and its derivative ladder at a point.
struct AmbientJets {
  int d = 0;  // 2n real coordinates
  Jet phi;
  std::vector<Jet> dphi;             // order - 1
  std::vector<std::vector<Jet>> S;   // real Hessian entries, order - 2
};

AmbientJets ambient_jets(const AutomorphicPotential& p, const Eigen::VectorXd& z, int order) {
  AmbientJets a;
  a.d = 2 * p.n;
  a.phi = potential_jet(p, z, order);
  a.dphi.reserve(a.d);
  for (int j = 0; j < a.d; ++j) a.dphi.push_back(a.phi.derivative(j));
  a.S.resize(a.d);
  for (int j = 0; j < a.d; ++j) {
    a.S[j].reserve(a.d);
    for (int k = 0; k < a.d; ++k) a.S[j].push_back(a.dphi[j].derivative(k));
  }
  return a;
}

Eigen::MatrixXd hessian_values(const AmbientJets& a) {
  Eigen::MatrixXd S(a.d, a.d);
  for (int j = 0; j < a.d; ++j)
    for (int k = 0; k < a.d; ++k) S(j, k) = a.S[j][k].value();
  return S;
}

// Matrix of dd^c f from the real Hessian of f:  -(J S + S J).
Eigen::MatrixXd ddc_matrix(const Eigen::MatrixXd& S, const Eigen::MatrixXd& J) {
  return -(J * S + S * J);
}

// Complex Hessian d^2 phi / dz_a dzbar_b from the real one.
Eigen::MatrixXcd complex_hessian(const Eigen::MatrixXd& S, int n) {
  Eigen::MatrixXcd H(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double re = 0.25 * (S(2 * a, 2 * b) + S(2 * a + 1, 2 * b + 1));
      double im = 0.25 * (S(2 * a, 2 * b + 1) - S(2 * a + 1, 2 * b));
      H(a, b) = {re, im};
    }
  return H;
}

// The same complex Hessian with jet entries (for derivatives of det).
std::vector<std::vector<CJet>> complex_hessian_jets(const AmbientJets& a, int n) {
  std::vector<std::vector<CJet>> H(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Jet re = (a.S[2 * p][2 * q] + a.S[2 * p + 1][2 * q + 1]) * 0.25;
      Jet im = (a.S[2 * p][2 * q + 1] - a.S[2 * p + 1][2 * q]) * 0.25;
      H[p].push_back({re, im});
    }
  return H;
}

CJet cdet(const std::vector<std::vector<CJet>>& H) {
  const int n = static_cast<int>(H.size());
  if (n == 2) return H[0][0] * H[1][1] - H[0][1] * H[1][0];
  CJet acc = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]);
  acc = acc - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]);
  acc = acc + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
  return acc;
}

// Levi-Civita Christoffels and the data needed for the theta checks.
struct ConnectionData {
  double phi;
  Eigen::VectorXd theta;                   // values
  Eigen::MatrixXd dtheta;                  // dtheta(j, k) = d_j theta_k
  Eigen::MatrixXd g;                       // metric values
  Eigen::MatrixXd g_inv;
  std::vector<Eigen::MatrixXd> dg;         // dg[l](j, k) = d_l g_jk
  std::vector<Eigen::MatrixXd> gamma;      // gamma[m](j, k)
};

ConnectionData connection_data(const AutomorphicPotential& p, const Eigen::VectorXd& z) {
  AmbientJets a = ambient_jets(p, z, 3);
  const int d = a.d;
  Eigen::MatrixXd J = standard_complex_structure(p.n);

  ConnectionData c;
  c.phi = a.phi.value();
  Jet phi1 = a.phi.truncated(1);

  std::vector<Jet> theta_jets;
  theta_jets.reserve(d);
  Jet phi2 = a.phi.truncated(2);
  for (int j = 0; j < d; ++j) theta_jets.push_back(a.dphi[j].truncated(2) / phi2);
  c.theta.resize(d);
  c.dtheta.resize(d, d);
  for (int j = 0; j < d; ++j) {
    c.theta[j] = theta_jets[j].value();
    for (int k = 0; k < d; ++k) c.dtheta(j, k) = theta_jets[k].deriv({j});
  }

  // g = (Omega J) / phi with Omega = -(J S + S J), as degree-1 jets.
  std::vector<std::vector<Jet>> g_jets(d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      Jet acc = Jet::constant(phi1.ctx(), 0.0);
      for (int l = 0; l < d; ++l) {
        // (Omega J)_{jk} = sum_l Omega_{jl} J_{lk}
        Jet omega_jl = Jet::constant(phi1.ctx(), 0.0);
        for (int m2 = 0; m2 < d; ++m2)
          omega_jl += -(J(j, m2) * a.S[m2][l].truncated(1) + a.S[j][m2].truncated(1) * J(m2, l));
        acc += omega_jl * J(l, k);
      }
      g_jets[j].push_back(acc / phi1);
    }
  }
  c.g.resize(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) c.g(j, k) = g_jets[j][k].value();
  c.g_inv = c.g.inverse();
  c.dg.assign(d, Eigen::MatrixXd(d, d));
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) c.dg[l](j, k) = g_jets[j][k].deriv({l});

  c.gamma.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int m = 0; m < d; ++m)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double acc = 0.0;
        for (int l = 0; l < d; ++l)
          acc += c.g_inv(m, l) * (c.dg[j](l, k) + c.dg[k](l, j) - c.dg[l](j, k));
        c.gamma[m](j, k) = 0.5 * acc;
      }
  return c;
}

}  // namespace

void AutomorphicPotential::validate() const {
  if (n != 2 && n != 3) throw std::invalid_argument("complex dimension must be 2 or 3");
  if (!(q > 1.0)) throw std::invalid_argument("deck factor must exceed 1");
  if (n == 3 && (u || u_grid))
    throw std::invalid_argument("nonzero transverse functions require n = 2 (single-chart leaf coordinate)");
  if (u && u_grid) throw std::invalid_argument("both analytic and grid mode given");
}

void AmbientSample::validate(const AutomorphicPotential& p) const {
  if (z.size() != 2 * p.n) throw std::invalid_argument("sample dimension mismatch");
  double r = z.norm();
  if (r < 1.0 / p.q - 1e-12 || r > p.q + 1e-12)
    throw std::invalid_argument("sample outside the fundamental annulus");
  if (!(h_amb > 0.0) || h_amb >= r / 10.0)
    throw std::invalid_argument("ambient step too large for sample radius");
}

Eigen::MatrixXd standard_complex_structure(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    J(2 * a + 1, 2 * a) = 1.0;   // J dx = dy direction
    J(2 * a, 2 * a + 1) = -1.0;
  }
  return J;
}

Jet potential_jet(const AutomorphicPotential& p, const Eigen::VectorXd& z, int order) {
  p.validate();
  const int d = 2 * p.n;
  auto ctx = JetContext::get(d, order);
  std::vector<Jet> x;
  x.reserve(d);
  for (int j = 0; j < d; ++j) x.push_back(Jet::variable(ctx, j, z[j]));
  Jet r2 = Jet::constant(ctx, 0.0);
  for (int j = 0; j < d; ++j) r2 += x[j] * x[j];

  if (p.shifted_norm_control) return r2 + 1.0;
  if (!p.u && !p.u_grid) return r2;

  // Leaf coordinate w = z2 / z1.
  Jet r1sq = x[0] * x[0] + x[1] * x[1];
  Jet wx = (x[0] * x[2] + x[1] * x[3]) / r1sq;
  Jet wy = (x[0] * x[3] - x[1] * x[2]) / r1sq;

  Jet u_val;
  if (p.u) {
    u_val = expr_eval<Jet>(*p.u, wx, wy);
  } else {
    if (order > 2)
      throw std::invalid_argument("analytic mode required for derivatives above 2nd order");
    Jet wabs2 = wx * wx + wy * wy;
    if (wabs2.value() <= 1.0) {
      u_val = lagrange_interp<Jet>(p.u_grid->grid(), p.u_grid->chart(0), wx, wy, 7);
    } else {
      Jet ix = wx / wabs2, iy = -1.0 * wy / wabs2;
      u_val = lagrange_interp<Jet>(p.u_grid->grid(), p.u_grid->chart(1), ix, iy, 7);
    }
  }
  return r2 * exp(u_val);
}

double potential_value(const AutomorphicPotential& p, const Eigen::VectorXd& z) {
  double r2 = z.squaredNorm();
  if (p.shifted_norm_control) return r2 + 1.0;
  if (!p.u && !p.u_grid) return r2;
  double r1sq = z[0] * z[0] + z[1] * z[1];
  double wx = (z[0] * z[2] + z[1] * z[3]) / r1sq;
  double wy = (z[0] * z[3] - z[1] * z[2]) / r1sq;
  double u;
  if (p.u) {
    u = expr_eval(*p.u, wx, wy);
  } else {
    double w2 = wx * wx + wy * wy;
    u = w2 <= 1.0 ? p.u_grid->interp(0, wx, wy) : p.u_grid->interp(1, wx / w2, -wy / w2);
  }
  return r2 * std::exp(u);
}

StructureTensors tensors_at(const AutomorphicPotential& p, const AmbientSample& s) {
  s.validate(p);
  const int d = 2 * p.n;
  AmbientJets a = ambient_jets(p, s.z, 2);

  StructureTensors t;
  t.phi = a.phi.value();
  t.J = standard_complex_structure(p.n);
  Eigen::MatrixXd S = hessian_values(a);
  t.omega_tilde = ddc_matrix(S, t.J);
  t.omega = t.omega_tilde / t.phi;
  t.metric = t.omega * t.J;
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t.metric + t.metric.transpose()),
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::domain_error("potential not LCK at sample");
  }
  t.theta.resize(d);
  for (int j = 0; j < d; ++j) t.theta[j] = a.dphi[j].value() / t.phi;
  t.theta_sharp = t.metric.inverse() * t.theta;
  t.jtheta = t.J * t.theta;
  t.eta = t.omega - (t.theta * t.jtheta.transpose() - t.jtheta * t.theta.transpose());
  t.lee_norm_sq = t.theta_sharp.dot((t.omega_tilde * t.J) * t.theta_sharp);
  return t;
}

Eigen::MatrixXd omega_tilde_fd(const AutomorphicPotential& p, const AmbientSample& s) {
  s.validate(p);
  const int d = 2 * p.n;
  auto hess = [&](double h) {
    Eigen::MatrixXd S(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) {
        double v;
        Eigen::VectorXd zz = s.z;
        if (j == k) {
          double f0 = potential_value(p, zz);
          zz[j] += h;
          double fp = potential_value(p, zz);
          zz[j] -= 2 * h;
          double fm = potential_value(p, zz);
          v = (fp - 2 * f0 + fm) / (h * h);
        } else {
          zz[j] += h;
          zz[k] += h;
          double fpp = potential_value(p, zz);
          zz[k] -= 2 * h;
          double fpm = potential_value(p, zz);
          zz[j] -= 2 * h;
          double fmm = potential_value(p, zz);
          zz[k] += 2 * h;
          double fmp = potential_value(p, zz);
          v = (fpp - fpm - fmp + fmm) / (4 * h * h);
        }
        S(j, k) = S(k, j) = v;
      }
    return S;
  };
  Eigen::MatrixXd coarse = hess(s.h_amb), fine = hess(0.5 * s.h_amb);
  Eigen::MatrixXd S = (4.0 * fine - coarse) / 3.0;  // one Richardson level
  return ddc_matrix(S, standard_complex_structure(p.n));
}

LckResidual check_lck(const AutomorphicPotential& p, const AmbientSample& s) {
  s.validate(p);
  if (!p.analytic()) throw std::invalid_argument("analytic mode required");
  const int d = 2 * p.n;
  AmbientJets a = ambient_jets(p, s.z, 3);
  Eigen::MatrixXd J = standard_complex_structure(p.n);

  Jet phi1 = a.phi.truncated(1);
  // omega entries as degree-1 jets.
  std::vector<std::vector<Jet>> om(d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      Jet acc = Jet::constant(phi1.ctx(), 0.0);
      for (int l = 0; l < d; ++l)
        acc += -(J(j, l) * a.S[l][k].truncated(1) + a.S[j][l].truncated(1) * J(l, k));
      om[j].push_back(acc / phi1);
    }
  Eigen::VectorXd theta(d);
  for (int j = 0; j < d; ++j) theta[j] = a.dphi[j].value() / a.phi.value();

  LckResidual r;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      r.dtheta = std::max(r.dtheta, std::abs((a.dphi[j].truncated(2) / a.phi.truncated(2)).deriv({i}) -
                                             (a.dphi[i].truncated(2) / a.phi.truncated(2)).deriv({j})));
      for (int k = j + 1; k < d; ++k) {
        double dom = om[j][k].deriv({i}) + om[k][i].deriv({j}) + om[i][j].deriv({k});
        double tw = theta[i] * om[j][k].value() + theta[j] * om[k][i].value() +
                    theta[k] * om[i][j].value();
        // With theta = d log phi the exact relation is d omega = -theta ^ omega
        // (the Lee form oriented by d omega = theta ^ omega is -d log phi).
        r.lck = std::max(r.lck, std::abs(dom + tw));
      }
    }
  return r;
}

double check_homogeneity(const AutomorphicPotential& p, const AmbientSample& s) {
  s.validate(p);
  if (!p.analytic()) throw std::invalid_argument("analytic mode required");
  const int d = 2 * p.n;
  AmbientJets a = ambient_jets(p, s.z, 3);
  Eigen::MatrixXd J = standard_complex_structure(p.n);

  // Lie_v omega_tilde - 2 omega_tilde has components (z . grad) Omega_{jk}.
  double sup = 0.0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double acc = 0.0;
      for (int l = 0; l < d; ++l) {
        double dOmega = 0.0;
        for (int m = 0; m < d; ++m)
          dOmega += -(J(j, m) * a.S[m][k].deriv({l}) + a.S[j][m].deriv({l}) * J(m, k));
        acc += s.z[l] * dOmega;
      }
      sup = std::max(sup, std::abs(acc));
    }
  // Weight-2 defect of the potential itself.
  double euler = 0.0;
  for (int j = 0; j < d; ++j) euler += s.z[j] * a.dphi[j].value();
  sup = std::max(sup, std::abs(euler - 2.0 * a.phi.value()) / a.phi.value());
  return sup;
}

double check_gauduchon(const AutomorphicPotential& p, const std::vector<AmbientSample>& batch) {
  if (!p.analytic()) throw std::invalid_argument("analytic mode required");
  double sup = 0.0;
  for (const auto& s : batch) {
    s.validate(p);
    ConnectionData c = connection_data(p, s.z);
    const int d = static_cast<int>(c.theta.size());
    // d* theta = -g^{jk} (d_j theta_k - Gamma^m_{jk} theta_m)
    double acc = 0.0;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double cov = c.dtheta(j, k);
        for (int m = 0; m < d; ++m) cov -= c.gamma[m](j, k) * c.theta[m];
        acc += c.g_inv(j, k) * cov;
      }
    sup = std::max(sup, std::abs(acc));
  }
  return sup;
}

double check_vaisman(const AutomorphicPotential& p, const std::vector<AmbientSample>& batch) {
  if (!p.analytic()) throw std::invalid_argument("analytic mode required");
  double sup = 0.0;
  for (const auto& s : batch) {
    s.validate(p);
    ConnectionData c = connection_data(p, s.z);
    const int d = static_cast<int>(c.theta.size());
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double cov = c.dtheta(j, k);
        for (int m = 0; m < d; ++m) cov -= c.gamma[m](j, k) * c.theta[m];
        sup = std::max(sup, std::abs(cov));
      }
  }
  return sup;
}

WeylConnection weyl_connection_at(const AutomorphicPotential& p, const AmbientSample& s) {
  s.validate(p);
  if (!p.analytic()) throw std::invalid_argument("analytic mode required");
  ConnectionData c = connection_data(p, s.z);
  const int d = static_cast<int>(c.theta.size());
  Eigen::VectorXd sharp = c.g_inv * c.theta;

  WeylConnection w;
  w.levi_civita = c.gamma;
  w.gamma.assign(d, Eigen::MatrixXd(d, d));
  for (int m = 0; m < d; ++m)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        w.gamma[m](j, k) =
            c.gamma[m](j, k) -
            0.5 * (c.theta[j] * (m == k) + c.theta[k] * (m == j) - c.g(j, k) * sharp[m]);

  for (int m = 0; m < d; ++m)
    w.torsion = std::max(w.torsion, (w.gamma[m] - w.gamma[m].transpose()).cwiseAbs().maxCoeff());

  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double cov = c.dg[l](j, k);
        for (int m = 0; m < d; ++m)
          cov -= w.gamma[m](l, j) * c.g(m, k) + w.gamma[m](l, k) * c.g(j, m);
        w.nabla_g_defect = std::max(w.nabla_g_defect, std::abs(cov - c.theta[l] * c.g(j, k)));
      }
  return w;
}

double weyl_ricci_at(const AutomorphicPotential& p, const AmbientSample& s) {
  s.validate(p);
  if (!p.analytic()) throw std::invalid_argument("analytic mode required");
  const int d = 2 * p.n;
  AmbientJets a = ambient_jets(p, s.z, 4);
  auto H = complex_hessian_jets(a, p.n);
  CJet det = cdet(H);
  if (det.re.value() <= 0.0) throw std::domain_error("potential not LCK at sample");
  Jet L = log(det.re);  // det of a Hermitian matrix is real; im carries roundoff only
  Eigen::MatrixXd SL(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) SL(j, k) = L.deriv({j, k});
  Eigen::MatrixXd rho = -ddc_matrix(SL, standard_complex_structure(p.n));
  return rho.cwiseAbs().maxCoeff();
}

EtaComparison eta_two_path(const AutomorphicPotential& p, const AmbientSample& s) {
  StructureTensors t = tensors_at(p, s);
  AmbientJets a = ambient_jets(p, s.z, 2);
  const int d = 2 * p.n;
  // Second path: eta = dd^c log phi.
  Jet L = log(a.phi);
  Eigen::MatrixXd SL(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) SL(j, k) = L.deriv({j, k});
  Eigen::MatrixXd eta2 = ddc_matrix(SL, t.J);

  EtaComparison r;
  r.two_path = (t.eta - eta2).cwiseAbs().maxCoeff();
  Eigen::MatrixXd sym = t.eta * t.J;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()),
                                                    Eigen::EigenvaluesOnly);
  r.eigenvalues = es.eigenvalues();
  return r;
}

PsiFlowResult psi_flow_check(const AutomorphicPotential& p1, const AutomorphicPotential& p2,
                             const std::vector<AmbientSample>& batch) {
  if (!p1.analytic() || !p2.analytic()) throw std::invalid_argument("analytic mode required");
  if (p1.q != p2.q) throw std::invalid_argument("deck factors must agree");
  if (p1.n != p2.n) throw std::invalid_argument("dimensions must agree");
  const int d = 2 * p1.n;

  auto det_value = [&](const AutomorphicPotential& p, const Eigen::VectorXd& z) {
    AmbientJets a = ambient_jets(p, z, 2);
    return complex_hessian(hessian_values(a), p.n).determinant().real();
  };

  PsiFlowResult r;
  for (const auto& s : batch) {
    s.validate(p1);
    AmbientJets a1 = ambient_jets(p1, s.z, 3);
    AmbientJets a2 = ambient_jets(p2, s.z, 3);
    CJet det1 = cdet(complex_hessian_jets(a1, p1.n));
    CJet det2 = cdet(complex_hessian_jets(a2, p2.n));
    Jet psi = det1.re / det2.re;  // degree-1 information used below

    StructureTensors t = tensors_at(p1, s);
    double flow = 0.0;
    for (int j = 0; j < d; ++j) flow += t.theta_sharp[j] * psi.deriv({j});
    r.flow = std::max(r.flow, std::abs(flow));

    double psi_q = det_value(p1, p1.q * s.z) / det_value(p2, p1.q * s.z);
    r.monodromy = std::max(r.monodromy, std::abs(psi_q / psi.value() - 1.0));
  }
  return r;
}

DeterminantRatioResult determinant_ratio_check(const AutomorphicPotential& p1,
                                               const AutomorphicPotential& p2,
                                               const std::vector<AmbientSample>& batch) {
  if (!p1.analytic() || !p2.analytic()) throw std::invalid_argument("analytic mode required");
  if (p1.n != 2) throw std::invalid_argument("determinant ratio check runs at n = 2");
  DeterminantRatioResult r;
  bool first = true;
  double factorial = 1.0;
  for (int k = 2; k <= p1.n; ++k) factorial *= k;
  const double top_scale = factorial * std::pow(2.0, p1.n);  // omega^n = n! 2^n det_C(H) dV

  for (const auto& s : batch) {
    s.validate(p1);
    StructureTensors t1 = tensors_at(p1, s);
    StructureTensors t2 = tensors_at(p2, s);
    double det_o1 = t1.omega.determinant(), det_o2 = t2.omega.determinant();
    double det_ot1 = t1.omega_tilde.determinant(), det_ot2 = t2.omega_tilde.determinant();
    // det omega_1 / det omega_2 = (phi_2/phi_1)^{2n} once det omega_tilde
    // is equalized; compare the 2n-th roots.
    double ratio = (det_o1 / det_o2) * (det_ot2 / det_ot1);
    double lhs = std::pow(ratio, 1.0 / (2.0 * p1.n));
    r.identity_defect = std::max(r.identity_defect, std::abs(lhs - t2.phi / t1.phi));

    AmbientJets a1 = ambient_jets(p1, s.z, 2);
    double vol_ratio = top_scale * complex_hessian(hessian_values(a1), p1.n).determinant().real();
    if (first) {
      r.volume_ratio_min = r.volume_ratio_max = vol_ratio;
      first = false;
    } else {
      r.volume_ratio_min = std::min(r.volume_ratio_min, vol_ratio);
      r.volume_ratio_max = std::max(r.volume_ratio_max, vol_ratio);
    }
  }
  return r;
}

std::vector<AmbientSample> sample_annulus(int n, double q, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-std::log(q), std::log(q));
  std::vector<AmbientSample> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd dir(2 * n);
    for (int j = 0; j < 2 * n; ++j) dir[j] = gauss(rng);
    double nrm = dir.norm();
    if (nrm < 1e-8) continue;
    dir /= nrm;
    // Stay away from the z1 = 0 seam of the leaf chart.
    if (std::hypot(dir[0], dir[1]) < 0.2) continue;
    AmbientSample s;
    s.z = std::exp(unif(rng)) * dir;
    s.h_amb = std::min(1e-2, s.z.norm() / 20.0);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace lck
