#pragma once

// Diagonal Hopf manifold H = (C^n \ 0) / <z -> qz> with automorphic
// potential phi = |z|^2 e^{u(w)}, w the leaf-space chart coordinate.
//
// All ambient derivatives come from truncated Taylor-jet arithmetic on phi,
// so 3rd/4th-order tensor identities are checked at close to machine
// precision; a nested finite-difference path is kept as an independent
// cross-check of the low-order tensors.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lck/expr.hpp"
#include "lck/grid.hpp"
#include "lck/jet.hpp"

namespace lck {

struct AutomorphicPotential {
  int n = 2;        // complex dimension, 2 or 3
  double q = 2.0;   // deck factor, > 1
  ExprPtr u;        // analytic-mode transverse function (null means u == 0)
  const ScalarField* u_grid = nullptr;  // grid mode (2nd-order outputs only)
  // Test hook: replace phi by |z|^2 + 1, which breaks weight-2 homogeneity.
  // Used as the negative control for the structure predicates.
  bool shifted_norm_control = false;

  bool analytic() const { return u_grid == nullptr; }
  void validate() const;
};

struct AmbientSample {
  Eigen::VectorXd z;       // 2n real coordinates (x1, y1, x2, y2, ...)
  double h_amb = 1e-2;     // step for the finite-difference cross path

  void validate(const AutomorphicPotential& p) const;
};

struct StructureTensors {
  double phi = 0.0;
  Eigen::VectorXd theta, theta_sharp, jtheta;
  Eigen::MatrixXd omega_tilde, omega, eta, J, metric;  // metric = omega(., J.)
  // Cover-metric square norm of the Lee field; equals phi for automorphic
  // potentials (the paper's phi = |theta|^2 identity, stated on the cone
  // where the cover Kaehler metric provides the norm).
  double lee_norm_sq = 0.0;
};

// phi as a jet of the ambient coordinates, centered at z.
Jet potential_jet(const AutomorphicPotential& p, const Eigen::VectorXd& z, int order);
// Plain evaluation (used by the finite-difference cross path).
double potential_value(const AutomorphicPotential& p, const Eigen::VectorXd& z);

Eigen::MatrixXd standard_complex_structure(int n);

StructureTensors tensors_at(const AutomorphicPotential& p, const AmbientSample& s);

// omega_tilde by nested central differences of phi with one Richardson level;
// independent of the jet engine.
Eigen::MatrixXd omega_tilde_fd(const AutomorphicPotential& p, const AmbientSample& s);

struct LckResidual {
  double lck = 0.0;     // sup |d omega - theta ^ omega| over 3-form components
  double dtheta = 0.0;  // sup |d theta|
};
LckResidual check_lck(const AutomorphicPotential& p, const AmbientSample& s);

// max of the form defect |Lie_v omega_tilde - 2 omega_tilde| and the
// potential defect |v(phi) - 2 phi| / phi, v the Euler field.
double check_homogeneity(const AutomorphicPotential& p, const AmbientSample& s);

double check_gauduchon(const AutomorphicPotential& p, const std::vector<AmbientSample>& batch);
double check_vaisman(const AutomorphicPotential& p, const std::vector<AmbientSample>& batch);

struct WeylConnection {
  std::vector<Eigen::MatrixXd> gamma;        // gamma[m](j, k) with lower indices j, k
  std::vector<Eigen::MatrixXd> levi_civita;  // same layout, for reference
  double torsion = 0.0;                      // sup asymmetry in the lower indices
  double nabla_g_defect = 0.0;               // sup |nabla g - theta (x) g|
};
WeylConnection weyl_connection_at(const AutomorphicPotential& p, const AmbientSample& s);

// sup norm of the Ricci form of the cover metric,
// rho = -dd^c log det (d^2 phi / dz_a dzbar_b).
double weyl_ricci_at(const AutomorphicPotential& p, const AmbientSample& s);

struct EtaComparison {
  double two_path = 0.0;          // |(omega - theta^Jtheta) - dd^c log phi|
  Eigen::VectorXd eigenvalues;    // of the associated symmetric form, ascending
};
EtaComparison eta_two_path(const AutomorphicPotential& p, const AmbientSample& s);

struct PsiFlowResult {
  double flow = 0.0;       // max |Lie_{theta_sharp} Psi|
  double monodromy = 0.0;  // max |Psi(qz)/Psi(z) - 1|
};
PsiFlowResult psi_flow_check(const AutomorphicPotential& p1, const AutomorphicPotential& p2,
                             const std::vector<AmbientSample>& batch);

struct DeterminantRatioResult {
  double identity_defect = 0.0;   // det-ratio identity, after equalizing det omega_tilde
  double volume_ratio_min = 0.0;  // omega_tilde^n / (Omega ^ Omega-bar), batch extremes
  double volume_ratio_max = 0.0;
};
DeterminantRatioResult determinant_ratio_check(const AutomorphicPotential& p1,
                                               const AutomorphicPotential& p2,
                                               const std::vector<AmbientSample>& batch);

// Deterministic samples in the fundamental annulus 1/q <= |z| <= q, biased
// away from the z1 = 0 chart seam.
std::vector<AmbientSample> sample_annulus(int n, double q, int count, std::uint64_t seed);

}  // namespace lck
