#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lck/hopf.hpp"

using namespace lck;

namespace {

AutomorphicPotential standard(int n = 2, double q = 2.0) {
  AutomorphicPotential p;
  p.n = n;
  p.q = q;
  return p;
}

AutomorphicPotential perturbed(const char* expr, int n = 2, double q = 2.0) {
  AutomorphicPotential p;
  p.n = n;
  p.q = q;
  p.u = parse_expr(expr);
  return p;
}

AmbientSample at(std::initializer_list<double> coords) {
  AmbientSample s;
  s.z = Eigen::VectorXd(static_cast<int>(coords.size()));
  int i = 0;
  for (double c : coords) s.z[i++] = c;
  return s;
}

}  // namespace

TEST_CASE("validation rejects bad configurations") {
  AutomorphicPotential p = standard();
  CHECK_NOTHROW(p.validate());
  p.q = 1.0;
  CHECK_THROWS(p.validate());
  p = standard(4);
  CHECK_THROWS(p.validate());
  p = perturbed("h1", 3);  // n = 3 supports only u == 0
  CHECK_THROWS(p.validate());
  AmbientSample s = at({0.0, 0.0, 0.0, 0.0});
  CHECK_THROWS(s.validate(standard()));
}

TEST_CASE("standard potential: flat ambient tensors at a unit point") {
  AutomorphicPotential p = standard();
  AmbientSample s = at({1.0, 0.0, 0.0, 0.0});
  StructureTensors t = tensors_at(p, s);
  CHECK(t.phi == doctest::Approx(1.0).epsilon(1e-14));
  // phi = |z|^2: Omega = -4J has omega_tilde(0,1) = 4.
  CHECK(t.omega_tilde(0, 1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(t.metric.isApprox(4.0 * Eigen::MatrixXd::Identity(4, 4), 1e-12));
  // theta = d log phi = 2 x dx at this point.
  CHECK(t.theta[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(t.theta[1]) < 1e-13);
  // |theta|^2 in the cover metric equals phi.
  CHECK(t.lee_norm_sq == doctest::Approx(t.phi).epsilon(1e-12));
}

TEST_CASE("lee norm identity |theta|^2 = phi holds off the standard potential") {
  AutomorphicPotential p = perturbed("0.1 * h1");
  for (auto& s : sample_annulus(2, 2.0, 25, 5)) {
    StructureTensors t = tensors_at(p, s);
    CHECK(t.lee_norm_sq == doctest::Approx(t.phi).epsilon(1e-10));
  }
}

TEST_CASE("structure predicates on the standard Hopf surface") {
  AutomorphicPotential p = standard();
  auto batch = sample_annulus(2, 2.0, 40, 1);
  double lck = 0, dth = 0, hom = 0;
  for (auto& s : batch) {
    LckResidual r = check_lck(p, s);
    lck = std::max(lck, r.lck);
    dth = std::max(dth, r.dtheta);
    hom = std::max(hom, check_homogeneity(p, s));
  }
  CHECK(lck < 1e-8);
  CHECK(dth < 1e-8);
  CHECK(hom < 1e-8);
  CHECK(check_gauduchon(p, batch) < 1e-6);
  CHECK(check_vaisman(p, batch) < 1e-5);
}

TEST_CASE("structure predicates survive a transverse perturbation") {
  // u = 0.05 h1 is automorphic, so LCK and homogeneity remain exact;
  // Vaisman and Gauduchon remain satisfied (the metric is still Vaisman
  // up to the transverse conformal change staying in the family).
  AutomorphicPotential p = perturbed("0.05 * h1");
  auto batch = sample_annulus(2, 2.0, 20, 2);
  for (auto& s : batch) {
    LckResidual r = check_lck(p, s);
    CHECK(r.lck < 1e-8);
    CHECK(r.dtheta < 1e-8);
    CHECK(check_homogeneity(p, s) < 1e-8);
  }
}

TEST_CASE("weyl connection reproduces nabla g = theta (x) g") {
  AutomorphicPotential p = standard();
  for (auto& s : sample_annulus(2, 2.0, 15, 3)) {
    WeylConnection w = weyl_connection_at(p, s);
    CHECK(w.torsion < 1e-10);
    CHECK(w.nabla_g_defect < 1e-9);
  }
  // Perturbed potentials too: the Weyl connection is metric-independent
  // of which gauge representative is used.
  AutomorphicPotential pp = perturbed("0.1 * h1");
  for (auto& s : sample_annulus(2, 2.0, 8, 4)) {
    WeylConnection w = weyl_connection_at(pp, s);
    CHECK(w.nabla_g_defect < 1e-9);
  }
}

TEST_CASE("cover Ricci form vanishes for the standard potential") {
  AutomorphicPotential p = standard();
  for (auto& s : sample_annulus(2, 2.0, 10, 6)) CHECK(weyl_ricci_at(p, s) < 1e-8);
}

TEST_CASE("omega_tilde: jet path against the finite-difference path") {
  for (const char* expr : {"0.0", "0.1 * h1", "0.05 * re_w2"}) {
    AutomorphicPotential p = perturbed(expr);
    for (auto& s : sample_annulus(2, 2.0, 6, 7)) {
      Eigen::MatrixXd jet = tensors_at(p, s).omega_tilde;
      Eigen::MatrixXd fd = omega_tilde_fd(p, s);
      CHECK((jet - fd).cwiseAbs().maxCoeff() < 1e-6 * jet.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("eta two-path identity and kernel") {
  for (const char* expr : {"0.0", "0.1 * h1"}) {
    AutomorphicPotential p = perturbed(expr);
    for (auto& s : sample_annulus(2, 2.0, 12, 8)) {
      EtaComparison cmp = eta_two_path(p, s);
      CHECK(cmp.two_path < 1e-6);
      // Exactly two eigenvalues vanish (theta_sharp and J theta_sharp);
      // the rest stay away from zero.
      Eigen::VectorXd ev = cmp.eigenvalues.cwiseAbs();
      std::sort(ev.data(), ev.data() + ev.size());
      double median_pos = ev[2];
      CHECK(ev[0] < 1e-6);
      CHECK(ev[1] < 1e-6);
      CHECK(ev[2] > 0.1 * median_pos);
      CHECK(ev[3] > 0.1 * median_pos);
    }
  }
}

TEST_CASE("eta annihilates the Lee field and its rotation") {
  AutomorphicPotential p = standard();
  for (auto& s : sample_annulus(2, 2.0, 10, 9)) {
    StructureTensors t = tensors_at(p, s);
    double scale = t.eta.cwiseAbs().maxCoeff();
    CHECK((t.eta * t.theta_sharp).cwiseAbs().maxCoeff() < 1e-9 * scale);
    CHECK((t.eta * (t.J * t.theta_sharp)).cwiseAbs().maxCoeff() < 1e-9 * scale);
  }
}

TEST_CASE("n = 3 standard Hopf passes the structure predicates") {
  AutomorphicPotential p = standard(3, 1.7);
  auto batch = sample_annulus(3, 1.7, 12, 10);
  for (auto& s : batch) {
    LckResidual r = check_lck(p, s);
    CHECK(r.lck < 1e-8);
    CHECK(r.dtheta < 1e-8);
    CHECK(check_homogeneity(p, s) < 1e-8);
  }
  CHECK(check_vaisman(p, batch) < 1e-5);
}

TEST_CASE("negative control: |z|^2 + 1 fails the structure suite loudly") {
  AutomorphicPotential p = standard();
  p.shifted_norm_control = true;
  auto batch = sample_annulus(2, 2.0, 20, 11);
  double lck = 0, hom = 0;
  for (auto& s : batch) {
    lck = std::max(lck, check_lck(p, s).lck);
    hom = std::max(hom, check_homogeneity(p, s));
  }
  // The cover-level conformal identity d omega = -theta ^ omega is exact for
  // every potential (Omega is exact by construction), so the control is
  // caught by the weight-2 homogeneity requirement, not by the lck residual.
  CHECK(lck < 1e-10);
  CHECK(hom > 1e-2);
  CHECK(check_vaisman(p, batch) > 1e-2);
}

TEST_CASE("psi flow: automorphic ratio is leafwise constant with trivial monodromy") {
  AutomorphicPotential p1 = standard();
  AutomorphicPotential p2 = perturbed("0.1 * h1");
  auto batch = sample_annulus(2, 2.0, 30, 12);
  PsiFlowResult r = psi_flow_check(p1, p2, batch);
  CHECK(r.flow < 1e-5);
  CHECK(r.monodromy < 1e-6);
}

TEST_CASE("determinant ratio identity on a potential pair") {
  AutomorphicPotential p1 = standard();
  AutomorphicPotential p2 = perturbed("0.1 * h1");
  auto batch = sample_annulus(2, 2.0, 20, 13);
  DeterminantRatioResult r = determinant_ratio_check(p1, p2, batch);
  CHECK(r.identity_defect < 1e-8);
  // omega_tilde^n / (Omega ^ Omega-bar) = n! 2^n det_C H = 8 for the flat
  // standard potential in n = 2.
  CHECK(r.volume_ratio_min == doctest::Approx(8.0).epsilon(1e-10));
  CHECK(r.volume_ratio_max == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("sampling is deterministic and avoids the chart seam") {
  auto a = sample_annulus(2, 2.0, 50, 123);
  auto b = sample_annulus(2, 2.0, 50, 123);
  REQUIRE(a.size() == 50);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].z - b[i].z).cwiseAbs().maxCoeff() == 0.0);
    double r = a[i].z.norm();
    CHECK(r >= 0.5 - 1e-12);
    CHECK(r <= 2.0 + 1e-12);
    // Seam margin is relative to the sample radius.
    CHECK(std::hypot(a[i].z[0], a[i].z[1]) >= 0.2 * r * 0.999);
  }
  auto c = sample_annulus(2, 2.0, 50, 124);
  CHECK((a[0].z - c[0].z).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("grid-mode potential agrees with analytic mode at low order") {
  GridSpec g;
  g.n = 65;
  g.radius = 1.5;
  ScalarField u = ScalarField::from_expr(g, parse_expr("0.1 * h1"));
  AutomorphicPotential pa = perturbed("0.1 * h1");
  AutomorphicPotential pg = standard();
  pg.u_grid = &u;
  for (auto& s : sample_annulus(2, 2.0, 6, 14)) {
    StructureTensors ta = tensors_at(pa, s);
    StructureTensors tg = tensors_at(pg, s);
    CHECK(std::abs(ta.phi - tg.phi) < 1e-8 * ta.phi);
    CHECK((ta.omega_tilde - tg.omega_tilde).cwiseAbs().maxCoeff() < 1e-5);
  }
  // Orders above 2 are not available in grid mode.
  AmbientSample s0 = at({1.0, 0.1, 0.2, 0.1});
  CHECK_THROWS(check_lck(pg, s0));
}
