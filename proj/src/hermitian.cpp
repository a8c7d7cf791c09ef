#include "lck/hermitian.hpp"

#include <cmath>
#include <stdexcept>

namespace lck {

HermitianValue HermitianValue::diag(int m, double a, double b, double c) {
  HermitianValue v;
  v.m = m;
  v.mat(0, 0) = a;
  if (m > 1) v.mat(1, 1) = b;
  if (m > 2) v.mat(2, 2) = c;
  return v;
}

void HermitianValue::check_hermitian(double rel_tol) const {
  Eigen::MatrixXcd b = block();
  double defect = (b - b.adjoint()).norm();
  double scale = std::max(b.norm(), 1e-300);
  if (defect > rel_tol * scale) throw std::invalid_argument("matrix is not Hermitian");
}

bool HermitianValue::positive_definite() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > 0.0;
}

namespace {

// Branch-free adjugate via the Cayley-Hamilton polynomial (m <= 3).
Eigen::MatrixXcd adjugate(const Eigen::MatrixXcd& a) {
  const int m = static_cast<int>(a.rows());
  if (m == 1) return Eigen::MatrixXcd::Identity(1, 1);
  if (m == 2) return a.trace() * Eigen::MatrixXcd::Identity(2, 2) - a;
  Eigen::MatrixXcd a2 = a * a;
  std::complex<double> t1 = a.trace(), t2 = a2.trace();
  return a2 - t1 * a + 0.5 * (t1 * t1 - t2) * Eigen::MatrixXcd::Identity(3, 3);
}

}  // namespace

HermitianValue hermitian_power(const HermitianValue& a, int k) {
  if (k < 0 || k > a.m) throw std::invalid_argument("exterior power index out of range");
  a.check_hermitian();
  HermitianValue out;
  if (k == 0) {
    out.m = 1;
    out.mat(0, 0) = 1.0;
    return out;
  }
  if (k == a.m) {
    out.m = 1;
    out.mat(0, 0) = a.block().determinant().real();
    return out;
  }
  if (k == a.m - 1) {
    out.m = a.m;
    out.mat.topLeftCorner(a.m, a.m) = adjugate(a.block());
    return out;
  }
  // Remaining case: m = 3, k = 1 — the coefficient object is a itself.
  out = a;
  return out;
}

HermitianValue root_extract(const HermitianValue& p, int m) {
  if (m != 2 && m != 3) throw std::invalid_argument("root extraction supports m in {2, 3}");
  if (p.m != m) throw std::invalid_argument("dimension mismatch in root extraction");
  p.check_hermitian();
  if (!p.positive_definite()) throw std::domain_error("no positive root");
  Eigen::MatrixXcd b = p.block();
  double det = b.determinant().real();
  double scale = std::pow(det, 1.0 / (m - 1));
  HermitianValue out;
  out.m = m;
  out.mat.topLeftCorner(m, m) = scale * b.inverse();
  // Re-symmetrize to kill inversion roundoff.
  Eigen::MatrixXcd r = out.mat.topLeftCorner(m, m);
  out.mat.topLeftCorner(m, m) = 0.5 * (r + r.adjoint());
  return out;
}

}  // namespace lck
