#pragma once

// Pointwise Hermitian (1,1)-form values in complex dimension m <= 3, with
// the exterior-power / root-extraction pair used by the uniqueness argument.

#include <complex>

#include <Eigen/Dense>

namespace lck {

struct HermitianValue {
  int m = 2;
  Eigen::Matrix3cd mat = Eigen::Matrix3cd::Zero();  // top-left m x m block

  static HermitianValue diag(int m, double a, double b, double c = 0.0);

  Eigen::MatrixXcd block() const { return mat.topLeftCorner(m, m); }
  void check_hermitian(double rel_tol = 1e-14) const;
  bool positive_definite() const;
};

// Coefficient object of the (k,k) exterior power a^k.  For k = m-1 the dual
// Hermitian matrix (eigenvalues det(a)/lambda_i in the eigenbasis of a, i.e.
// the adjugate); k = 0 gives the scalar 1 and k = m gives det(a), both
// returned as 1x1 values.
HermitianValue hermitian_power(const HermitianValue& a, int k);

// Inverse of hermitian_power(., m-1):  alpha = det(p)^{1/(m-1)} p^{-1}.
HermitianValue root_extract(const HermitianValue& p, int m);

}  // namespace lck
