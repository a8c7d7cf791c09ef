#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "lck/hermitian.hpp"

using namespace lck;
using Cx = std::complex<double>;

namespace {

HermitianValue random_pd(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd b(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) b(i, j) = Cx(gauss(rng), gauss(rng));
  Eigen::MatrixXcd p = b * b.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(m, m);
  HermitianValue v;
  v.m = m;
  v.mat.topLeftCorner(m, m) = p;
  return v;
}

}  // namespace

TEST_CASE("diag constructor and basic predicates") {
  HermitianValue d = HermitianValue::diag(2, 3.0, 5.0);
  CHECK(d.positive_definite());
  CHECK_NOTHROW(d.check_hermitian());
  HermitianValue neg = HermitianValue::diag(2, 3.0, -5.0);
  CHECK_FALSE(neg.positive_definite());
  HermitianValue nh;
  nh.m = 2;
  nh.mat(0, 1) = Cx(1, 1);  // adjoint entry missing
  CHECK_THROWS(nh.check_hermitian());
}

TEST_CASE("power edge cases: k = 0 and k = m") {
  HermitianValue d = HermitianValue::diag(3, 2.0, 3.0, 4.0);
  HermitianValue p0 = hermitian_power(d, 0);
  CHECK(p0.m == 1);
  CHECK(p0.mat(0, 0).real() == doctest::Approx(1.0));
  HermitianValue pm = hermitian_power(d, 3);
  CHECK(pm.m == 1);
  CHECK(pm.mat(0, 0).real() == doctest::Approx(24.0).epsilon(1e-14));
  CHECK_THROWS(hermitian_power(d, 4));
  CHECK_THROWS(hermitian_power(d, -1));
}

TEST_CASE("top power on diagonal values is the product of eigenvalues") {
  // diag(2, 3), k = 1 (= m-1): dual has eigenvalues det/lambda = (3, 2).
  HermitianValue d = HermitianValue::diag(2, 2.0, 3.0);
  HermitianValue dual = hermitian_power(d, 1);
  CHECK(dual.mat(0, 0).real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(dual.mat(1, 1).real() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("root extraction inverts the (m-1) power: 1000 random round trips") {
  std::mt19937_64 rng(42);
  int trials = 0;
  for (int m : {2, 3}) {
    for (int t = 0; t < 500; ++t) {
      HermitianValue a = random_pd(m, rng);
      HermitianValue p = hermitian_power(a, m - 1);
      HermitianValue back = root_extract(p, m);
      double scale = a.block().cwiseAbs().maxCoeff();
      double err = (back.block() - a.block()).cwiseAbs().maxCoeff();
      REQUIRE(err <= 1e-10 * std::max(1.0, scale));
      ++trials;
    }
  }
  CHECK(trials == 1000);
}

TEST_CASE("root extraction rejects non-positive input") {
  HermitianValue bad = HermitianValue::diag(2, 1.0, -2.0);
  CHECK_THROWS_WITH_AS(root_extract(bad, 2), doctest::Contains("positive"), std::domain_error);
  CHECK_THROWS(root_extract(HermitianValue::diag(2, 1.0, 1.0), 4));
}

TEST_CASE("adjugate identity: a * power_{m-1}(a)^T-ish = det * id") {
  // The dual at k = m-1 is the adjugate: a * adj(a) = det(a) I.
  std::mt19937_64 rng(9);
  for (int m : {2, 3})
    for (int t = 0; t < 20; ++t) {
      HermitianValue a = random_pd(m, rng);
      HermitianValue adj = hermitian_power(a, m - 1);
      Cx det = a.block().determinant();
      Eigen::MatrixXcd prod = a.block() * adj.block();
      Eigen::MatrixXcd expect = det * Eigen::MatrixXcd::Identity(m, m);
      CHECK((prod - expect).cwiseAbs().maxCoeff() < 1e-10 * std::abs(det) + 1e-12);
    }
}
