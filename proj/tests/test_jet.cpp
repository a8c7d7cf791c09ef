#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lck/jet.hpp"

using namespace lck;

TEST_CASE("context enumeration sizes") {
  CHECK(JetContext::get(4, 4)->size() == 70);   // C(8,4)
  CHECK(JetContext::get(6, 4)->size() == 210);  // C(10,4)
  CHECK(JetContext::get(2, 6)->size() == 28);
  CHECK_THROWS(JetContext::get(9, 2));
  CHECK_THROWS(JetContext::get(2, 7));
}

TEST_CASE("polynomial derivatives are exact") {
  auto ctx = JetContext::get(3, 4);
  Jet x = Jet::variable(ctx, 0, 1.5);
  Jet y = Jet::variable(ctx, 1, -0.5);
  Jet z = Jet::variable(ctx, 2, 2.0);
  Jet f = x * x * y + 3.0 * z * z * z * x - y * y * y * y;
  CHECK(f.value() == doctest::Approx(1.5 * 1.5 * -0.5 + 3 * 8 * 1.5 - 0.0625).epsilon(1e-15));
  CHECK(f.deriv({0, 0}) == doctest::Approx(2.0 * -0.5).epsilon(1e-15));       // f_xx = 2y
  CHECK(f.deriv({0, 1}) == doctest::Approx(2.0 * 1.5).epsilon(1e-15));        // f_xy = 2x
  CHECK(f.deriv({2, 2, 2}) == doctest::Approx(18.0 * 1.5).epsilon(1e-15));    // 18x
  CHECK(f.deriv({1, 1, 1, 1}) == doctest::Approx(-24.0).epsilon(1e-15));
  CHECK(f.deriv({0, 1, 2}) == 0.0);
}

TEST_CASE("transcendental jets match analytic derivatives") {
  auto ctx = JetContext::get(1, 6);
  double a = 0.7;
  Jet x = Jet::variable(ctx, 0, a);
  Jet f = exp(x * x);
  // d/dx exp(x^2) = 2x exp(x^2); d2 = (2 + 4x^2) exp(x^2)
  CHECK(f.deriv({0}) == doctest::Approx(2 * a * std::exp(a * a)).epsilon(1e-14));
  CHECK(f.deriv({0, 0}) == doctest::Approx((2 + 4 * a * a) * std::exp(a * a)).epsilon(1e-14));

  Jet g = log(1.0 + x * x);
  CHECK(g.value() == doctest::Approx(std::log(1 + a * a)).epsilon(1e-15));
  CHECK(g.deriv({0}) == doctest::Approx(2 * a / (1 + a * a)).epsilon(1e-14));

  Jet s = sqrt(x);
  CHECK(s.deriv({0}) == doctest::Approx(0.5 / std::sqrt(a)).epsilon(1e-14));
  CHECK(s.deriv({0, 0}) == doctest::Approx(-0.25 * std::pow(a, -1.5)).epsilon(1e-14));
}

TEST_CASE("identities hold as whole jets") {
  auto ctx = JetContext::get(2, 5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.2, 1.8);
  for (int trial = 0; trial < 20; ++trial) {
    Jet x = Jet::variable(ctx, 0, unif(rng));
    Jet y = Jet::variable(ctx, 1, unif(rng));
    Jet f = 1.0 + x * x + y * exp(x);
    Jet lhs = log(f * f);
    Jet rhs = 2.0 * log(f);
    CHECK((lhs.coeffs() - rhs.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
    Jet q = f / (f * f);  // == 1/f
    Jet r = 1.0 / f;
    CHECK((q.coeffs() - r.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
    Jet sr = sqrt(f) * sqrt(f);
    CHECK((sr.coeffs() - f.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("derivative jets commute and lower the order") {
  auto ctx = JetContext::get(2, 4);
  Jet x = Jet::variable(ctx, 0, 0.3);
  Jet y = Jet::variable(ctx, 1, 0.9);
  Jet f = exp(x * y) + x * x * x * y;
  Jet fx = f.derivative(0);
  Jet fxy = fx.derivative(1);
  Jet fy = f.derivative(1);
  Jet fyx = fy.derivative(0);
  CHECK(fx.ctx()->order() == 3);
  CHECK((fxy.coeffs() - fyx.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(fxy.value() == doctest::Approx(f.deriv({0, 1})).epsilon(1e-13));
}

TEST_CASE("truncation keeps low-order coefficients") {
  auto ctx = JetContext::get(3, 4);
  Jet x = Jet::variable(ctx, 0, 0.4);
  Jet f = exp(x);
  Jet t = f.truncated(2);
  CHECK(t.ctx()->order() == 2);
  CHECK(t.value() == f.value());
  CHECK(t.deriv({0, 0}) == doctest::Approx(f.deriv({0, 0})).epsilon(1e-15));
}

TEST_CASE("division and pow agree with elementary algebra") {
  auto ctx = JetContext::get(2, 4);
  Jet x = Jet::variable(ctx, 0, 1.1);
  Jet y = Jet::variable(ctx, 1, 0.6);
  Jet p = pow(x + y, 3);
  Jet q = (x + y) * (x + y) * (x + y);
  CHECK((p.coeffs() - q.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
  Jet inv = pow(x, -2);
  Jet inv2 = 1.0 / (x * x);
  CHECK((inv.coeffs() - inv2.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("mixing contexts is rejected") {
  Jet a = Jet::variable(JetContext::get(2, 3), 0, 1.0);
  Jet b = Jet::variable(JetContext::get(3, 3), 0, 1.0);
  CHECK_THROWS(a + b);
}
