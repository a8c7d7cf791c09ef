#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "lck/expr.hpp"
#include "lck/jet.hpp"

using namespace lck;

namespace {
double ev(const ExprPtr& e, double x, double y) { return expr_eval(*e, x, y); }
}  // namespace

TEST_CASE("parser handles grammar and precedence") {
  CHECK(ev(parse_expr("2 + 3 * 4"), 0, 0) == 14.0);
  CHECK(ev(parse_expr("(2 + 3) * 4"), 0, 0) == 20.0);
  CHECK(ev(parse_expr("-x^2"), 3, 0) == -9.0);
  CHECK(ev(parse_expr("2 - 3 - 4"), 0, 0) == -5.0);
  CHECK(ev(parse_expr("12 / 3 / 2"), 0, 0) == 2.0);
  CHECK(ev(parse_expr("exp(log(5))"), 0, 0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(ev(parse_expr("x*y + y^3"), 2, 3) == 6 + 27);
  CHECK_THROWS_AS(parse_expr("x +"), ParseError);
  CHECK_THROWS_AS(parse_expr("bogus_name"), ParseError);
  CHECK_THROWS_AS(parse_expr("x ^ y"), ParseError);
  CHECK_THROWS_AS(parse_expr("(x"), ParseError);
}

TEST_CASE("named primitives match their definitions") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.4, 1.4);
  auto eabs = parse_expr("absw2");
  auto eh1 = parse_expr("h1");
  for (int t = 0; t < 50; ++t) {
    double x = unif(rng), y = unif(rng);
    std::complex<double> w(x, y);
    double a2 = std::norm(w);
    CHECK(ev(eabs, x, y) == doctest::Approx(a2).epsilon(1e-14));
    CHECK(ev(eh1, x, y) == doctest::Approx((1 - a2) / (1 + a2)).epsilon(1e-13));
    for (int k = 1; k <= 6; ++k) {
      std::complex<double> mono = std::pow(w, k) / std::pow(1.0 + a2, k);
      CHECK(ev(parse_expr("re_w" + std::to_string(k)), x, y) ==
            doctest::Approx(mono.real()).epsilon(1e-12));
      CHECK(ev(parse_expr("im_w" + std::to_string(k)), x, y) ==
            doctest::Approx(mono.imag()).epsilon(1e-12));
    }
  }
}

TEST_CASE("primitives are bounded spherical harmonics-like functions") {
  // h1 is odd under w -> 1/w; re_wk even, im_wk odd in the imaginary part.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.3, 1.4);
  auto eh1 = parse_expr("h1");
  for (int t = 0; t < 20; ++t) {
    double x = unif(rng), y = unif(rng);
    std::complex<double> w(x, y), wi = 1.0 / w;
    CHECK(ev(eh1, x, y) == doctest::Approx(-ev(eh1, wi.real(), wi.imag())).epsilon(1e-12));
    CHECK(ev(parse_expr("re_w2"), x, y) ==
          doctest::Approx(ev(parse_expr("re_w2"), wi.real(), wi.imag())).epsilon(1e-12));
    CHECK(ev(parse_expr("im_w2"), x, y) ==
          doctest::Approx(-ev(parse_expr("im_w2"), wi.real(), wi.imag())).epsilon(1e-12));
  }
}

TEST_CASE("symbolic differentiation against jet derivatives") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.2, 1.2);
  const char* samples[] = {"h1", "x*y^2 - 3*x", "exp(h1)", "log(1 + absw2)",
                           "re_w3 * im_w2", "h1 / (2 + absw2)", "im_w1^2"};
  auto ctx = JetContext::get(2, 3);
  for (const char* s : samples) {
    ExprPtr e = parse_expr(s);
    ExprPtr ex = expr_diff(e, false);
    ExprPtr ey = expr_diff(e, true);
    for (int t = 0; t < 10; ++t) {
      double x = unif(rng), y = unif(rng);
      Jet jx = Jet::variable(ctx, 0, x), jy = Jet::variable(ctx, 1, y);
      Jet j = expr_eval<Jet>(*e, jx, jy);
      CHECK(ev(ex, x, y) == doctest::Approx(j.deriv({0})).epsilon(1e-11));
      CHECK(ev(ey, x, y) == doctest::Approx(j.deriv({1})).epsilon(1e-11));
    }
  }
}

TEST_CASE("symbolic laplacian against jet second derivatives") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(-1.2, 1.2);
  const char* samples[] = {"h1", "exp(h1)", "log(1 + absw2)", "re_w2", "im_w3 * h1"};
  auto ctx = JetContext::get(2, 2);
  for (const char* s : samples) {
    ExprPtr e = parse_expr(s);
    ExprPtr lap = expr_laplacian(e);
    for (int t = 0; t < 10; ++t) {
      double x = unif(rng), y = unif(rng);
      Jet jx = Jet::variable(ctx, 0, x), jy = Jet::variable(ctx, 1, y);
      Jet j = expr_eval<Jet>(*e, jx, jy);
      CHECK(ev(lap, x, y) ==
            doctest::Approx(j.deriv({0, 0}) + j.deriv({1, 1})).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("laplacian of log(1+|w|^2) is the round reference density") {
  ExprPtr lap = expr_laplacian(parse_expr("log(1 + absw2)"));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-1.4, 1.4);
  for (int t = 0; t < 30; ++t) {
    double x = unif(rng), y = unif(rng);
    double r2 = x * x + y * y;
    CHECK(ev(lap, x, y) == doctest::Approx(4.0 / ((1 + r2) * (1 + r2))).epsilon(1e-12));
  }
}

TEST_CASE("jet evaluation of expressions works at high order") {
  // d4/dx4 of x^4 = 24 regardless of the evaluation point.
  auto ctx = JetContext::get(2, 4);
  ExprPtr e = parse_expr("x^4 + y^2 * x");
  Jet jx = Jet::variable(ctx, 0, 0.37), jy = Jet::variable(ctx, 1, -0.8);
  Jet j = expr_eval<Jet>(*e, jx, jy);
  CHECK(j.deriv({0, 0, 0, 0}) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(j.deriv({1, 1, 0}) == doctest::Approx(2.0).epsilon(1e-13));
}
