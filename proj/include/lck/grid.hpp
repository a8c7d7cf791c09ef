#pragma once

// Two-chart stereographic atlas of the leaf space CP^1.
//
// Chart A carries the coordinate w = x + iy, chart B carries w' = 1/w; each
// chart holds an N x N uniform grid on [-R, R]^2 with R > 1 so the charts
// overlap on the annulus 1/R <= |w| <= R.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lck/expr.hpp"
#include "lck/jet.hpp"

namespace lck {

struct GridSpec {
  int n = 64;          // points per axis
  double radius = 1.5;  // chart half-width R
  // Interior stencils are 7-point (6th order) per axis; see decisions log.
  static constexpr int fd_order = 6;
  static constexpr int stencil_reach = 3;

  double h() const { return 2.0 * radius / (n - 1); }
  double coord(int i) const { return -radius + h() * i; }

  void validate() const {
    if (radius <= 1.0) throw std::invalid_argument("chart radius must exceed 1");
    if (n < 17) throw std::invalid_argument("grid resolution below stencil support");
    if (h() * radius >= 0.25) throw std::invalid_argument("grid too coarse for radius");
  }

  bool operator==(const GridSpec& o) const { return n == o.n && radius == o.radius; }
};

// Map a point of one chart to the other chart's coordinate (w -> 1/w for the
// complex coordinate; the inversion is capped to keep chart origins finite).
std::complex<double> chart_invert(std::complex<double> w);

// Tensor-product Lagrange interpolation of per-chart grid values.  The node
// window is chosen from the value of (x, y); weights are computed in T so the
// same routine serves plain evaluation and jet-valued evaluation.
template <class T>
T lagrange_interp(const GridSpec& g, const Eigen::ArrayXXd& values, const T& x, const T& y,
                  int degree);

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(const GridSpec& g, double fill = 0.0);

  static ScalarField from_expr(const GridSpec& g, const ExprPtr& e);

  const GridSpec& grid() const { return grid_; }
  // chart 0 = A (coordinate w), chart 1 = B (coordinate w' = 1/w)
  Eigen::ArrayXXd& chart(int c) { return chart_[c]; }
  const Eigen::ArrayXXd& chart(int c) const { return chart_[c]; }

  double interp(int c, double x, double y, int degree = 7) const {
    return lagrange_interp<double>(grid_, chart_[c], x, y, degree);
  }

  // Max over overlap-band gridpoints of |value_A(w) - interp(value_B)(1/w)|.
  double transition_defect(int degree = 5) const;
  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

  void save(const std::string& path) const;
  static ScalarField load(const std::string& path);

 private:
  GridSpec grid_;
  std::array<Eigen::ArrayXXd, 2> chart_;
};

class Form11Field {
 public:
  Form11Field() = default;
  Form11Field(const GridSpec& g, double fill = 0.0);

  const GridSpec& grid() const { return grid_; }
  Eigen::ArrayXXd& chart(int c) { return chart_[c]; }
  const Eigen::ArrayXXd& chart(int c) const { return chart_[c]; }

  double interp(int c, double x, double y, int degree = 7) const {
    return lagrange_interp<double>(grid_, chart_[c], x, y, degree);
  }

  // Components transform with the Jacobian factor |w'|^{-4} across charts.
  double transition_defect(int degree = 5) const;
  bool positive() const;
  bool all_finite() const;

  Form11Field& operator+=(const Form11Field& o);
  Form11Field& operator-=(const Form11Field& o);
  Form11Field& operator*=(double s);

  void save(const std::string& path) const;
  static Form11Field load(const std::string& path);

 private:
  GridSpec grid_;
  std::array<Eigen::ArrayXXd, 2> chart_;
};

// ---- implementation of the templated interpolation ----

template <class T>
T lagrange_interp(const GridSpec& g, const Eigen::ArrayXXd& values, const T& x, const T& y,
                  int degree) {
  const int npts = degree + 1;
  const double h = g.h();
  auto window = [&](double v) {
    int lo = static_cast<int>(std::floor((v + g.radius) / h)) - degree / 2;
    if (lo < 0) lo = 0;
    if (lo > g.n - npts) lo = g.n - npts;
    return lo;
  };
  const int ix = window(scalar_value(x));
  const int iy = window(scalar_value(y));

  // 1D Lagrange basis along each axis.
  std::vector<T> lx, ly;
  lx.reserve(npts);
  ly.reserve(npts);
  for (int k = 0; k < npts; ++k) {
    T px = x * 0.0 + 1.0, py = y * 0.0 + 1.0;
    for (int m = 0; m < npts; ++m) {
      if (m == k) continue;
      px = px * ((x - g.coord(ix + m)) / (h * (k - m)));
      py = py * ((y - g.coord(iy + m)) / (h * (k - m)));
    }
    lx.push_back(px);
    ly.push_back(py);
  }
  T acc = x * 0.0;
  for (int a = 0; a < npts; ++a) {
    T row = x * 0.0;
    for (int b = 0; b < npts; ++b) row = row + lx[b] * values(ix + b, iy + a);
    acc = acc + row * ly[a];
  }
  return acc;
}

}  // namespace lck
