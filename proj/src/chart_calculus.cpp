#include "lck/chart_calculus.hpp"

#include <cmath>

#include "lck/parallel.hpp"

namespace lck {

namespace {

// 6th-order second-derivative stencil, in units of 1/h^2.
constexpr double kD2[7] = {1.0 / 90.0, -3.0 / 20.0, 1.5, -49.0 / 18.0, 1.5, -3.0 / 20.0, 1.0 / 90.0};

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Gauss-Legendre nodes/weights on [0, 1], 10 points.
constexpr int kGauss = 10;
const double kGx[kGauss] = {0.013046735741414128, 0.06746831665550774, 0.16029521585048778,
                            0.2833023029353764,  0.4255628305091844,  0.5744371694908156,
                            0.7166976970646236,  0.8397047841495122,  0.9325316833444923,
                            0.9869532642585859};
const double kGw[kGauss] = {0.03333567215434403, 0.0747256745752903,  0.10954318125799103,
                            0.13463335965499817, 0.14776211235737644, 0.14776211235737644,
                            0.13463335965499817, 0.10954318125799103, 0.0747256745752903,
                            0.03333567215434403};

}  // namespace

double partition_weight(double r) {
  double t = (1.1 - r) / 0.2;
  double g1 = bump(t), g2 = bump(1.0 - t);
  return g1 / (g1 + g2);
}

Form11Field ddc(const ScalarField& u) {
  const GridSpec& g = u.grid();
  if (!u.all_finite()) throw std::invalid_argument("non-finite scalar field");
  const int reach = GridSpec::stencil_reach;
  const double inv_h2 = 1.0 / (g.h() * g.h());
  Form11Field out(g);

  // Pass 1: raw stencil Laplacian on chart interiors.
  for (int c = 0; c < 2; ++c) {
    const Eigen::ArrayXXd& v = u.chart(c);
    Eigen::ArrayXXd& o = out.chart(c);
    for (int i = reach; i < g.n - reach; ++i)
      for (int j = reach; j < g.n - reach; ++j) {
        double acc = 0.0;
        for (int k = -reach; k <= reach; ++k)
          acc += kD2[k + reach] * (v(i + k, j) + v(i, j + k));
        o(i, j) = acc * inv_h2;
      }
  }

  // Pass 2: boundary margin through the transition rule from the other chart.
  for (int c = 0; c < 2; ++c) {
    Eigen::ArrayXXd& o = out.chart(c);
    const Eigen::ArrayXXd& other = out.chart(1 - c);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        bool margin = i < reach || j < reach || i >= g.n - reach || j >= g.n - reach;
        if (!margin) continue;
        std::complex<double> w(g.coord(i), g.coord(j));
        std::complex<double> wi = chart_invert(w);
        double r2 = std::norm(w);
        o(i, j) = lagrange_interp<double>(g, other, wi.real(), wi.imag(), 5) / (r2 * r2);
      }
  }
  return out;
}

Form11Field fubini_study_reference(const GridSpec& g) {
  g.validate();
  Form11Field out(g);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        double r2 = g.coord(i) * g.coord(i) + g.coord(j) * g.coord(j);
        out.chart(c)(i, j) = 4.0 / ((1.0 + r2) * (1.0 + r2));
      }
  return out;
}

namespace {

double quadrature(const GridSpec& g,
                  const std::function<double(int /*chart*/, double, double)>& integrand) {
  const int ncell = g.n - 1;
  const double h = g.h();
  // One slot per (chart, cell); filled independently, reduced in fixed order.
  std::vector<double> slot(2 * ncell * ncell, 0.0);
  parallel_for(2 * ncell * ncell, [&](int idx) {
    int c = idx / (ncell * ncell);
    int cell = idx % (ncell * ncell);
    int ci = cell / ncell, cj = cell % ncell;
    double x0 = g.coord(ci), y0 = g.coord(cj);
    // Cells fully outside the partition support contribute nothing.
    auto axis_min = [&](double lo) {
      return (lo <= 0.0 && lo + h >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(lo + h));
    };
    double rmin = std::hypot(axis_min(x0), axis_min(y0));
    if (c == 0 && rmin > 1.1 + 1e-12) return;
    if (c == 1 && rmin > 1.0 / 0.9 + 1e-12) return;
    double acc = 0.0;
    for (int a = 0; a < kGauss; ++a)
      for (int b = 0; b < kGauss; ++b) {
        double x = x0 + h * kGx[a], y = y0 + h * kGx[b];
        double r = std::hypot(x, y);
        double wgt = c == 0 ? partition_weight(r) : 1.0 - partition_weight(r > 0 ? 1.0 / r : 2.0);
        if (wgt == 0.0) continue;
        acc += kGw[a] * kGw[b] * wgt * integrand(c, x, y);
      }
    slot[idx] = acc * h * h;
  });
  return pairwise_sum(std::move(slot));
}

}  // namespace

double integrate(const Form11Field& f) {
  if (!f.all_finite()) throw std::invalid_argument("non-finite form field");
  return quadrature(f.grid(), [&](int c, double x, double y) { return f.interp(c, x, y, 7); });
}

double integrate_scaled(const Form11Field& f, const ScalarField& s,
                        const std::function<double(double)>& fn) {
  if (!(f.grid() == s.grid())) throw std::invalid_argument("grid mismatch");
  if (!f.all_finite() || !s.all_finite()) throw std::invalid_argument("non-finite field");
  return quadrature(f.grid(), [&](int c, double x, double y) {
    double sv = s.interp(c, x, y, 7);
    return f.interp(c, x, y, 7) * (fn ? fn(sv) : sv);
  });
}

}  // namespace lck
