#include "lck/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lck {

namespace {

constexpr double kOverlapBand = 1.2;  // transition checks run on 1/1.2 <= |w| <= 1.2
constexpr double kInvertCap = 1e8;

void save_charts(const std::string& path, const GridSpec& g,
                 const std::array<Eigen::ArrayXXd, 2>& charts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "LCKF1 2 " << g.n << " ";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", g.radius);
  out << buf << "\n";
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g", i, j, charts[c](i, j));
        out << buf << "\n";
      }
  if (!out) throw std::runtime_error("write failure on " + path);
}

void load_charts(const std::string& path, GridSpec& g, std::array<Eigen::ArrayXXd, 2>& charts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string magic;
  int ncharts = 0;
  in >> magic >> ncharts >> g.n >> g.radius;
  if (magic != "LCKF1") throw std::runtime_error("unknown field file magic '" + magic + "'");
  if (ncharts != 2) throw std::runtime_error("unsupported chart count in field file");
  g.validate();
  for (int c = 0; c < 2; ++c) {
    charts[c].resize(g.n, g.n);
    for (int k = 0; k < g.n * g.n; ++k) {
      int i, j;
      double v;
      if (!(in >> i >> j >> v)) throw std::runtime_error("truncated field file " + path);
      if (i < 0 || i >= g.n || j < 0 || j >= g.n)
        throw std::runtime_error("index out of range in field file " + path);
      charts[c](i, j) = v;
    }
  }
}

template <class Rule>
double transition_sup(const GridSpec& g, const std::array<Eigen::ArrayXXd, 2>& charts, int degree,
                      Rule rule) {
  double sup = 0.0;
  for (int c = 0; c < 2; ++c) {
    const int other = 1 - c;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        std::complex<double> w(g.coord(i), g.coord(j));
        double r = std::abs(w);
        if (r < 1.0 / kOverlapBand || r > kOverlapBand) continue;
        std::complex<double> wi = chart_invert(w);
        double mapped =
            rule(lagrange_interp<double>(g, charts[other], wi.real(), wi.imag(), degree), r);
        sup = std::max(sup, std::abs(charts[c](i, j) - mapped));
      }
  }
  return sup;
}

}  // namespace

std::complex<double> chart_invert(std::complex<double> w) {
  double r = std::abs(w);
  if (r < 1.0 / kInvertCap) {
    // A chart origin maps to the other chart's point at infinity; capping the
    // magnitude keeps evaluation of inversion-stable expressions well defined.
    if (r == 0.0) return {kInvertCap, 0.0};
    return std::conj(w) * (kInvertCap / r);
  }
  return std::conj(w) / (r * r);
}

ScalarField::ScalarField(const GridSpec& g, double fill) : grid_(g) {
  grid_.validate();
  chart_[0] = Eigen::ArrayXXd::Constant(g.n, g.n, fill);
  chart_[1] = chart_[0];
}

ScalarField ScalarField::from_expr(const GridSpec& g, const ExprPtr& e) {
  ScalarField f(g);
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        std::complex<double> w(g.coord(i), g.coord(j));
        if (c == 1) w = chart_invert(w);
        f.chart_[c](i, j) = expr_eval(*e, w.real(), w.imag());
      }
  return f;
}

double ScalarField::transition_defect(int degree) const {
  return transition_sup(grid_, chart_, degree, [](double v, double) { return v; });
}

bool ScalarField::all_finite() const {
  return chart_[0].isFinite().all() && chart_[1].isFinite().all();
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  chart_[0] += o.chart_[0];
  chart_[1] += o.chart_[1];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  chart_[0] -= o.chart_[0];
  chart_[1] -= o.chart_[1];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  chart_[0] *= s;
  chart_[1] *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  chart_[0] += s;
  chart_[1] += s;
  return *this;
}

void ScalarField::save(const std::string& path) const { save_charts(path, grid_, chart_); }

ScalarField ScalarField::load(const std::string& path) {
  ScalarField f;
  load_charts(path, f.grid_, f.chart_);
  return f;
}

Form11Field::Form11Field(const GridSpec& g, double fill) : grid_(g) {
  grid_.validate();
  chart_[0] = Eigen::ArrayXXd::Constant(g.n, g.n, fill);
  chart_[1] = chart_[0];
}

double Form11Field::transition_defect(int degree) const {
  // c_A(w) = c_B(1/w) * |w|^{-4}
  return transition_sup(grid_, chart_, degree,
                        [](double v, double r) { return v / (r * r * r * r); });
}

bool Form11Field::positive() const {
  return (chart_[0] > 0.0).all() && (chart_[1] > 0.0).all();
}

bool Form11Field::all_finite() const {
  return chart_[0].isFinite().all() && chart_[1].isFinite().all();
}

Form11Field& Form11Field::operator+=(const Form11Field& o) {
  chart_[0] += o.chart_[0];
  chart_[1] += o.chart_[1];
  return *this;
}

Form11Field& Form11Field::operator-=(const Form11Field& o) {
  chart_[0] -= o.chart_[0];
  chart_[1] -= o.chart_[1];
  return *this;
}

Form11Field& Form11Field::operator*=(double s) {
  chart_[0] *= s;
  chart_[1] *= s;
  return *this;
}

void Form11Field::save(const std::string& path) const { save_charts(path, grid_, chart_); }

Form11Field Form11Field::load(const std::string& path) {
  Form11Field f;
  load_charts(path, f.grid_, f.chart_);
  return f;
}

}  // namespace lck
