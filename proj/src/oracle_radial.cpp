#include "lck/oracle_radial.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lck {

namespace {

double c0(double r) {
  double d = 1.0 + r * r;
  return 4.0 / (d * d);
}

// Cumulative integral of uniformly sampled data, 4th order (piecewise cubic
// through the four nearest samples, one-sided at the ends).
std::vector<double> cumulative(const std::vector<double>& g, double h) {
  const int n = static_cast<int>(g.size());
  std::vector<double> out(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    double inc;
    if (i == 0)
      inc = (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]) / 24.0;
    else if (i + 2 >= n)
      inc = (9.0 * g[n - 1] + 19.0 * g[n - 2] - 5.0 * g[n - 3] + g[n - 4]) / 24.0;
    else
      inc = (-g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2]) / 24.0;
    out[i + 1] = out[i] + h * inc;
  }
  return out;
}

}  // namespace

RadialSolution solve_radial(const RadialProblem& prob) {
  if (!prob.f) throw std::invalid_argument("missing radial density");
  if (prob.nodes < 16 || prob.r_min <= 0.0 || prob.r_max <= prob.r_min)
    throw std::invalid_argument("bad radial mesh");

  const int n = prob.nodes;
  const double t0 = std::log(prob.r_min), t1 = std::log(prob.r_max);
  const double h = (t1 - t0) / (n - 1);

  RadialSolution sol;
  sol.t.resize(n);
  std::vector<double> r(n), fr(n), mass(n), emass(n);
  for (int i = 0; i < n; ++i) {
    sol.t[i] = t0 + h * i;
    r[i] = std::exp(sol.t[i]);
    fr[i] = prob.f(r[i]);
    if (!std::isfinite(fr[i])) throw std::domain_error("radial density not finite");
    // area element r dr = r^2 dt
    mass[i] = c0(r[i]) * r[i] * r[i];
    emass[i] = std::exp(fr[i]) * mass[i];
  }
  double total = cumulative(mass, h).back();
  double etotal = cumulative(emass, h).back();
  sol.lambda = total / etotal;

  // F(t) = r u'(r);  dF/dt = r^2 (lambda e^f - 1) c0, F(-inf) = 0.
  std::vector<double> dF(n);
  for (int i = 0; i < n; ++i) dF[i] = (sol.lambda * std::exp(fr[i]) - 1.0) * mass[i];
  std::vector<double> F = cumulative(dF, h);
  // du/dt = r u' = F.
  sol.u = cumulative(F, h);

  // Gauge: eta0-weighted mean of u vanishes.
  std::vector<double> num(n);
  for (int i = 0; i < n; ++i) num[i] = sol.u[i] * mass[i];
  double shift = cumulative(num, h).back() / total;
  for (int i = 0; i < n; ++i) sol.u[i] -= shift;

  // Defect of dF/dt against a central difference of F, interior nodes.
  double sup = 0.0;
  for (int i = 2; i + 2 < n; ++i) {
    double d = (F[i - 2] - 8.0 * F[i - 1] + 8.0 * F[i + 1] - F[i + 2]) / (12.0 * h);
    sup = std::max(sup, std::abs(d - dF[i]));
  }
  sol.residual = sup;
  return sol;
}

double RadialSolution::eval(double r) const {
  double tq = std::log(std::max(r, std::exp(t.front())));
  tq = std::min(tq, t.back());
  const int n = static_cast<int>(t.size());
  const double h = (t.back() - t.front()) / (n - 1);
  int lo = static_cast<int>(std::floor((tq - t.front()) / h)) - 2;
  lo = std::max(0, std::min(lo, n - 6));
  // Quintic Lagrange in t.
  double acc = 0.0;
  for (int k = 0; k < 6; ++k) {
    double l = 1.0;
    for (int m = 0; m < 6; ++m)
      if (m != k) l *= (tq - t[lo + m]) / (t[lo + k] - t[lo + m]);
    acc += l * u[lo + k];
  }
  return acc;
}

void RadialSolution::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "ORACLE1 %zu %.17g", t.size(), lambda);
  out << buf << "\n";
  for (size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", std::exp(t[i]), u[i]);
    out << buf << "\n";
  }
  if (!out) throw std::runtime_error("write failure on " + path);
}

RadialTable load_radial_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string magic;
  size_t rows = 0;
  RadialTable tab;
  in >> magic >> rows >> tab.lambda;
  if (magic != "ORACLE1") throw std::runtime_error("unknown oracle file magic '" + magic + "'");
  tab.r.resize(rows);
  tab.u.resize(rows);
  for (size_t i = 0; i < rows; ++i)
    if (!(in >> tab.r[i] >> tab.u[i])) throw std::runtime_error("truncated oracle file " + path);
  return tab;
}

}  // namespace lck
