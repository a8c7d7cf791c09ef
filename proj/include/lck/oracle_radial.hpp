#pragma once

// Axisymmetric 1D reduction of the m = 1 transverse Calabi problem.
//
// With u = u(r), r = |w|, the equation (eta0 + dd^c u) = lambda e^f eta0
// becomes (r u')' = r (lambda e^f - 1) c0(r), c0(r) = 4/(1+r^2)^2.  It is
// solved by two nested quadratures on a log-radial mesh — no stencils, no
// Newton iteration — so it is an independent reference for the grid solver.
// Single-threaded by design.

#include <functional>
#include <string>
#include <vector>

namespace lck {

struct RadialProblem {
  std::function<double(double)> f;  // log-density as a function of r
  int nodes = 4096;
  double r_min = 1e-6, r_max = 1e6;
};

struct RadialSolution {
  std::vector<double> t;  // log r mesh
  std::vector<double> u;
  double lambda = 0.0;
  double residual = 0.0;  // sup-norm defect of the 1D equation on the mesh

  // Interpolated u(r), gauge-normalized so the eta0-weighted mean vanishes.
  double eval(double r) const;

  void save(const std::string& path) const;
};

RadialSolution solve_radial(const RadialProblem& prob);

// Frozen-table helpers (ORACLE1 format: header, then "r u" rows).
struct RadialTable {
  std::vector<double> r, u;
  double lambda = 0.0;
};
RadialTable load_radial_table(const std::string& path);

}  // namespace lck
