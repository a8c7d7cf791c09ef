#pragma once

// Transverse Monge-Ampere machinery on the leaf space: the Calabi problem,
// the Aubin epsilon-family, the D-operator, and the uniqueness experiment.
//
// Discretely, the two charts are glued into one composite linear system:
// points inside the PDE radius get stencil rows, points in the outer collar
// get interpolation-matching rows against the other chart.  The composite
// operator has the constants as kernel and a one-dimensional cokernel; solves
// go through a bordered system with the computed left-null vector as slack
// column, and the compatibility constant (lambda) comes from quadrature, not
// from the linear algebra.

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lck/chart_calculus.hpp"
#include "lck/grid.hpp"
#include "lck/hermitian.hpp"
#include "lck/report.hpp"

namespace lck {

struct CalabiProblem {
  ScalarField f;
  Form11Field eta0;

  void validate() const;
};

struct SolverConfig {
  double tol_newton = 1e-10;
  double tol_linear = 1e-12;
  int max_iter = 50;
  double delta_pos = 1e-8;
  int max_halvings = 20;
  std::uint64_t seed = 0;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double residual_sup = 0.0;
  double lambda = 0.0;  // lambda for Calabi, the consistency constant for Aubin
  double gauge = 0.0;   // integral of u against eta0 after normalization
  double wall_ms = 0.0;
  std::vector<double> continuation;  // epsilon stages actually run
};

// Glued two-chart degrees of freedom and the composite operator.
class CompositeGrid {
 public:
  explicit CompositeGrid(const GridSpec& g);

  struct Dof {
    int chart, i, j;
  };

  const GridSpec& grid() const { return g_; }
  int size() const { return static_cast<int>(dofs_.size()); }
  const std::vector<Dof>& dofs() const { return dofs_; }
  bool is_pde(int d) const { return is_pde_[d] != 0; }
  int pde_count() const { return pde_count_; }
  double r_pde() const { return r_pde_; }

  // PDE rows apply the chart Laplacian; collar rows apply (id - interp).
  const Eigen::SparseMatrix<double>& op() const { return lap_; }
  const Eigen::VectorXd& left_null() const { return ell_; }

  Eigen::VectorXd restrict_field(const ScalarField& u) const;
  // Scatter dof values back to a full two-chart field; points outside the
  // dof collar are filled through the chart transition.
  ScalarField prolong(const Eigen::VectorXd& v) const;

  // Solve [[A, slack], [1^T, 0]] [u; mu] = [rhs; 0].
  Eigen::VectorXd bordered_solve(const Eigen::SparseMatrix<double>& a,
                                 const Eigen::VectorXd& slack, const Eigen::VectorXd& rhs,
                                 double* mu = nullptr) const;

 private:
  GridSpec g_;
  double r_pde_ = 1.3, r_keep_ = 0.0;
  std::vector<Dof> dofs_;
  std::vector<char> is_pde_;
  int pde_count_ = 0;
  std::array<Eigen::ArrayXXi, 2> index_;
  Eigen::SparseMatrix<double> lap_;
  Eigen::VectorXd ell_;
};

double normalization_constant(const ScalarField& f, const Form11Field& eta0);

struct ResidualField {
  Form11Field field;
  double sup = 0.0;      // over the chart regions |w| <= 1.1 that tile the sphere
  bool admissible = true;  // eta0 + dd^c u stayed above the positivity floor
};
ResidualField calabi_residual(const ScalarField& u, const CalabiProblem& prob,
                              double lambda, double delta_pos = 0.0);

std::pair<ScalarField, SolveReport> solve_calabi(const CalabiProblem& prob,
                                                 const SolverConfig& cfg,
                                                 const ScalarField& init);

std::pair<ScalarField, SolveReport> solve_aubin(double eps, const CalabiProblem& prob,
                                                const SolverConfig& cfg, const ScalarField& init);

// m = 1 grid D-operator: D(f) = dd^c f / alpha.
ScalarField d_operator(const ScalarField& f, const Form11Field& alpha);

// Pointwise D for m in {2, 3}: tr(alpha^{-1} ddcf) / m, where ddcf is the
// dd^c-matrix of f (twice the del-delbar Hessian under our convention).
double d_operator_point(const HermitianValue& ddcf, const HermitianValue& alpha, int m);

// rho = sum_{k+l=n-2} eta1^k ^ eta2^l: the scalar 1 for n = 2 (empty sum),
// eta1 + eta2 in the dual representation for n = 3.
HermitianValue rho_mix(const HermitianValue& eta1, const HermitianValue& eta2, int n);

enum class UniquenessVerdict { Unique, Distinct, Inapplicable };
struct UniquenessResult {
  UniquenessVerdict verdict = UniquenessVerdict::Inapplicable;
  double psi_sup = 0.0;    // sup |psi - mean(psi)|
  double d_psi_sup = 0.0;  // sup |D(u1 - u2)|
  double residual1 = 0.0, residual2 = 0.0;
};
UniquenessResult uniqueness_check(const ScalarField& u1, const ScalarField& u2,
                                  const CalabiProblem& prob, double residual_tol = 1e-8,
                                  double unique_tol = 1e-8);

struct KernelSummary {
  double smallest = 0.0, second_smallest = 0.0;
  double constant_cosine = 0.0;  // alignment of the kernel vector with constants
  int dofs = 0;
};
KernelSummary kernel_check(const Form11Field& alpha);

// Discrete Aubin residual on composite dofs (c0 = eta0 at the dofs):
// log((c0 - L psi)/c0) - eps psi - const on PDE rows, the collar-matching
// rows unchanged; const = mean(log term) - eps mean(psi) over PDE rows.
// Throws if the argument of the log drops below delta_pos.
Eigen::VectorXd aubin_residual(const CompositeGrid& cg, const Eigen::VectorXd& c0, double eps,
                               const Eigen::VectorXd& psi, double delta_pos = 0.0);
// Exact directional derivative of aubin_residual in direction delta.
Eigen::VectorXd aubin_jacobian_apply(const CompositeGrid& cg, const Eigen::VectorXd& c0,
                                     double eps, const Eigen::VectorXd& psi,
                                     const Eigen::VectorXd& delta);

// Deterministic band-limited random fields for solver initialization.
ScalarField random_bandlimited(const GridSpec& g, std::uint64_t seed, double amplitude);

}  // namespace lck
