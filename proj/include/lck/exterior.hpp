#pragma once

// Brute-force exterior algebra over the anticommuting basis
// {dz_1..dz_m, dzbar_1..dzbar_m}, m <= 3.  Wedge products are expanded by
// explicit summation with sign bookkeeping; no formula shortcuts.  This is
// the independent reference for the Hermitian power/root identities and the
// volume-form normalizations.

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "lck/hermitian.hpp"

namespace lck {

class ExteriorForm {
 public:
  using Coeff = std::complex<double>;
  // Monomial key: (dz index mask, dzbar index mask), factors stored in the
  // canonical order dz_{i1}^..^dz_{ik}^dzbar_{j1}^..^dzbar_{jl}, ascending.
  using Mono = std::pair<unsigned, unsigned>;

  explicit ExteriorForm(int m) : m_(m) {}

  int dim() const { return m_; }
  const std::map<Mono, Coeff>& terms() const { return terms_; }

  static ExteriorForm scalar(int m, Coeff c);
  // sum_ab a_ab dz_a ^ dzbar_b
  static ExteriorForm one_one(const HermitianValue& a);
  // dz_1 ^ ... ^ dz_m  (and its conjugate)
  static ExteriorForm holomorphic_top(int m);
  static ExteriorForm antiholomorphic_top(int m);

  ExteriorForm wedge(const ExteriorForm& o) const;
  ExteriorForm operator+(const ExteriorForm& o) const;
  ExteriorForm operator*(Coeff s) const;

  // Coefficient relative to dz_1^dzbar_1^...^dz_m^dzbar_m.
  Coeff top_coefficient() const;
  // Coefficient relative to the real volume dx_1^dy_1^...^dx_m^dy_m.
  Coeff volume_coefficient() const;

 private:
  int m_;
  std::map<Mono, Coeff> terms_;
};

// Wedge product of the listed (1,1)-values raised to the listed exponents
// (total degree must be m); returns the coefficient of the interleaved
// complex volume form dz_1^dzbar_1^...  Inputs with rational entries give
// exact results (the expansion is pure multiply-add).
std::complex<double> exterior_expand(const std::vector<HermitianValue>& values,
                                     const std::vector<int>& exponents);

}  // namespace lck
