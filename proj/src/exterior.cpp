#include "lck/exterior.hpp"

#include <bit>
#include <stdexcept>

namespace lck {

namespace {

// Parity of the permutation that merges two ascending index sets (masks must
// be disjoint): count pairs (a in A, b in B) with a > b.
int merge_swaps(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned bit = b; bit; bit &= bit - 1) {
    unsigned idx = std::countr_zero(bit);
    swaps += std::popcount(a >> (idx + 1));
  }
  return swaps;
}

}  // namespace

ExteriorForm ExteriorForm::scalar(int m, Coeff c) {
  ExteriorForm f(m);
  f.terms_[{0u, 0u}] = c;
  return f;
}

ExteriorForm ExteriorForm::one_one(const HermitianValue& a) {
  ExteriorForm f(a.m);
  for (int i = 0; i < a.m; ++i)
    for (int j = 0; j < a.m; ++j) {
      Coeff c = a.mat(i, j);
      if (c != 0.0) f.terms_[{1u << i, 1u << j}] += c;
    }
  return f;
}

ExteriorForm ExteriorForm::holomorphic_top(int m) {
  ExteriorForm f(m);
  f.terms_[{(1u << m) - 1, 0u}] = 1.0;
  return f;
}

ExteriorForm ExteriorForm::antiholomorphic_top(int m) {
  ExteriorForm f(m);
  f.terms_[{0u, (1u << m) - 1}] = 1.0;
  return f;
}

ExteriorForm ExteriorForm::wedge(const ExteriorForm& o) const {
  if (m_ != o.m_) throw std::invalid_argument("exterior dimension mismatch");
  ExteriorForm out(m_);
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      auto [za, zba] = ka;
      auto [zb, zbb] = kb;
      if ((za & zb) || (zba & zbb)) continue;
      // Move the incoming dz block past the resident dzbar block, then merge
      // the two ascending blocks of each type.
      int swaps = std::popcount(zba) * std::popcount(zb);
      swaps += merge_swaps(za, zb) + merge_swaps(zba, zbb);
      Coeff c = ca * cb * (swaps % 2 ? -1.0 : 1.0);
      out.terms_[{za | zb, zba | zbb}] += c;
    }
  return out;
}

ExteriorForm ExteriorForm::operator+(const ExteriorForm& o) const {
  if (m_ != o.m_) throw std::invalid_argument("exterior dimension mismatch");
  ExteriorForm out = *this;
  for (const auto& [k, c] : o.terms_) out.terms_[k] += c;
  return out;
}

ExteriorForm ExteriorForm::operator*(Coeff s) const {
  ExteriorForm out = *this;
  for (auto& [k, c] : out.terms_) c *= s;
  return out;
}

ExteriorForm::Coeff ExteriorForm::top_coefficient() const {
  unsigned full = (1u << m_) - 1;
  auto it = terms_.find({full, full});
  Coeff blocked = it == terms_.end() ? Coeff(0.0) : it->second;
  // Interleaved dz_1 dzbar_1 dz_2 dzbar_2 ... differs from the canonical
  // blocked order by m(m-1)/2 transpositions.
  int swaps = m_ * (m_ - 1) / 2;
  return blocked * (swaps % 2 ? -1.0 : 1.0);
}

ExteriorForm::Coeff ExteriorForm::volume_coefficient() const {
  // dz_a ^ dzbar_a = -2i dx_a ^ dy_a.
  Coeff factor = 1.0;
  for (int a = 0; a < m_; ++a) factor *= Coeff(0.0, -2.0);
  return top_coefficient() * factor;
}

std::complex<double> exterior_expand(const std::vector<HermitianValue>& values,
                                     const std::vector<int>& exponents) {
  if (values.empty() || values.size() != exponents.size())
    throw std::invalid_argument("values/exponents size mismatch");
  int m = values[0].m;
  int total = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].m != m) throw std::invalid_argument("exterior dimension mismatch");
    total += exponents[i];
  }
  if (total != m) throw std::invalid_argument("total degree must equal the dimension");
  ExteriorForm acc = ExteriorForm::scalar(m, 1.0);
  for (size_t i = 0; i < values.size(); ++i)
    for (int k = 0; k < exponents[i]; ++k) acc = acc.wedge(ExteriorForm::one_one(values[i]));
  return acc.top_coefficient();
}

}  // namespace lck
