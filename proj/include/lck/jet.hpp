#pragma once

// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet carries the Taylor coefficients of a smooth function at a point, up
// to a fixed total degree p.  Arithmetic on jets propagates derivatives
// exactly (to machine precision), which is what the pointwise tensor checks
// need: nested finite differences of 3rd/4th derivatives lose too many digits
// in double precision.

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace lck {

class JetContext;
using JetContextPtr = std::shared_ptr<const JetContext>;

// Shared per-(dimension, order) tables: multi-index enumeration, index
// lookup, and the sparse multiplication table.
class JetContext : public std::enable_shared_from_this<JetContext> {
public:
  static constexpr int kMaxDim = 8;
  static constexpr int kMaxOrder = 6;

  static JetContextPtr get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(midx_.size()); }

  const std::array<std::uint8_t, kMaxDim>& multi_index(int i) const { return midx_[i]; }
  int degree(int i) const { return degree_[i]; }

  // Position of a multi-index, or -1 when its degree exceeds the order.
  int find(const std::array<std::uint8_t, kMaxDim>& a) const;

  struct ProductTerm {
    int a, b, target;
  };
  const std::vector<ProductTerm>& product_table() const { return prod_; }

private:
  JetContext(int dim, int order);

  int dim_, order_;
  std::vector<std::array<std::uint8_t, kMaxDim>> midx_;
  std::vector<int> degree_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<ProductTerm> prod_;

  static std::uint64_t pack(const std::array<std::uint8_t, kMaxDim>& a);
};

class Jet {
public:
  Jet() = default;
  Jet(JetContextPtr ctx, double value) : ctx_(std::move(ctx)) {
    c_ = Eigen::VectorXd::Zero(ctx_->size());
    c_[0] = value;
  }

  // The jet of the i-th coordinate function centered at `value`.
  static Jet variable(const JetContextPtr& ctx, int i, double value);
  static Jet constant(const JetContextPtr& ctx, double value) { return Jet(ctx, value); }

  const JetContextPtr& ctx() const { return ctx_; }
  double value() const { return c_[0]; }
  const Eigen::VectorXd& coeffs() const { return c_; }
  Eigen::VectorXd& coeffs() { return c_; }

  // Partial derivative value d^|alpha| f / dx^alpha (coefficient times alpha!).
  double deriv(std::initializer_list<int> vars) const;

  // The jet of df/dx_i, one order lower.
  Jet derivative(int i) const;
  // Copy truncated to a lower order.
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s) { c_ *= s; return *this; }

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, double s) { a += s; return a; }
  friend Jet operator+(double s, Jet a) { a += s; return a; }
  friend Jet operator-(Jet a, double s) { a -= s; return a; }
  friend Jet operator-(double s, const Jet& a) { Jet r = -a; r += s; return r; }
  friend Jet operator*(Jet a, double s) { a *= s; return a; }
  friend Jet operator*(double s, Jet a) { a *= s; return a; }
  friend Jet operator/(Jet a, double s) { a *= 1.0 / s; return a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(double s, const Jet& b);

  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet pow(const Jet& a, int k);

  // Evaluate the truncated series c_0 + c_1*(a-a0) + ... by Horner.
  friend Jet apply_series(const Jet& a, const std::vector<double>& series);

private:
  JetContextPtr ctx_;
  Eigen::VectorXd c_;
};

inline double scalar_value(double x) { return x; }
inline double scalar_value(const Jet& x) { return x.value(); }

}  // namespace lck
