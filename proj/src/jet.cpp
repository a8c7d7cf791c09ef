#include "lck/jet.hpp"

#include <algorithm>
#include <map>

namespace lck {

namespace {

void enumerate_rec(int dim, int order, int var, std::array<std::uint8_t, JetContext::kMaxDim>& cur,
                   int used, std::vector<std::array<std::uint8_t, JetContext::kMaxDim>>& out) {
  if (var == dim) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k + used <= order; ++k) {
    cur[var] = static_cast<std::uint8_t>(k);
    enumerate_rec(dim, order, var + 1, cur, used + k, out);
  }
  cur[var] = 0;
}

}  // namespace

std::uint64_t JetContext::pack(const std::array<std::uint8_t, kMaxDim>& a) {
  std::uint64_t key = 0;
  for (int i = 0; i < kMaxDim; ++i) key = key * 16 + a[i];
  return key;
}

JetContext::JetContext(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > kMaxDim || order < 0 || order > kMaxOrder)
    throw std::invalid_argument("jet context out of supported range");

  std::array<std::uint8_t, kMaxDim> cur{};
  enumerate_rec(dim, order, 0, cur, 0, midx_);
  // Graded ordering (degree, then lex) so index 0 is the constant term.
  std::sort(midx_.begin(), midx_.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int i = 0; i < kMaxDim; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da < db;
    return a < b;
  });
  degree_.resize(midx_.size());
  for (size_t i = 0; i < midx_.size(); ++i) {
    int d = 0;
    for (int v = 0; v < dim_; ++v) d += midx_[i][v];
    degree_[i] = d;
    lookup_.emplace(pack(midx_[i]), static_cast<int>(i));
  }

  for (size_t i = 0; i < midx_.size(); ++i)
    for (size_t j = 0; j < midx_.size(); ++j) {
      if (degree_[i] + degree_[j] > order_) continue;
      std::array<std::uint8_t, kMaxDim> sum{};
      for (int v = 0; v < dim_; ++v) sum[v] = static_cast<std::uint8_t>(midx_[i][v] + midx_[j][v]);
      prod_.push_back({static_cast<int>(i), static_cast<int>(j), lookup_.at(pack(sum))});
    }
}

int JetContext::find(const std::array<std::uint8_t, kMaxDim>& a) const {
  auto it = lookup_.find(pack(a));
  return it == lookup_.end() ? -1 : it->second;
}

JetContextPtr JetContext::get(int dim, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, JetContextPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  JetContextPtr ctx(new JetContext(dim, order));
  cache.emplace(key, ctx);
  return ctx;
}

Jet Jet::variable(const JetContextPtr& ctx, int i, double value) {
  Jet j(ctx, value);
  if (ctx->order() >= 1) {
    std::array<std::uint8_t, JetContext::kMaxDim> e{};
    e[i] = 1;
    j.c_[ctx->find(e)] = 1.0;
  }
  return j;
}

double Jet::deriv(std::initializer_list<int> vars) const {
  std::array<std::uint8_t, JetContext::kMaxDim> a{};
  for (int v : vars) a[v]++;
  int idx = ctx_->find(a);
  if (idx < 0) throw std::out_of_range("derivative order exceeds jet order");
  double fact = 1.0;
  for (int v = 0; v < ctx_->dim(); ++v)
    for (int k = 2; k <= a[v]; ++k) fact *= k;
  return c_[idx] * fact;
}

Jet Jet::derivative(int i) const {
  auto lower = JetContext::get(ctx_->dim(), ctx_->order() - 1);
  Jet r(lower, 0.0);
  for (int t = 0; t < lower->size(); ++t) {
    auto a = lower->multi_index(t);
    a[i]++;
    int src = ctx_->find(a);
    r.c_[t] = c_[src] * a[i];
  }
  return r;
}

Jet Jet::truncated(int order) const {
  auto lower = JetContext::get(ctx_->dim(), order);
  Jet r(lower, 0.0);
  for (int t = 0; t < lower->size(); ++t) r.c_[t] = c_[ctx_->find(lower->multi_index(t))];
  return r;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r.c_ = -r.c_;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  if (ctx_ != o.ctx_) throw std::invalid_argument("jet context mismatch");
  c_ += o.c_;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (ctx_ != o.ctx_) throw std::invalid_argument("jet context mismatch");
  c_ -= o.c_;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.ctx_ != b.ctx_) throw std::invalid_argument("jet context mismatch");
  Jet r(a.ctx_, 0.0);
  const double* pa = a.c_.data();
  const double* pb = b.c_.data();
  double* pr = r.c_.data();
  for (const auto& t : a.ctx_->product_table()) pr[t.target] += pa[t.a] * pb[t.b];
  return r;
}

Jet apply_series(const Jet& a, const std::vector<double>& series) {
  Jet hat = a;
  hat -= a.value();
  Jet r = Jet::constant(a.ctx(), series.back());
  for (int k = static_cast<int>(series.size()) - 2; k >= 0; --k) {
    r = r * hat;
    r += series[k];
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * (1.0 / b); }

Jet operator/(double s, const Jet& b) {
  double b0 = b.value();
  if (b0 == 0.0) throw std::domain_error("jet division by zero value");
  std::vector<double> series(b.ctx()->order() + 1);
  double p = s / b0;
  for (size_t k = 0; k < series.size(); ++k) {
    series[k] = p;
    p = -p / b0;
  }
  return apply_series(b, series);
}

Jet exp(const Jet& a) {
  double e0 = std::exp(a.value());
  std::vector<double> series(a.ctx()->order() + 1);
  double fact = 1.0;
  for (size_t k = 0; k < series.size(); ++k) {
    if (k > 0) fact *= k;
    series[k] = e0 / fact;
  }
  return apply_series(a, series);
}

Jet log(const Jet& a) {
  double a0 = a.value();
  if (a0 <= 0.0) throw std::domain_error("jet log of non-positive value");
  std::vector<double> series(a.ctx()->order() + 1);
  series[0] = std::log(a0);
  double p = 1.0 / a0;
  for (size_t k = 1; k < series.size(); ++k) {
    series[k] = (k % 2 ? p : -p) / static_cast<double>(k);
    p /= a0;
  }
  return apply_series(a, series);
}

Jet sqrt(const Jet& a) {
  double a0 = a.value();
  if (a0 <= 0.0) throw std::domain_error("jet sqrt of non-positive value");
  // Binomial series sqrt(a0 + t) = sqrt(a0) * sum_k C(1/2,k) (t/a0)^k.
  std::vector<double> series(a.ctx()->order() + 1);
  double scale = std::sqrt(a0);
  double coef = 1.0;
  for (size_t k = 0; k < series.size(); ++k) {
    series[k] = scale * coef;
    coef *= (0.5 - static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
    scale /= a0;
  }
  return apply_series(a, series);
}

Jet pow(const Jet& a, int k) {
  if (k < 0) return 1.0 / pow(a, -k);
  Jet r = Jet::constant(a.ctx(), 1.0);
  Jet base = a;
  int e = k;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

}  // namespace lck
