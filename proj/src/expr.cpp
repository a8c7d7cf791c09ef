#include "lck/expr.hpp"

#include <cctype>
#include <cmath>

namespace lck {

namespace {

ExprPtr make(Expr::Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

bool is_const(const ExprPtr& e, double v) { return e->kind == Expr::Const && e->cval == v; }

}  // namespace

ExprPtr expr_const(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Const;
  e->cval = v;
  return e;
}

ExprPtr expr_var_x() { return make(Expr::VarX); }
ExprPtr expr_var_y() { return make(Expr::VarY); }

ExprPtr expr_add(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->kind == Expr::Const && b->kind == Expr::Const) return expr_const(a->cval + b->cval);
  return make(Expr::Add, std::move(a), std::move(b));
}

ExprPtr expr_sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, 0.0)) return a;
  if (a->kind == Expr::Const && b->kind == Expr::Const) return expr_const(a->cval - b->cval);
  if (is_const(a, 0.0)) return make(Expr::Neg, std::move(b));
  return make(Expr::Sub, std::move(a), std::move(b));
}

ExprPtr expr_mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return expr_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->kind == Expr::Const && b->kind == Expr::Const) return expr_const(a->cval * b->cval);
  return make(Expr::Mul, std::move(a), std::move(b));
}

ExprPtr expr_div(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return expr_const(0.0);
  if (is_const(b, 1.0)) return a;
  return make(Expr::Div, std::move(a), std::move(b));
}

ExprPtr expr_neg(ExprPtr a) {
  if (a->kind == Expr::Const) return expr_const(-a->cval);
  return make(Expr::Neg, std::move(a));
}

ExprPtr expr_log(ExprPtr a) { return make(Expr::Log, std::move(a)); }
ExprPtr expr_exp(ExprPtr a) { return make(Expr::Exp, std::move(a)); }

ExprPtr expr_pow(ExprPtr a, int k) {
  if (k == 0) return expr_const(1.0);
  if (k == 1) return a;
  auto e = std::make_shared<Expr>();
  e->kind = Expr::PowInt;
  e->ipow = k;
  e->a = std::move(a);
  return e;
}

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

ExprPtr absw2_ast() {
  return expr_add(expr_pow(expr_var_x(), 2), expr_pow(expr_var_y(), 2));
}

// Re(w^k) or Im(w^k), scaled by (1+|w|^2)^{-k}.
ExprPtr harmonic_ast(int k, bool imag) {
  ExprPtr num = expr_const(0.0);
  for (int j = imag ? 1 : 0; j <= k; j += 2) {
    int quarter = (imag ? (j - 1) / 2 : j / 2) % 2;
    double coef = binom(k, j) * (quarter ? -1.0 : 1.0);
    num = expr_add(num, expr_mul(expr_const(coef),
                                 expr_mul(expr_pow(expr_var_x(), k - j), expr_pow(expr_var_y(), j))));
  }
  return expr_div(num, expr_pow(expr_add(expr_const(1.0), absw2_ast()), k));
}

ExprPtr h1_ast() {
  return expr_div(expr_sub(expr_const(1.0), absw2_ast()), expr_add(expr_const(1.0), absw2_ast()));
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing characters at position " + std::to_string(pos_));
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+')) e = expr_add(e, term());
      else if (eat('-')) e = expr_sub(e, term());
      else return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (eat('*')) e = expr_mul(e, unary());
      else if (eat('/')) e = expr_div(e, unary());
      else return e;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return expr_neg(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr e = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip_ws();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) throw ParseError("expected integer exponent");
      int k = std::stoi(s_.substr(start, pos_ - start));
      e = expr_pow(e, neg ? -k : k);
    }
    return e;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) throw ParseError("missing ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    throw ParseError(std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    size_t end = pos_;
    while (end < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' || s_[end] == 'e' ||
            s_[end] == 'E' ||
            ((s_[end] == '+' || s_[end] == '-') && (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    double v;
    try {
      v = std::stod(s_.substr(pos_, end - pos_));
    } catch (const std::exception&) {
      throw ParseError("bad number at position " + std::to_string(pos_));
    }
    pos_ = end;
    return expr_const(v);
  }

  ExprPtr name() {
    size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
      ++end;
    std::string id = s_.substr(pos_, end - pos_);
    pos_ = end;
    if (id == "x") return expr_var_x();
    if (id == "y") return expr_var_y();
    if (id == "absw2") return absw2_ast();
    if (id == "h1") return h1_ast();
    if (id.size() == 5 && (id.rfind("re_w", 0) == 0 || id.rfind("im_w", 0) == 0) &&
        std::isdigit(static_cast<unsigned char>(id[4]))) {
      int k = id[4] - '0';
      if (k < 1 || k > 6) throw ParseError("harmonic index out of range in " + id);
      return harmonic_ast(k, id[0] == 'i');
    }
    if (id == "log" || id == "exp") {
      if (!eat('(')) throw ParseError(id + " requires parentheses");
      ExprPtr arg = expr();
      if (!eat(')')) throw ParseError("missing ')' after " + id);
      return id == "log" ? expr_log(arg) : expr_exp(arg);
    }
    throw ParseError("unknown name '" + id + "'");
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

ExprPtr expr_diff(const ExprPtr& e, bool wrt_y) {
  switch (e->kind) {
    case Expr::Const: return expr_const(0.0);
    case Expr::VarX: return expr_const(wrt_y ? 0.0 : 1.0);
    case Expr::VarY: return expr_const(wrt_y ? 1.0 : 0.0);
    case Expr::Add: return expr_add(expr_diff(e->a, wrt_y), expr_diff(e->b, wrt_y));
    case Expr::Sub: return expr_sub(expr_diff(e->a, wrt_y), expr_diff(e->b, wrt_y));
    case Expr::Mul:
      return expr_add(expr_mul(expr_diff(e->a, wrt_y), e->b), expr_mul(e->a, expr_diff(e->b, wrt_y)));
    case Expr::Div:
      return expr_div(expr_sub(expr_mul(expr_diff(e->a, wrt_y), e->b),
                               expr_mul(e->a, expr_diff(e->b, wrt_y))),
                      expr_pow(e->b, 2));
    case Expr::Neg: return expr_neg(expr_diff(e->a, wrt_y));
    case Expr::Log: return expr_div(expr_diff(e->a, wrt_y), e->a);
    case Expr::Exp: return expr_mul(expr_exp(e->a), expr_diff(e->a, wrt_y));
    case Expr::PowInt:
      return expr_mul(expr_const(e->ipow),
                      expr_mul(expr_pow(e->a, e->ipow - 1), expr_diff(e->a, wrt_y)));
  }
  throw std::logic_error("unreachable expression kind");
}

ExprPtr expr_laplacian(const ExprPtr& e) {
  return expr_add(expr_diff(expr_diff(e, false), false), expr_diff(expr_diff(e, true), true));
}

}  // namespace lck
