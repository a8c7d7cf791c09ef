#pragma once

// Closed-form chart expressions over the coordinate w = x + iy.
//
// Grammar:  expr := term (('+'|'-') term)*
//           term := unary (('*'|'/') unary)*
//           unary := '-' unary | power
//           power := atom ('^' integer)?
//           atom := number | name | name '(' expr ')' | '(' expr ')'
// Names: x, y, absw2, h1, re_w<k>, im_w<k> (k = 1..6); functions log, exp.
// The named primitives are expanded into rational ASTs at parse time, so
// evaluation and symbolic differentiation only ever see core node kinds.

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace lck {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum Kind { Const, VarX, VarY, Add, Sub, Mul, Div, Neg, Log, Exp, PowInt } kind;
  double cval = 0.0;  // Const
  int ipow = 0;       // PowInt exponent
  ExprPtr a, b;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExprPtr parse_expr(const std::string& text);

ExprPtr expr_const(double v);
ExprPtr expr_var_x();
ExprPtr expr_var_y();
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_div(ExprPtr a, ExprPtr b);
ExprPtr expr_neg(ExprPtr a);
ExprPtr expr_log(ExprPtr a);
ExprPtr expr_exp(ExprPtr a);
ExprPtr expr_pow(ExprPtr a, int k);

// d/dx or d/dy, as a new AST (no simplification beyond constant folding).
ExprPtr expr_diff(const ExprPtr& e, bool wrt_y);

// Exact chart Laplacian d2/dx2 + d2/dy2 as an AST.
ExprPtr expr_laplacian(const ExprPtr& e);

// T is double or Jet (anything with +,-,*,/ and exp/log overloads).
template <class T>
T expr_eval(const Expr& e, const T& x, const T& y) {
  switch (e.kind) {
    case Expr::Const: return T(x * 0.0 + e.cval);
    case Expr::VarX: return x;
    case Expr::VarY: return y;
    case Expr::Add: return expr_eval(*e.a, x, y) + expr_eval(*e.b, x, y);
    case Expr::Sub: return expr_eval(*e.a, x, y) - expr_eval(*e.b, x, y);
    case Expr::Mul: return expr_eval(*e.a, x, y) * expr_eval(*e.b, x, y);
    case Expr::Div: return expr_eval(*e.a, x, y) / expr_eval(*e.b, x, y);
    case Expr::Neg: return -expr_eval(*e.a, x, y);
    case Expr::Log: {
      using std::log;
      return log(expr_eval(*e.a, x, y));
    }
    case Expr::Exp: {
      using std::exp;
      return exp(expr_eval(*e.a, x, y));
    }
    case Expr::PowInt: {
      T base = expr_eval(*e.a, x, y);
      int k = e.ipow;
      bool inv = k < 0;
      if (inv) k = -k;
      T r = T(x * 0.0 + 1.0);
      for (int i = 0; i < k; ++i) r = r * base;
      if (inv) r = T(x * 0.0 + 1.0) / r;
      return r;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

inline double expr_eval(const Expr& e, double x, double y) {
  return expr_eval<double>(e, x, y);
}

}  // namespace lck
