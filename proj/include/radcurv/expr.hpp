#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include "radcurv/errors.hpp"

namespace radcurv {

// closed expression grammar over one variable t:
//   atoms      numbers, t, pi, e
//   unary      -x, sin cos sinh cosh tanh exp log sqrt abs sign
//   binary     + - * / ^ (right-assoc), min(a,b), max(a,b)
// `sign` exists so |u|' = sign(u)*u' stays inside the grammar; eval of
// sign(0) (and of min/max derivatives at a kink) raises out_of_domain.

enum class UnaryOp { neg, sin, cos, sinh, cosh, tanh, exp, log, sqrt, abs, sign };
enum class BinaryOp { add, sub, mul, div, pow, min, max };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Tag { number, variable, pi, euler, unary, binary };
  Tag tag;
  double value = 0.0;  // Tag::number
  UnaryOp uop = UnaryOp::neg;
  BinaryOp bop = BinaryOp::add;
  ExprPtr a, b;
};

// canonicalizing constructors (used by parser, differentiate and tests, so
// generated trees stay inside the parser's image)
ExprPtr make_number(double v);
ExprPtr make_variable();
ExprPtr make_pi();
ExprPtr make_euler();
ExprPtr make_unary(UnaryOp op, ExprPtr x);
ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b);

// parse throws SyntaxError (bad token / structure, with byte offset) or
// Error{unknown_identifier}
ExprPtr parse_expr(std::string_view src);

// minimal-parentheses form; parse_expr(print_expr(x)) == x structurally
std::string print_expr(const ExprPtr& x);

bool expr_equal(const ExprPtr& x, const ExprPtr& y);

// exact symbolic d/dt
ExprPtr differentiate(const ExprPtr& x);

// throws Error{out_of_domain} on log/sqrt/division/pow domain violations,
// sign(0), or any non-finite intermediate
double eval_expr(const ExprPtr& x, double t);

// smooth radial profile on [0, end] (end = +inf when unbounded), carrying
// first and second derivatives; either symbolic (from an AST, derivatives
// taken symbolically) or native callables (builtin families)
class RadialFunction {
public:
  RadialFunction() = default;  // unset; any evaluation reports config_error

  static RadialFunction from_source(std::string_view src,
                                    double end = std::numeric_limits<double>::infinity());
  static RadialFunction from_ast(ExprPtr ast,
                                 double end = std::numeric_limits<double>::infinity());
  static RadialFunction from_callables(std::string label,
                                       std::function<double(double)> v,
                                       std::function<double(double)> d1,
                                       std::function<double(double)> d2,
                                       double end = std::numeric_limits<double>::infinity());
  static RadialFunction constant(double c);

  double value(double t) const { check(t); return v_(t); }
  double d1(double t) const { check(t); return d1_(t); }
  double d2(double t) const { check(t); return d2_(t); }

  double domain_end() const { return end_; }
  bool bounded() const { return std::isfinite(end_); }
  // printable source (expression text or builtin label)
  const std::string& source() const { return src_; }
  // symbolic ast when built from one, nullptr for native builtins
  const ExprPtr& ast() const { return ast_; }

private:
  void check(double t) const;

  std::string src_;
  ExprPtr ast_;
  std::function<double(double)> v_, d1_, d2_;
  double end_ = std::numeric_limits<double>::infinity();
};

}  // namespace radcurv
