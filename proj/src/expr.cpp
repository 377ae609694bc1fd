#include "radcurv/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <numbers>
#include <utility>

namespace radcurv {

namespace {

bool is_num(const ExprPtr& x) { return x->tag == Expr::Tag::number; }
bool is_num(const ExprPtr& x, double v) { return is_num(x) && x->value == v; }

ExprPtr raw(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr make_number(double v) {
  Expr e;
  e.tag = Expr::Tag::number;
  e.value = v;
  return raw(std::move(e));
}

ExprPtr make_variable() {
  Expr e;
  e.tag = Expr::Tag::variable;
  return raw(std::move(e));
}

ExprPtr make_pi() {
  Expr e;
  e.tag = Expr::Tag::pi;
  return raw(std::move(e));
}

ExprPtr make_euler() {
  Expr e;
  e.tag = Expr::Tag::euler;
  return raw(std::move(e));
}

ExprPtr make_unary(UnaryOp op, ExprPtr x) {
  if (op == UnaryOp::neg) {
    // fold so negative literals have one canonical spelling
    if (is_num(x)) return make_number(-x->value);
    if (x->tag == Expr::Tag::unary && x->uop == UnaryOp::neg) return x->a;
  }
  Expr e;
  e.tag = Expr::Tag::unary;
  e.uop = op;
  e.a = std::move(x);
  return raw(std::move(e));
}

ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b) {
  switch (op) {
    case BinaryOp::add:
      if (is_num(a, 0.0)) return b;
      if (is_num(b, 0.0)) return a;
      if (is_num(a) && is_num(b)) return make_number(a->value + b->value);
      break;
    case BinaryOp::sub:
      if (is_num(b, 0.0)) return a;
      if (is_num(a, 0.0)) return make_unary(UnaryOp::neg, b);
      if (is_num(a) && is_num(b)) return make_number(a->value - b->value);
      break;
    case BinaryOp::mul:
      if (is_num(a, 0.0) || is_num(b, 0.0)) return make_number(0.0);
      if (is_num(a, 1.0)) return b;
      if (is_num(b, 1.0)) return a;
      if (is_num(a) && is_num(b)) return make_number(a->value * b->value);
      break;
    case BinaryOp::div:
      if (is_num(b, 1.0)) return a;
      if (is_num(a, 0.0) && is_num(b) && b->value != 0.0) return make_number(0.0);
      break;
    case BinaryOp::pow:
      if (is_num(b, 1.0)) return a;
      if (is_num(b, 0.0)) return make_number(1.0);
      break;
    default:
      break;
  }
  Expr e;
  e.tag = Expr::Tag::binary;
  e.bop = op;
  e.a = std::move(a);
  e.b = std::move(b);
  return raw(std::move(e));
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  int depth = 0;

  [[noreturn]] void err(std::size_t at, const std::string& msg) const {
    throw SyntaxError(at, msg);
  }

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) err(pos, std::string("expected '") + c + "' " + what);
  }

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos != src.size()) err(pos, "trailing characters after expression");
    return e;
  }

  ExprPtr expr() {
    if (++depth > 4096) err(pos, "expression nested too deeply");
    ExprPtr lhs = term();
    for (;;) {
      skip_ws();
      if (pos < src.size() && src[pos] == '+') {
        ++pos;
        lhs = make_binary(BinaryOp::add, lhs, term());
      } else if (pos < src.size() && src[pos] == '-') {
        ++pos;
        lhs = make_binary(BinaryOp::sub, lhs, term());
      } else {
        break;
      }
    }
    --depth;
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      skip_ws();
      if (pos < src.size() && src[pos] == '*') {
        ++pos;
        lhs = make_binary(BinaryOp::mul, lhs, unary());
      } else if (pos < src.size() && src[pos] == '/') {
        ++pos;
        lhs = make_binary(BinaryOp::div, lhs, unary());
      } else {
        break;
      }
    }
    return lhs;
  }

  ExprPtr unary() {
    skip_ws();
    if (pos < src.size() && src[pos] == '-') {
      ++pos;
      return make_unary(UnaryOp::neg, unary());
    }
    return power();
  }

  // '^' binds tighter than unary minus and associates right
  ExprPtr power() {
    ExprPtr base = atom();
    skip_ws();
    if (pos < src.size() && src[pos] == '^') {
      ++pos;
      return make_binary(BinaryOp::pow, base, unary());
    }
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos >= src.size()) err(pos, "expected a value");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprPtr inner = expr();
      expect(')', "to close '('");
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (c >= 'a' && c <= 'z') return identifier();
    err(pos, std::string("unexpected character '") + c + "'");
  }

  ExprPtr number() {
    double v = 0.0;
    const char* first = src.data() + pos;
    const char* last = src.data() + src.size();
    auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || ptr == first) err(pos, "malformed number");
    pos += static_cast<std::size_t>(ptr - first);
    return make_number(v);
  }

  ExprPtr identifier() {
    std::size_t start = pos;
    while (pos < src.size() && src[pos] >= 'a' && src[pos] <= 'z') ++pos;
    std::string_view name = src.substr(start, pos - start);
    if (name == "t") return make_variable();
    if (name == "pi") return make_pi();
    if (name == "e") return make_euler();

    static const std::map<std::string_view, UnaryOp> unary_fns = {
        {"sin", UnaryOp::sin},   {"cos", UnaryOp::cos},   {"sinh", UnaryOp::sinh},
        {"cosh", UnaryOp::cosh}, {"tanh", UnaryOp::tanh}, {"exp", UnaryOp::exp},
        {"log", UnaryOp::log},   {"sqrt", UnaryOp::sqrt}, {"abs", UnaryOp::abs},
        {"sign", UnaryOp::sign}};
    if (auto it = unary_fns.find(name); it != unary_fns.end()) {
      expect('(', "after function name");
      ExprPtr arg = expr();
      expect(')', "to close function call");
      return make_unary(it->second, arg);
    }
    if (name == "min" || name == "max") {
      expect('(', "after function name");
      ExprPtr a = expr();
      expect(',', "between arguments");
      ExprPtr b = expr();
      expect(')', "to close function call");
      return make_binary(name == "min" ? BinaryOp::min : BinaryOp::max, a, b);
    }
    throw Error(ErrorKind::unknown_identifier,
                "unknown identifier '" + std::string(name) + "' at offset " +
                    std::to_string(start));
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view src) {
  Parser p{src};
  return p.parse();
}

// ---------------------------------------------------------------- printer

namespace {

// precedence: add/sub 1, mul/div 2, unary minus 3, pow 4, atoms 5
int precedence(const Expr& e) {
  switch (e.tag) {
    case Expr::Tag::number:
      // negative (and -0) literals print with a leading '-'
      return std::signbit(e.value) ? 3 : 5;
    case Expr::Tag::unary:
      return e.uop == UnaryOp::neg ? 3 : 5;
    case Expr::Tag::binary:
      switch (e.bop) {
        case BinaryOp::add:
        case BinaryOp::sub:
          return 1;
        case BinaryOp::mul:
        case BinaryOp::div:
          return 2;
        case BinaryOp::pow:
          return 4;
        default:
          return 5;  // min/max print as calls
      }
    default:
      return 5;
  }
}

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::neg: return "-";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::sinh: return "sinh";
    case UnaryOp::cosh: return "cosh";
    case UnaryOp::tanh: return "tanh";
    case UnaryOp::exp: return "exp";
    case UnaryOp::log: return "log";
    case UnaryOp::sqrt: return "sqrt";
    case UnaryOp::abs: return "abs";
    case UnaryOp::sign: return "sign";
  }
  return "?";
}

std::string number_to_string(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void print_rec(const ExprPtr& x, int min_prec, std::string& out) {
  int prec = precedence(*x);
  bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (x->tag) {
    case Expr::Tag::number:
      out += number_to_string(x->value);
      break;
    case Expr::Tag::variable:
      out += 't';
      break;
    case Expr::Tag::pi:
      out += "pi";
      break;
    case Expr::Tag::euler:
      out += 'e';
      break;
    case Expr::Tag::unary:
      if (x->uop == UnaryOp::neg) {
        out += '-';
        print_rec(x->a, 3, out);
      } else {
        out += unary_name(x->uop);
        out += '(';
        print_rec(x->a, 0, out);
        out += ')';
      }
      break;
    case Expr::Tag::binary:
      switch (x->bop) {
        case BinaryOp::add:
          print_rec(x->a, 1, out);
          out += '+';
          print_rec(x->b, 2, out);
          break;
        case BinaryOp::sub:
          print_rec(x->a, 1, out);
          out += '-';
          print_rec(x->b, 2, out);
          break;
        case BinaryOp::mul:
          print_rec(x->a, 2, out);
          out += '*';
          print_rec(x->b, 3, out);
          break;
        case BinaryOp::div:
          print_rec(x->a, 2, out);
          out += '/';
          print_rec(x->b, 3, out);
          break;
        case BinaryOp::pow:
          print_rec(x->a, 5, out);
          out += '^';
          print_rec(x->b, 4, out);
          break;
        case BinaryOp::min:
        case BinaryOp::max:
          out += (x->bop == BinaryOp::min) ? "min(" : "max(";
          print_rec(x->a, 0, out);
          out += ", ";
          print_rec(x->b, 0, out);
          out += ')';
          break;
      }
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

std::string print_expr(const ExprPtr& x) {
  std::string out;
  print_rec(x, 0, out);
  return out;
}

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (x.get() == y.get()) return true;
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case Expr::Tag::number: {
      // bitwise so 0.0 / -0.0 and exact literals stay distinguishable
      double a = x->value, b = y->value;
      return std::memcmp(&a, &b, sizeof a) == 0;
    }
    case Expr::Tag::variable:
    case Expr::Tag::pi:
    case Expr::Tag::euler:
      return true;
    case Expr::Tag::unary:
      return x->uop == y->uop && expr_equal(x->a, y->a);
    case Expr::Tag::binary:
      return x->bop == y->bop && expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
  }
  return false;
}

// ----------------------------------------------------------- differentiate

ExprPtr differentiate(const ExprPtr& x) {
  using U = UnaryOp;
  using B = BinaryOp;
  auto n = [](double v) { return make_number(v); };
  switch (x->tag) {
    case Expr::Tag::number:
    case Expr::Tag::pi:
    case Expr::Tag::euler:
      return n(0.0);
    case Expr::Tag::variable:
      return n(1.0);
    case Expr::Tag::unary: {
      ExprPtr u = x->a;
      ExprPtr du = differentiate(u);
      switch (x->uop) {
        case U::neg:
          return make_unary(U::neg, du);
        case U::sin:
          return make_binary(B::mul, make_unary(U::cos, u), du);
        case U::cos:
          return make_unary(U::neg, make_binary(B::mul, make_unary(U::sin, u), du));
        case U::sinh:
          return make_binary(B::mul, make_unary(U::cosh, u), du);
        case U::cosh:
          return make_binary(B::mul, make_unary(U::sinh, u), du);
        case U::tanh:
          return make_binary(
              B::mul,
              make_binary(B::sub, n(1.0),
                          make_binary(B::pow, make_unary(U::tanh, u), n(2.0))),
              du);
        case U::exp:
          return make_binary(B::mul, make_unary(U::exp, u), du);
        case U::log:
          return make_binary(B::div, du, u);
        case U::sqrt:
          return make_binary(B::div, du,
                             make_binary(B::mul, n(2.0), make_unary(U::sqrt, u)));
        case U::abs:
          return make_binary(B::mul, make_unary(U::sign, u), du);
        case U::sign:
          return n(0.0);  // flat away from the kink; eval at the kink raises
      }
      break;
    }
    case Expr::Tag::binary: {
      ExprPtr u = x->a, v = x->b;
      ExprPtr du = differentiate(u), dv = differentiate(v);
      switch (x->bop) {
        case B::add:
          return make_binary(B::add, du, dv);
        case B::sub:
          return make_binary(B::sub, du, dv);
        case B::mul:
          return make_binary(B::add, make_binary(B::mul, du, v),
                             make_binary(B::mul, u, dv));
        case B::div:
          return make_binary(
              B::div,
              make_binary(B::sub, make_binary(B::mul, du, v),
                          make_binary(B::mul, u, dv)),
              make_binary(B::pow, v, n(2.0)));
        case B::pow:
          if (is_num(v)) {
            // c * u^(c-1) * u' keeps integer powers usable for u < 0
            return make_binary(
                B::mul,
                make_binary(B::mul, n(v->value),
                            make_binary(B::pow, u, n(v->value - 1.0))),
                du);
          }
          // u^v * (v' log u + v u'/u)
          return make_binary(
              B::mul, make_binary(B::pow, u, v),
              make_binary(B::add, make_binary(B::mul, dv, make_unary(U::log, u)),
                          make_binary(B::div, make_binary(B::mul, v, du), u)));
        case B::min:
        case B::max: {
          // min = (a+b-|a-b|)/2, max = (a+b+|a-b|)/2
          ExprPtr sum = make_binary(B::add, du, dv);
          ExprPtr kink = make_binary(
              B::mul, make_unary(U::sign, make_binary(B::sub, u, v)),
              make_binary(B::sub, du, dv));
          ExprPtr combined = (x->bop == B::min) ? make_binary(B::sub, sum, kink)
                                                : make_binary(B::add, sum, kink);
          return make_binary(B::div, combined, n(2.0));
        }
      }
      break;
    }
  }
  fail(ErrorKind::bad_parameter, "differentiate: malformed tree");
}

// ---------------------------------------------------------------- eval

namespace {

[[noreturn]] void domain_err(const std::string& what) {
  throw Error(ErrorKind::out_of_domain, what);
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) domain_err(std::string(what) + " produced a non-finite value");
  return v;
}

}  // namespace

double eval_expr(const ExprPtr& x, double t) {
  switch (x->tag) {
    case Expr::Tag::number:
      return x->value;
    case Expr::Tag::variable:
      return t;
    case Expr::Tag::pi:
      return std::numbers::pi;
    case Expr::Tag::euler:
      return std::numbers::e;
    case Expr::Tag::unary: {
      double a = eval_expr(x->a, t);
      switch (x->uop) {
        case UnaryOp::neg: return -a;
        case UnaryOp::sin: return checked(std::sin(a), "sin");
        case UnaryOp::cos: return checked(std::cos(a), "cos");
        case UnaryOp::sinh: return checked(std::sinh(a), "sinh");
        case UnaryOp::cosh: return checked(std::cosh(a), "cosh");
        case UnaryOp::tanh: return std::tanh(a);
        case UnaryOp::exp: return checked(std::exp(a), "exp");
        case UnaryOp::log:
          if (a <= 0.0) domain_err("log of a non-positive value");
          return std::log(a);
        case UnaryOp::sqrt:
          if (a < 0.0) domain_err("sqrt of a negative value");
          return std::sqrt(a);
        case UnaryOp::abs: return std::fabs(a);
        case UnaryOp::sign:
          if (a == 0.0) domain_err("sign(0) is undefined (kink)");
          return a > 0.0 ? 1.0 : -1.0;
      }
      break;
    }
    case Expr::Tag::binary: {
      double a = eval_expr(x->a, t);
      double b = eval_expr(x->b, t);
      switch (x->bop) {
        case BinaryOp::add: return checked(a + b, "+");
        case BinaryOp::sub: return checked(a - b, "-");
        case BinaryOp::mul: return checked(a * b, "*");
        case BinaryOp::div:
          if (b == 0.0) domain_err("division by zero");
          return checked(a / b, "/");
        case BinaryOp::pow: {
          if (a == 0.0 && b < 0.0) domain_err("0 raised to a negative power");
          if (a < 0.0 && b != std::floor(b)) domain_err("negative base with non-integer exponent");
          return checked(std::pow(a, b), "^");
        }
        case BinaryOp::min: return std::fmin(a, b);
        case BinaryOp::max: return std::fmax(a, b);
      }
      break;
    }
  }
  fail(ErrorKind::bad_parameter, "eval: malformed tree");
}

// ------------------------------------------------------- RadialFunction

void RadialFunction::check(double t) const {
  if (!v_)
    throw Error(ErrorKind::config_error, "evaluating an unset radial function");
  if (!(t >= 0.0))
    throw Error(ErrorKind::out_of_domain,
                "radial parameter t=" + std::to_string(t) + " below 0");
  if (bounded() && t > end_ * (1.0 + 1e-12) + 1e-12)
    throw Error(ErrorKind::out_of_domain,
                "radial parameter t=" + std::to_string(t) + " beyond domain end " +
                    std::to_string(end_));
}

RadialFunction RadialFunction::from_ast(ExprPtr ast, double end) {
  RadialFunction r;
  r.src_ = print_expr(ast);
  r.ast_ = ast;
  ExprPtr d1 = differentiate(ast);
  ExprPtr d2 = differentiate(d1);
  r.v_ = [ast](double t) { return eval_expr(ast, t); };
  r.d1_ = [d1](double t) { return eval_expr(d1, t); };
  r.d2_ = [d2](double t) { return eval_expr(d2, t); };
  r.end_ = end;
  return r;
}

RadialFunction RadialFunction::from_source(std::string_view src, double end) {
  return from_ast(parse_expr(src), end);
}

RadialFunction RadialFunction::from_callables(std::string label,
                                              std::function<double(double)> v,
                                              std::function<double(double)> d1,
                                              std::function<double(double)> d2,
                                              double end) {
  RadialFunction r;
  r.src_ = std::move(label);
  r.v_ = std::move(v);
  r.d1_ = std::move(d1);
  r.d2_ = std::move(d2);
  r.end_ = end;
  return r;
}

RadialFunction RadialFunction::constant(double c) {
  return from_callables(number_to_string(c), [c](double) { return c; },
                        [](double) { return 0.0; }, [](double) { return 0.0; });
}

}  // namespace radcurv
