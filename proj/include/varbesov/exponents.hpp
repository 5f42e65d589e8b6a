#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"

namespace varbesov {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// expression parser: literals, x, y (2-D), + - * / parens, unary minus,
// sin cos exp abs min max smoothstep(a,b,t)
// ---------------------------------------------------------------------------

namespace detail {

struct ExprNode {
  virtual ~ExprNode() = default;
  virtual double eval(double x, double y) const = 0;
};
using ExprPtr = std::unique_ptr<ExprNode>;

struct NumNode : ExprNode {
  double v;
  explicit NumNode(double v_) : v(v_) {}
  double eval(double, double) const override { return v; }
};

struct VarNode : ExprNode {
  int axis;  // 0 = x, 1 = y
  explicit VarNode(int a) : axis(a) {}
  double eval(double x, double y) const override { return axis == 0 ? x : y; }
};

struct UnaryNode : ExprNode {
  ExprPtr arg;
  double (*fn)(double);
  UnaryNode(ExprPtr a, double (*f)(double)) : arg(std::move(a)), fn(f) {}
  double eval(double x, double y) const override { return fn(arg->eval(x, y)); }
};

struct BinNode : ExprNode {
  char op;
  ExprPtr lhs, rhs;
  BinNode(char o, ExprPtr l, ExprPtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
  double eval(double x, double y) const override {
    double a = lhs->eval(x, y), b = rhs->eval(x, y);
    switch (op) {
      case '+': return a + b;
      case '-': return a - b;
      case '*': return a * b;
      default: return a / b;
    }
  }
};

struct CallNode : ExprNode {
  std::string name;
  std::vector<ExprPtr> args;
  double eval(double x, double y) const override {
    auto v = [&](std::size_t i) { return args[i]->eval(x, y); };
    if (name == "min") return std::min(v(0), v(1));
    if (name == "max") return std::max(v(0), v(1));
    // smoothstep(a,b,t): cubic ramp, 0 at t<=a, 1 at t>=b
    double a = v(0), b = v(1), t = v(2);
    double u = std::clamp((t - a) / (b - a), 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
  }
};

class ExprParser {
 public:
  ExprParser(const std::string& text, int dim) : s_(text), dim_(dim) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& s_;
  int dim_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("exponent parse error at position " +
                                std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr sum() {
    ExprPtr e = product();
    while (true) {
      if (consume('+'))
        e = std::make_unique<BinNode>('+', std::move(e), product());
      else if (consume('-'))
        e = std::make_unique<BinNode>('-', std::move(e), product());
      else
        return e;
    }
  }

  ExprPtr product() {
    ExprPtr e = unary();
    while (true) {
      if (consume('*'))
        e = std::make_unique<BinNode>('*', std::move(e), unary());
      else if (consume('/'))
        e = std::make_unique<BinNode>('/', std::move(e), unary());
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (consume('-'))
      return std::make_unique<BinNode>('-', std::make_unique<NumNode>(0.0), unary());
    return atom();
  }

  ExprPtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("expected number, variable, or function");
  }

  ExprPtr number() {
    skip_ws();
    std::size_t end;
    double v;
    try {
      v = std::stod(s_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("bad numeric literal");
    }
    pos_ += end;
    return std::make_unique<NumNode>(v);
  }

  ExprPtr identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           std::isalpha(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "x") return std::make_unique<VarNode>(0);
    if (name == "y") {
      if (dim_ < 2) fail("'y' requires a 2-D grid");
      return std::make_unique<VarNode>(1);
    }
    if (name == "inf") return std::make_unique<NumNode>(inf);
    if (name == "sin" || name == "cos" || name == "exp" || name == "abs") {
      double (*fn)(double) = name == "sin"   ? static_cast<double (*)(double)>(std::sin)
                             : name == "cos" ? static_cast<double (*)(double)>(std::cos)
                             : name == "exp" ? static_cast<double (*)(double)>(std::exp)
                                             : static_cast<double (*)(double)>(std::fabs);
      if (!consume('(')) fail("expected '(' after " + name);
      ExprPtr arg = sum();
      if (!consume(')')) fail("expected ')'");
      return std::make_unique<UnaryNode>(std::move(arg), fn);
    }
    if (name == "min" || name == "max" || name == "smoothstep") {
      std::size_t arity = name == "smoothstep" ? 3 : 2;
      if (!consume('(')) fail("expected '(' after " + name);
      auto call = std::make_unique<CallNode>();
      call->name = name;
      for (std::size_t i = 0; i < arity; ++i) {
        if (i && !consume(',')) fail("expected ','");
        call->args.push_back(sum());
      }
      if (!consume(')')) fail("expected ')'");
      return call;
    }
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// VariableExponent: bounded lattice of samples on the grid
// ---------------------------------------------------------------------------

// Estimate of the log-Hoelder constant: max over sampled pairs of
// |g(x)-g(y)| * log(e + 1/|x-y|), Euclidean in-box distance.
inline double estimate_clog_samples(const Grid& g, const std::vector<double>& vals) {
  auto pair_value = [&](std::size_t i, std::size_t j, double dist) {
    return std::abs(vals[i] - vals[j]) * std::log(std::exp(1.0) + 1.0 / dist);
  };
  double best = 0.0;
  int N = g.side();
  if (g.dim == 1) {
    for (int i = 0; i + 1 < N; ++i)
      best = std::max(best, pair_value(i, i + 1, g.h()));
    int stride = std::max(1, N / 64);
    for (int i = 0; i < N; i += stride)
      for (int j = i + stride; j < N; j += stride)
        best = std::max(best, pair_value(i, j, (j - i) * g.h()));
    best = std::max(best, pair_value(0, N - 1, (N - 1) * g.h()));
  } else {
    for (int ix = 0; ix < N; ++ix)
      for (int iy = 0; iy < N; ++iy) {
        std::size_t i = g.index(ix, iy);
        if (ix + 1 < N) best = std::max(best, pair_value(i, g.index(ix + 1, iy), g.h()));
        if (iy + 1 < N) best = std::max(best, pair_value(i, g.index(ix, iy + 1), g.h()));
      }
    int stride = std::max(1, N / 16);
    for (int ix = 0; ix < N; ix += stride)
      for (int iy = 0; iy < N; iy += stride)
        for (int jx = ix; jx < N; jx += stride)
          for (int jy = 0; jy < N; jy += stride) {
            if (jx == ix && jy <= iy) continue;
            double d = std::hypot((jx - ix) * g.h(), (jy - iy) * g.h());
            best = std::max(best, pair_value(g.index(ix, iy), g.index(jx, jy), d));
          }
  }
  return best;
}

struct VariableExponent {
  Grid grid;
  std::vector<double> vals;  // empty iff is_inf
  bool is_inf = false;
  bool is_const = false;
  double lo = 0.0, hi = 0.0;
  double clog = 0.0;

  VariableExponent() = default;

  static VariableExponent constant(const Grid& g, double c) {
    VariableExponent e;
    e.grid = g;
    if (c == inf) {
      e.is_inf = true;
      e.is_const = true;
      e.lo = e.hi = inf;
      return e;
    }
    if (!std::isfinite(c)) throw std::invalid_argument("exponent: non-finite constant");
    e.vals.assign(g.size(), c);
    e.is_const = true;
    e.lo = e.hi = c;
    return e;
  }

  static VariableExponent from_samples(const Grid& g, std::vector<double> v) {
    VariableExponent e;
    e.grid = g;
    e.vals = std::move(v);
    if (e.vals.size() != g.size()) throw std::invalid_argument("exponent: size mismatch");
    e.finish();
    return e;
  }

  void finish() {
    lo = hi = vals[0];
    for (double v : vals) {
      if (!std::isfinite(v)) throw std::invalid_argument("exponent: non-finite sample");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    is_const = (hi - lo) < 1e-14 * std::max(1.0, std::abs(hi));
    clog = is_const ? 0.0 : estimate_clog_samples(grid, vals);
  }

  double operator[](std::size_t i) const { return is_inf ? inf : vals[i]; }
  double at(std::size_t i) const { return (*this)[i]; }

  bool positive() const { return is_inf || lo > 0.0; }

  void require_positive(const char* who) const {
    if (!positive())
      throw std::invalid_argument(std::string(who) + ": exponent must be positive");
  }
};

inline VariableExponent parse_exponent(const std::string& text, const Grid& g) {
  // fast path: the literal "inf"
  {
    std::string t;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "inf") return VariableExponent::constant(g, inf);
  }
  detail::ExprParser parser(text, g.dim);
  detail::ExprPtr e = parser.parse();
  std::vector<double> v(g.size());
  if (g.dim == 1) {
    for (int i = 0; i < g.side(); ++i) v[i] = e->eval(g.coord(i), 0.0);
  } else {
    for (int ix = 0; ix < g.side(); ++ix)
      for (int iy = 0; iy < g.side(); ++iy)
        v[g.index(ix, iy)] = e->eval(g.coord(ix), g.coord(iy));
  }
  for (double x : v)
    if (x == inf) {
      for (double y : v)
        if (y != inf)
          throw std::invalid_argument("exponent: 'inf' must be global, not pointwise");
      return VariableExponent::constant(g, inf);
    }
  return VariableExponent::from_samples(g, std::move(v));
}

inline double estimate_clog(const VariableExponent& e) {
  if (e.is_inf || e.is_const) return 0.0;
  return e.clog;
}

// 1/p + 1/p' = 1 pointwise; requires p == 1, p == inf, or p- > 1
inline VariableExponent conjugate(const VariableExponent& p) {
  if (p.is_inf) return VariableExponent::constant(p.grid, 1.0);
  if (p.is_const && p.lo == 1.0) return VariableExponent::constant(p.grid, inf);
  if (p.lo <= 1.0)
    throw std::invalid_argument("conjugate: requires p == 1, p == inf, or p- > 1");
  std::vector<double> v(p.vals.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.vals[i] / (p.vals[i] - 1.0);
  return VariableExponent::from_samples(p.grid, std::move(v));
}

// pointwise combination; inf handled only where the combinator defines it
inline VariableExponent ve_map(const VariableExponent& a,
                               const std::function<double(double)>& f) {
  if (a.is_inf) throw std::invalid_argument("ve_map: infinite exponent");
  std::vector<double> v(a.vals.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(a.vals[i]);
  return VariableExponent::from_samples(a.grid, std::move(v));
}

inline VariableExponent ve_map2(const VariableExponent& a, const VariableExponent& b,
                                const std::function<double(double, double)>& f) {
  if (a.is_inf || b.is_inf) throw std::invalid_argument("ve_map2: infinite exponent");
  if (a.grid != b.grid) throw std::invalid_argument("ve_map2: grid mismatch");
  std::vector<double> v(a.vals.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(a.vals[i], b.vals[i]);
  return VariableExponent::from_samples(a.grid, std::move(v));
}

// p/q with q+ < inf; p == inf gives the global flag for the p/q == inf case
inline VariableExponent ve_ratio(const VariableExponent& p, const VariableExponent& q) {
  if (q.is_inf) throw std::invalid_argument("ve_ratio: q must be finite");
  if (p.is_inf) return VariableExponent::constant(p.grid, inf);
  return ve_map2(p, q, [](double a, double b) { return a / b; });
}

inline VariableExponent reciprocal(const VariableExponent& a) {
  if (a.is_inf) throw std::invalid_argument("reciprocal: infinite exponent");
  a.require_positive("reciprocal");
  return ve_map(a, [](double v) { return 1.0 / v; });
}

}  // namespace varbesov
