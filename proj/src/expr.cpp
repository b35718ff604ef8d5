#include "sibgeo/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <utility>

namespace sibgeo {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 10> kFunctions = {{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
    {"tanh", Func::Tanh},
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
}};

// Integer exponents up to this magnitude use repeated multiplication.
constexpr double kMaxIntegerExponent = 1024.0;

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Const;
  n->number = v;
  return n;
}

NodePtr make_unary(NodeKind kind, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(arg);
  return n;
}

NodePtr make_binary(NodeKind kind, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_pow(NodePtr base, double p) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->lhs = std::move(base);
  n->number = p;
  return n;
}

NodePtr make_call(Func f, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->lhs = std::move(arg);
  return n;
}

bool is_small_integer(double p) {
  return p == std::floor(p) && std::abs(p) <= kMaxIntegerExponent;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double apply_value(Func f, double u) {
  switch (f) {
    case Func::Sin: return std::sin(u);
    case Func::Cos: return std::cos(u);
    case Func::Tan:
      if (std::cos(u) == 0.0) throw DomainError("tan at a pole");
      return checked(std::tan(u), "tan");
    case Func::Sinh: return checked(std::sinh(u), "sinh");
    case Func::Cosh: return checked(std::cosh(u), "cosh");
    case Func::Tanh: return std::tanh(u);
    case Func::Exp: return checked(std::exp(u), "exp");
    case Func::Ln:
      if (!(u > 0.0)) throw DomainError("ln of nonpositive argument");
      return std::log(u);
    case Func::Sqrt:
      if (u < 0.0) throw DomainError("sqrt of negative argument");
      return std::sqrt(u);
    case Func::Abs: return std::abs(u);
  }
  return 0.0;
}

Jet2 apply_jet(Func f, const Jet2& a) {
  const double u = a.value();
  switch (f) {
    case Func::Sin: {
      const double s = std::sin(u), c = std::cos(u);
      return a.compose(s, c, -s);
    }
    case Func::Cos: {
      const double s = std::sin(u), c = std::cos(u);
      return a.compose(c, -s, -c);
    }
    case Func::Tan: {
      const double t = apply_value(f, u);
      const double d = 1.0 + t * t;
      return a.compose(t, d, 2.0 * t * d);
    }
    case Func::Sinh: {
      const double s = checked(std::sinh(u), "sinh"), c = std::cosh(u);
      return a.compose(s, c, s);
    }
    case Func::Cosh: {
      const double s = std::sinh(u), c = checked(std::cosh(u), "cosh");
      return a.compose(c, s, c);
    }
    case Func::Tanh: {
      const double t = std::tanh(u);
      const double d = 1.0 - t * t;
      return a.compose(t, d, -2.0 * t * d);
    }
    case Func::Exp: {
      const double e = checked(std::exp(u), "exp");
      return a.compose(e, e, e);
    }
    case Func::Ln:
      if (!(u > 0.0)) throw DomainError("ln of nonpositive argument");
      return a.compose(std::log(u), 1.0 / u, -1.0 / (u * u));
    case Func::Sqrt: {
      if (!(u > 0.0)) throw DomainError("sqrt jet at nonpositive argument");
      const double s = std::sqrt(u);
      return a.compose(s, 0.5 / s, -0.25 / (s * u));
    }
    case Func::Abs:
      if (u == 0.0) throw DomainError("abs is not differentiable at 0");
      return a.compose(std::abs(u), u > 0.0 ? 1.0 : -1.0, 0.0);
  }
  return a;
}

double eval_node(const Node& n, std::span<const double> x) {
  switch (n.kind) {
    case NodeKind::Const: return n.number;
    case NodeKind::Coord: return x[static_cast<std::size_t>(n.coord)];
    case NodeKind::Neg: return -eval_node(*n.lhs, x);
    case NodeKind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case NodeKind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case NodeKind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case NodeKind::Div: {
      const double d = eval_node(*n.rhs, x);
      if (d == 0.0) throw DomainError("division by zero");
      return checked(eval_node(*n.lhs, x) / d, "division");
    }
    case NodeKind::Pow: {
      const double b = eval_node(*n.lhs, x);
      const double p = n.number;
      if (is_small_integer(p)) {
        double r = 1.0;
        const long k = static_cast<long>(std::abs(p));
        for (long i = 0; i < k; ++i) r = r * b;
        if (p < 0.0) {
          if (r == 0.0) throw DomainError("negative power of zero");
          r = 1.0 / r;
        }
        return checked(r, "power");
      }
      if (!(b > 0.0)) throw DomainError("real power of nonpositive base");
      return checked(std::exp(p * std::log(b)), "power");
    }
    case NodeKind::Call: return apply_value(n.func, eval_node(*n.lhs, x));
  }
  return 0.0;
}

Jet2 eval_jet_node(const Node& n, std::span<const double> x, int dim) {
  switch (n.kind) {
    case NodeKind::Const: return Jet2::constant(dim, n.number);
    case NodeKind::Coord:
      return Jet2::variable(dim, n.coord, x[static_cast<std::size_t>(n.coord)]);
    case NodeKind::Neg: return -eval_jet_node(*n.lhs, x, dim);
    case NodeKind::Add: return eval_jet_node(*n.lhs, x, dim) + eval_jet_node(*n.rhs, x, dim);
    case NodeKind::Sub: return eval_jet_node(*n.lhs, x, dim) - eval_jet_node(*n.rhs, x, dim);
    case NodeKind::Mul: return eval_jet_node(*n.lhs, x, dim) * eval_jet_node(*n.rhs, x, dim);
    case NodeKind::Div: {
      const Jet2 d = eval_jet_node(*n.rhs, x, dim);
      Jet2 q = eval_jet_node(*n.lhs, x, dim) / d;
      checked(q.value(), "division");
      return q;
    }
    case NodeKind::Pow: {
      const Jet2 b = eval_jet_node(*n.lhs, x, dim);
      const double p = n.number;
      if (is_small_integer(p)) {
        Jet2 r = Jet2::constant(dim, 1.0);
        const long k = static_cast<long>(std::abs(p));
        for (long i = 0; i < k; ++i) r = r * b;
        if (p < 0.0) {
          if (r.value() == 0.0) throw DomainError("negative power of zero");
          r = Jet2::constant(dim, 1.0) / r;
        }
        checked(r.value(), "power");
        return r;
      }
      if (!(b.value() > 0.0)) throw DomainError("real power of nonpositive base");
      const Jet2 e = p * apply_jet(Func::Ln, b);
      return apply_jet(Func::Exp, e);
    }
    case NodeKind::Call: return apply_jet(n.func, eval_jet_node(*n.lhs, x, dim));
  }
  return Jet2(dim, 0.0);
}

int max_coord_node(const Node& n) {
  int m = n.kind == NodeKind::Coord ? n.coord : -1;
  if (n.lhs) m = std::max(m, max_coord_node(*n.lhs));
  if (n.rhs) m = std::max(m, max_coord_node(*n.rhs));
  return m;
}

bool references_node(const Node& n, int c) {
  if (n.kind == NodeKind::Coord && n.coord == c) return true;
  return (n.lhs && references_node(*n.lhs, c)) || (n.rhs && references_node(*n.rhs, c));
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Const:
      return std::bit_cast<std::uint64_t>(a.number) == std::bit_cast<std::uint64_t>(b.number);
    case NodeKind::Coord: return a.coord == b.coord;
    case NodeKind::Pow:
      return a.number == b.number && equal_nodes(*a.lhs, *b.lhs);
    case NodeKind::Call: return a.func == b.func && equal_nodes(*a.lhs, *b.lhs);
    case NodeKind::Neg: return equal_nodes(*a.lhs, *b.lhs);
    default: return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
  }
}

void render_node(const Node& n, std::span<const std::string> names, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    render_node(*n.lhs, names, out);
    out += op;
    render_node(*n.rhs, names, out);
    out += ')';
  };
  switch (n.kind) {
    case NodeKind::Const:
      if (std::signbit(n.number)) {
        out += "(-";
        out += format_double(-n.number);
        out += ')';
      } else {
        out += format_double(n.number);
      }
      return;
    case NodeKind::Coord: out += names[static_cast<std::size_t>(n.coord)]; return;
    case NodeKind::Neg:
      out += "(-";
      render_node(*n.lhs, names, out);
      out += ')';
      return;
    case NodeKind::Add: binary(" + "); return;
    case NodeKind::Sub: binary(" - "); return;
    case NodeKind::Mul: binary("*"); return;
    case NodeKind::Div: binary("/"); return;
    case NodeKind::Pow:
      out += '(';
      render_node(*n.lhs, names, out);
      out += ")^(";
      if (std::signbit(n.number)) out += '-';
      out += format_double(std::abs(n.number));
      out += ')';
      return;
    case NodeKind::Call:
      out += func_name(n.func);
      out += '(';
      render_node(*n.lhs, names, out);
      out += ')';
      return;
  }
}

// Recursive-descent parser over a byte string.
class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> names) : src_(src), names_(names) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(NodeKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make_binary(NodeKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(NodeKind::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make_binary(NodeKind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_unary(NodeKind::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_ws();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    NodePtr exponent = parse_exponent();
    if (max_coord_node(*exponent) >= 0) {
      pos_ = at;
      fail("exponent must be a constant expression");
    }
    double p = 0.0;
    try {
      p = eval_node(*exponent, {});
    } catch (const DomainError&) {
      pos_ = at;
      fail("exponent does not evaluate to a finite number");
    }
    if (!std::isfinite(p)) {
      pos_ = at;
      fail("exponent does not evaluate to a finite number");
    }
    return make_pow(std::move(base), p);
  }

  // Right-associative: a^b^c = a^(b^c); a leading minus binds to the exponent.
  NodePtr parse_exponent() {
    if (accept('-')) return make_unary(NodeKind::Neg, parse_exponent());
    return parse_power();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (is_name_start(c)) return parse_name();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_, ++n;
      return n;
    };
    std::size_t nd = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      nd += digits();
    }
    if (nd == 0) fail("malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent in number");
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number");
    }
    return make_const(v);
  }

  static bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_name_char(char c) { return is_name_start(c) || (c >= '0' && c <= '9'); }

  NodePtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Coord;
        n->coord = static_cast<int>(i);
        return n;
      }
    }
    for (const auto& [fname, f] : kFunctions) {
      if (fname != name) continue;
      if (!accept('(')) fail("expected '(' after function '" + std::string(name) + "'");
      NodePtr arg = parse_expr();
      int count = 1;
      while (accept(',')) {
        parse_expr();
        ++count;
      }
      if (!accept(')')) fail("expected ')'");
      if (count != 1)
        throw ArityError("function '" + std::string(name) + "' takes 1 argument, got " +
                         std::to_string(count) + " at offset " + std::to_string(start));
      return make_call(f, std::move(arg));
    }
    if (name == "pi") return make_const(3.141592653589793);
    throw UnknownIdentifier("unknown identifier '" + std::string(name) + "' at offset " +
                            std::to_string(start));
  }

  std::string_view src_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view func_name(Func f) {
  for (const auto& [name, g] : kFunctions)
    if (g == f) return name;
  return "?";
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

Expr::Expr() : root_(make_const(0.0)) {}

Expr Expr::constant(double v) { return Expr(make_const(v)); }

Expr Expr::coordinate(int index) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Coord;
  n->coord = index;
  return Expr(std::move(n));
}

bool Expr::is_constant(double v) const {
  return root_->kind == NodeKind::Const && root_->number == v;
}

int Expr::max_coordinate() const { return max_coord_node(*root_); }

bool Expr::references(int coord) const { return references_node(*root_, coord); }

double Expr::eval(std::span<const double> point) const { return eval_node(*root_, point); }

Jet2 Expr::eval_jet(std::span<const double> point) const {
  const int dim = static_cast<int>(point.size());
  if (dim > kMaxDim) throw DimensionMismatch("jet dimension exceeds " + std::to_string(kMaxDim));
  if (max_coordinate() >= dim) throw DimensionMismatch("expression references a coordinate beyond the point");
  return eval_jet_node(*root_, point, dim);
}

std::string Expr::render(std::span<const std::string> coord_names) const {
  std::string out;
  render_node(*root_, coord_names, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) { return equal_nodes(*a.root_, *b.root_); }

Expr parse(std::string_view source, std::span<const std::string> coord_names) {
  return Expr(Parser(source, coord_names).parse_all());
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr(make_binary(NodeKind::Add, a.root_ptr(), b.root_ptr()));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return Expr(make_binary(NodeKind::Sub, a.root_ptr(), b.root_ptr()));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  return Expr(make_binary(NodeKind::Mul, a.root_ptr(), b.root_ptr()));
}

Expr operator/(const Expr& a, const Expr& b) {
  return Expr(make_binary(NodeKind::Div, a.root_ptr(), b.root_ptr()));
}

Expr operator-(const Expr& a) {
  if (a.is_constant(0.0)) return a;
  return Expr(make_unary(NodeKind::Neg, a.root_ptr()));
}

Expr pow(const Expr& base, double exponent) { return Expr(make_pow(base.root_ptr(), exponent)); }

Expr call(Func f, const Expr& arg) { return Expr(make_call(f, arg.root_ptr())); }

}  // namespace sibgeo
