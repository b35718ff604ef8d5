#pragma once

// Closed-form scalar expressions over chart coordinates.
//
// Grammar (lowest to highest precedence):
//
//   expr    := term  (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?        exponent is right-associative
//   primary := number | name | name '(' expr ')' | '(' expr ')'
//
// The exponent of '^' must be a constant expression; it is folded at parse
// time. Names resolve first against the coordinate list, then the functions
// sin cos tan sinh cosh tanh exp ln sqrt abs, then the constant `pi`.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sibgeo/jet.hpp"

namespace sibgeo {

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Abs };

std::string_view func_name(Func f);

enum class NodeKind { Const, Coord, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  double number = 0.0;  // Const value, or Pow exponent
  int coord = -1;       // Coord index
  Func func = Func::Sin;
  NodePtr lhs;          // operand of unary nodes, left of binary nodes
  NodePtr rhs;
};

// Immutable expression handle. Copies share the tree.
class Expr {
 public:
  Expr();  // the constant 0
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  static Expr constant(double v);
  static Expr coordinate(int index);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }

  bool is_constant(double v) const;
  // Largest coordinate index referenced, or -1.
  int max_coordinate() const;
  bool references(int coord) const;

  // Value only. Throws DomainError on singular evaluation.
  double eval(std::span<const double> point) const;
  // Value, gradient and Hessian with respect to all point.size() coordinates.
  Jet2 eval_jet(std::span<const double> point) const;

  // Text that parses back to an identical evaluation.
  std::string render(std::span<const std::string> coord_names) const;

  // Structural equality (same tree shape and constants).
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
};

Expr parse(std::string_view source, std::span<const std::string> coord_names);
inline Expr parse(std::string_view source, const std::vector<std::string>& names) {
  return parse(source, std::span<const std::string>(names));
}

// Builders used when composing expressions programmatically. A literal zero
// operand is dropped (x + 0 -> x, x * 0 -> 0); nothing else is rewritten.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, double exponent);
Expr call(Func f, const Expr& arg);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace sibgeo
