#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dcreg/ext_real.hpp"
#include "dcreg/grid_function.hpp"

namespace dcreg {

/// Expression language for function definitions:
///
///   numbers, x, y (2D only), + - * / ^, unary -, parentheses,
///   abs sqrt exp sin cos (1 arg), min max (2 args), norm (1 or 2 args),
///   if(a <cmp> b, then, else) with cmp in < <= > >=,
///   inf as an if branch.
///
/// Precedence from tight to loose: ^ (right associative), unary -, * /, + -.
struct ExprNode {
  enum class Kind { Number, Infinity, Variable, Negate, Binary, Call, Conditional };
  enum class Op { Add, Sub, Mul, Div, Pow };
  enum class Cmp { Lt, Le, Gt, Ge };
  enum class Func { Abs, Sqrt, Exp, Sin, Cos, Min, Max, Norm };

  Kind kind = Kind::Number;
  double number = 0.0;
  int variable = 0;  // 0 = x, 1 = y
  Op op = Op::Add;
  Cmp cmp = Cmp::Lt;
  Func func = Func::Abs;
  // Negate: {operand}; Binary: {lhs, rhs}; Call: arguments;
  // Conditional: {cmp lhs, cmp rhs, then, else}.
  std::vector<std::shared_ptr<const ExprNode>> args;
  int line = 1;
  int column = 1;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

/// Structural equality, ignoring source positions.
bool same_tree(const ExprNode& a, const ExprNode& b);

class Expression {
 public:
  /// SyntaxError / UnknownIdentifier / ArityMismatch, with line:column in the
  /// message. `dim` decides whether y is a known variable.
  static Expression parse(std::string_view source, int dim = 2);

  const ExprNode& root() const noexcept { return *root_; }
  int dim() const noexcept { return dim_; }

  /// EvaluationError (located) for domain errors such as sqrt of a negative
  /// number or division by zero.
  ExtReal eval(const Point& p) const;

  /// Minimal-parenthesis rendering that parses back to the same tree.
  std::string to_string() const;

  GridFunction sample(const Grid& grid) const;

  friend bool operator==(const Expression& a, const Expression& b) { return same_tree(*a.root_, *b.root_); }

 private:
  Expression(ExprPtr root, int dim) : root_(std::move(root)), dim_(dim) {}
  ExprPtr root_;
  int dim_;
};

std::string to_string(const ExprNode& node);

}  // namespace dcreg
