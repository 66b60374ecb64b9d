#pragma once

// Closed-form scalar expressions over the coordinates of a chart.
//
// Grammar (whitespace insignificant):
//
//   expr    := term { ("+" | "-") term }
//   term    := unary { ("*" | "/") unary }
//   unary   := ("-" | "+") unary | power
//   power   := primary [ "^" unary ]            right associative
//   primary := number | identifier | identifier "(" expr ")" | "(" expr ")"
//   number  := digits [ "." digits ] [ ("e" | "E") [sign] digits ]
//
// Identifiers resolve, in order, to chart variables, named constants bound by
// the caller, and the builtin constant `pi`. Functions: sin cos tan exp log
// sqrt abs tanh cosh sinh.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartansym/jet.hpp"

namespace cartansym {

class Expr;

/// Coordinate patch: ordered coordinate names, a sampling box and optional
/// excluded regions. One chart per geometry.
struct Chart {
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
  };
  /// A point is excluded when `lhs - rhs` compares to 0 by `op`.
  struct Exclusion {
    enum class Op { Less, LessEqual, Greater, GreaterEqual };
    std::shared_ptr<const Expr> difference;  // lhs - rhs
    Op op = Op::Less;
    std::string text;
  };

  std::vector<std::string> coord_names;
  std::vector<Interval> domain_box;
  std::vector<Exclusion> excluded_regions;

  std::size_t dim() const noexcept { return coord_names.size(); }
  /// Index of a coordinate name, or -1.
  int index_of(std::string_view name) const;
  bool same_coordinates(const Chart& other) const { return coord_names == other.coord_names; }
  /// Inside the box and outside every excluded region.
  bool admits(std::span<const double> point) const;
  /// Inside some excluded region (the box is ignored).
  bool excluded(std::span<const double> point) const;
  /// Throws ValidationError unless dim/box/names are consistent.
  void validate() const;
};

/// Named numeric constants visible to the parser.
using ConstantTable = std::map<std::string, double, std::less<>>;

enum class UnaryFunction { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Tanh, Cosh, Sinh };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

std::string_view function_name(UnaryFunction f);

/// Immutable expression tree. Cheap to copy (shared nodes); safe to evaluate
/// concurrently.
class Expr {
 public:
  enum class Kind { Number, NamedConstant, Variable, Negate, Binary, Call };

  struct Node {
    Kind kind = Kind::Number;
    double number = 0.0;        // Number, NamedConstant
    std::string name;           // NamedConstant, Variable
    std::size_t var_index = 0;  // Variable
    BinaryOp op = BinaryOp::Add;
    UnaryFunction func = UnaryFunction::Sin;
    std::shared_ptr<const Node> lhs;  // Negate/Call operand, Binary left
    std::shared_ptr<const Node> rhs;  // Binary right
    bool variable_free = true;
  };

  Expr() : Expr(number(0.0)) {}

  static Expr number(double v);
  static Expr named_constant(std::string name, double v);
  static Expr variable(std::string name, std::size_t index);
  static Expr negate(const Expr& a);
  static Expr binary(BinaryOp op, const Expr& a, const Expr& b);
  static Expr call(UnaryFunction f, const Expr& a);

  const Node& node() const { return *root_; }
  Kind kind() const { return root_->kind; }
  bool variable_free() const { return root_->variable_free; }
  /// Literally the number 0 (how absent components are stored).
  bool is_zero() const { return root_->kind == Kind::Number && root_->number == 0.0; }

  /// Highest variable index referenced plus one (0 if none).
  std::size_t arity() const;

  /// Fully parenthesized text that parses back to a structurally equal tree.
  std::string to_string() const;
  bool structurally_equal(const Expr& other) const;

  double eval(std::span<const double> point) const;
  /// Value, gradient and Hessian with respect to the point's coordinates.
  /// Throws DomainError naming the offending subexpression when an
  /// intermediate is not finite.
  Jet2 eval_jet(std::span<const double> point, int order = Jet2::kMaxOrder) const;
  /// Evaluate with caller-supplied jets for the variables.
  Jet2 eval_jet(std::span<const Jet2> variables) const;

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Parse `text` over the given variable names. Throws ParseError (with byte
/// offset) for syntax errors and ValidationError for unknown identifiers.
Expr parse_expr(std::string_view text, std::span<const std::string> variables,
                const ConstantTable& constants = {});
Expr parse_expr(std::string_view text, const Chart& chart, const ConstantTable& constants = {});

}  // namespace cartansym
