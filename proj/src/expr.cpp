#include "cartansym/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <utility>

#include "cartansym/error.hpp"

namespace cartansym {

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

struct FunctionEntry {
  std::string_view name;
  UnaryFunction func;
};

constexpr FunctionEntry kFunctions[] = {
    {"sin", UnaryFunction::Sin},   {"cos", UnaryFunction::Cos},   {"tan", UnaryFunction::Tan},
    {"exp", UnaryFunction::Exp},   {"log", UnaryFunction::Log},   {"sqrt", UnaryFunction::Sqrt},
    {"abs", UnaryFunction::Abs},   {"tanh", UnaryFunction::Tanh}, {"cosh", UnaryFunction::Cosh},
    {"sinh", UnaryFunction::Sinh},
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Expr::Kind::Number:
      if (n.number < 0.0 || (n.number == 0.0 && std::signbit(n.number))) {
        out += "(-";
        out += format_number(-n.number);
        out += ")";
      } else {
        out += format_number(n.number);
      }
      return;
    case Expr::Kind::NamedConstant:
    case Expr::Kind::Variable:
      out += n.name;
      return;
    case Expr::Kind::Negate:
      out += "(-";
      print(*n.lhs, out);
      out += ")";
      return;
    case Expr::Kind::Call:
      out += function_name(n.func);
      out += "(";
      print(*n.lhs, out);
      out += ")";
      return;
    case Expr::Kind::Binary: {
      static constexpr const char* kOps[] = {" + ", " - ", " * ", " / ", " ^ "};
      out += "(";
      print(*n.lhs, out);
      out += kOps[static_cast<int>(n.op)];
      print(*n.rhs, out);
      out += ")";
      return;
    }
  }
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      return a.number == b.number;
    case Expr::Kind::NamedConstant:
      return a.name == b.name && a.number == b.number;
    case Expr::Kind::Variable:
      return a.name == b.name && a.var_index == b.var_index;
    case Expr::Kind::Negate:
      return equal(*a.lhs, *b.lhs);
    case Expr::Kind::Call:
      return a.func == b.func && equal(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
      return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

std::size_t arity_of(const Node& n) {
  switch (n.kind) {
    case Expr::Kind::Variable:
      return n.var_index + 1;
    case Expr::Kind::Negate:
    case Expr::Kind::Call:
      return arity_of(*n.lhs);
    case Expr::Kind::Binary:
      return std::max(arity_of(*n.lhs), arity_of(*n.rhs));
    default:
      return 0;
  }
}

double apply_scalar(UnaryFunction f, double v) {
  switch (f) {
    case UnaryFunction::Sin: return std::sin(v);
    case UnaryFunction::Cos: return std::cos(v);
    case UnaryFunction::Tan: return std::tan(v);
    case UnaryFunction::Exp: return std::exp(v);
    case UnaryFunction::Log: return v > 0.0 ? std::log(v) : std::nan("");
    case UnaryFunction::Sqrt: return v >= 0.0 ? std::sqrt(v) : std::nan("");
    case UnaryFunction::Abs: return std::abs(v);
    case UnaryFunction::Tanh: return std::tanh(v);
    case UnaryFunction::Cosh: return std::cosh(v);
    case UnaryFunction::Sinh: return std::sinh(v);
  }
  return std::nan("");
}

Jet2 apply_jet(UnaryFunction f, const Jet2& u) {
  switch (f) {
    case UnaryFunction::Sin: return sin(u);
    case UnaryFunction::Cos: return cos(u);
    case UnaryFunction::Tan: return tan(u);
    case UnaryFunction::Exp: return exp(u);
    case UnaryFunction::Log: return log(u);
    case UnaryFunction::Sqrt: return sqrt(u);
    case UnaryFunction::Abs: return abs(u);
    case UnaryFunction::Tanh: return tanh(u);
    case UnaryFunction::Cosh: return cosh(u);
    case UnaryFunction::Sinh: return sinh(u);
  }
  return Jet2(std::nan(""));
}

bool as_integer(double c, long& k) {
  if (!(std::abs(c) < 1e9) || c != std::floor(c)) return false;
  k = static_cast<long>(c);
  return true;
}

[[noreturn]] void domain_failure(const Node& n) {
  std::string text;
  print(n, text);
  throw DomainError("expression " + text + " is not finite at the evaluation point");
}

double eval_scalar(const Node& n, std::span<const double> point) {
  double r = 0.0;
  switch (n.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::NamedConstant:
      return n.number;
    case Expr::Kind::Variable:
      if (n.var_index >= point.size()) throw std::out_of_range("expression variable outside point");
      return point[n.var_index];
    case Expr::Kind::Negate:
      return -eval_scalar(*n.lhs, point);
    case Expr::Kind::Call:
      r = apply_scalar(n.func, eval_scalar(*n.lhs, point));
      break;
    case Expr::Kind::Binary: {
      const double a = eval_scalar(*n.lhs, point);
      const double b = eval_scalar(*n.rhs, point);
      switch (n.op) {
        case BinaryOp::Add: r = a + b; break;
        case BinaryOp::Sub: r = a - b; break;
        case BinaryOp::Mul: r = a * b; break;
        case BinaryOp::Div: r = a / b; break;
        case BinaryOp::Pow: {
          long k = 0;
          if (n.rhs->variable_free && as_integer(b, k)) {
            r = std::pow(a, static_cast<double>(k));
          } else {
            r = a > 0.0 ? std::pow(a, b) : std::nan("");
          }
          break;
        }
      }
      break;
    }
  }
  if (!std::isfinite(r)) domain_failure(n);
  return r;
}

Jet2 eval_node(const Node& n, std::span<const Jet2> vars) {
  if (n.variable_free) {
    static constexpr std::span<const double> kNoPoint{};
    return Jet2(eval_scalar(n, kNoPoint));
  }
  Jet2 r;
  switch (n.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::NamedConstant:
      return Jet2(n.number);
    case Expr::Kind::Variable:
      if (n.var_index >= vars.size()) throw std::out_of_range("expression variable outside point");
      return vars[n.var_index];
    case Expr::Kind::Negate:
      return -eval_node(*n.lhs, vars);
    case Expr::Kind::Call:
      r = apply_jet(n.func, eval_node(*n.lhs, vars));
      break;
    case Expr::Kind::Binary: {
      if (n.op == BinaryOp::Pow) {
        const Jet2 base = eval_node(*n.lhs, vars);
        if (n.rhs->variable_free) {
          const double c = eval_scalar(*n.rhs, {});
          long k = 0;
          r = as_integer(c, k) ? ipow(base, k) : pow(base, c);
        } else {
          // a^b == exp(b log a), defined for a > 0 only.
          r = exp(eval_node(*n.rhs, vars) * log(base));
        }
        break;
      }
      const Jet2 a = eval_node(*n.lhs, vars);
      const Jet2 b = eval_node(*n.rhs, vars);
      switch (n.op) {
        case BinaryOp::Add: r = a + b; break;
        case BinaryOp::Sub: r = a - b; break;
        case BinaryOp::Mul: r = a * b; break;
        case BinaryOp::Div: r = a / b; break;
        case BinaryOp::Pow: break;
      }
      break;
    }
  }
  if (!r.is_finite()) domain_failure(n);
  return r;
}

// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> variables, const ConstantTable& constants)
      : text_(text), variables_(variables), constants_(constants) {}

  Expr parse() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (peek() == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent", pos_);
    }
    const std::string literal(text_.substr(start, pos_ - start));
    const double v = std::strtod(literal.c_str(), nullptr);
    if (!std::isfinite(v)) throw ParseError("numeric literal out of range", start);
    return Expr::number(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (peek() == '(') {
      for (const auto& f : kFunctions) {
        if (f.name == name) {
          ++pos_;
          Expr arg = parse_expr();
          if (!accept(')')) throw ParseError("expected ')' after function argument", pos_);
          return Expr::call(f.func, arg);
        }
      }
      throw ValidationError("unknown function \"" + name + "\" at offset " + std::to_string(start));
    }
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (variables_[i] == name) return Expr::variable(name, i);
    if (auto it = constants_.find(name); it != constants_.end()) return Expr::named_constant(name, it->second);
    if (name == "pi") return Expr::named_constant("pi", 3.14159265358979323846);
    throw ValidationError("unknown identifier \"" + name + "\" at offset " + std::to_string(start));
  }

  std::string_view text_;
  std::span<const std::string> variables_;
  const ConstantTable& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view function_name(UnaryFunction f) {
  for (const auto& e : kFunctions)
    if (e.func == f) return e.name;
  return "?";
}

Expr Expr::number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = v;
  return Expr(std::move(n));
}

Expr Expr::named_constant(std::string name, double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::NamedConstant;
  n->name = std::move(name);
  n->number = v;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name, std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  n->var_index = index;
  n->variable_free = false;
  return Expr(std::move(n));
}

Expr Expr::negate(const Expr& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->lhs = a.root_;
  n->variable_free = a.variable_free();
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, const Expr& a, const Expr& b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->lhs = a.root_;
  n->rhs = b.root_;
  n->variable_free = a.variable_free() && b.variable_free();
  return Expr(std::move(n));
}

Expr Expr::call(UnaryFunction f, const Expr& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = f;
  n->lhs = a.root_;
  n->variable_free = a.variable_free();
  return Expr(std::move(n));
}

std::size_t Expr::arity() const { return arity_of(*root_); }

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool Expr::structurally_equal(const Expr& other) const { return equal(*root_, *other.root_); }

double Expr::eval(std::span<const double> point) const { return eval_scalar(*root_, point); }

Jet2 Expr::eval_jet(std::span<const double> point, int order) const {
  std::vector<Jet2> vars;
  vars.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) vars.push_back(Jet2::variable(point[i], i, point.size(), order));
  return eval_jet(vars);
}

Jet2 Expr::eval_jet(std::span<const Jet2> variables) const { return eval_node(*root_, variables); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

Expr parse_expr(std::string_view text, std::span<const std::string> variables, const ConstantTable& constants) {
  return Parser(text, variables, constants).parse();
}

Expr parse_expr(std::string_view text, const Chart& chart, const ConstantTable& constants) {
  return parse_expr(text, std::span<const std::string>(chart.coord_names), constants);
}

// ---------------------------------------------------------------------------

int Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < coord_names.size(); ++i)
    if (coord_names[i] == name) return static_cast<int>(i);
  return -1;
}

bool Chart::admits(std::span<const double> point) const {
  if (point.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (point[i] < domain_box[i].lo || point[i] > domain_box[i].hi) return false;
  return !excluded(point);
}

bool Chart::excluded(std::span<const double> point) const {
  for (const auto& ex : excluded_regions) {
    double d = 0.0;
    try {
      d = ex.difference->eval(point);
    } catch (const DomainError&) {
      return true;
    }
    bool hit = false;
    switch (ex.op) {
      case Exclusion::Op::Less: hit = d < 0.0; break;
      case Exclusion::Op::LessEqual: hit = d <= 0.0; break;
      case Exclusion::Op::Greater: hit = d > 0.0; break;
      case Exclusion::Op::GreaterEqual: hit = d >= 0.0; break;
    }
    if (hit) return true;
  }
  return false;
}

void Chart::validate() const {
  if (coord_names.empty()) throw ValidationError("chart has no coordinates");
  if (domain_box.size() != coord_names.size())
    throw ValidationError("chart domain box does not cover every coordinate");
  for (std::size_t i = 0; i < coord_names.size(); ++i) {
    for (std::size_t j = i + 1; j < coord_names.size(); ++j)
      if (coord_names[i] == coord_names[j]) throw ValidationError("duplicate coordinate \"" + coord_names[i] + "\"");
    const auto& iv = domain_box[i];
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo <= iv.hi))
      throw ValidationError("empty or non-finite domain interval for \"" + coord_names[i] + "\"");
  }
}

}  // namespace cartansym
