#pragma once

// Order-2 truncated Taylor expansions ("jets") in n variables.
//
// A Jet2 carries f, grad f and the symmetric Hessian of f at a point. Every
// jet also records how many derivative levels are valid: a jet obtained by
// differentiating an order-2 jet only knows its value and gradient, so
// `partial()` drops one level, and arithmetic keeps the minimum level of its
// operands. A jet with size() == 0 is a constant and combines with jets of
// any size.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cartansym {

class Jet2 {
 public:
  static constexpr int kMaxOrder = 2;

  /// The constant 0.
  Jet2() = default;
  /// A constant (size 0; broadcasts against any other jet).
  Jet2(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static Jet2 constant(double value, std::size_t n, int order = kMaxOrder);
  /// The coordinate function x_index with value `value`.
  static Jet2 variable(double value, std::size_t index, std::size_t n,
                       int order = kMaxOrder);

  double value() const noexcept { return value_; }
  std::size_t size() const noexcept { return n_; }
  int order() const noexcept { return order_; }

  /// First partial d/dx_i. Zero for constants; requires order() >= 1.
  double grad(std::size_t i) const;
  /// Second partial d2/dx_i dx_j. Requires order() >= 2.
  double hess(std::size_t i, std::size_t j) const;
  std::span<const double> gradient() const noexcept { return grad_; }

  /// The jet of d/dx_i of this function. Order drops by one.
  Jet2 partial(std::size_t i) const;
  /// Same function, derivative levels above `order` discarded.
  Jet2 truncated(int order) const;
  /// Re-express in a larger variable set where variable k maps to offset + k.
  Jet2 embedded(std::size_t n, std::size_t offset = 0) const;

  /// Chain rule for a scalar function phi applied to *this, given phi, phi'
  /// and phi'' at value().
  Jet2 compose(double f, double df, double d2f) const;

  bool is_finite() const noexcept;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator/=(const Jet2& o);
  Jet2& operator*=(double s);

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  Jet2 operator-() const;

  std::string to_string() const;

 private:
  void adopt_shape(const Jet2& o);

  double value_ = 0.0;
  std::size_t n_ = 0;
  int order_ = kMaxOrder;
  std::vector<double> grad_;  // n_ entries when order_ >= 1
  std::vector<double> hess_;  // n_*n_ entries when order_ >= 2, symmetric
};

Jet2 sin(const Jet2& u);
Jet2 cos(const Jet2& u);
Jet2 tan(const Jet2& u);
Jet2 exp(const Jet2& u);
Jet2 log(const Jet2& u);
Jet2 sqrt(const Jet2& u);
Jet2 abs(const Jet2& u);
Jet2 tanh(const Jet2& u);
Jet2 cosh(const Jet2& u);
Jet2 sinh(const Jet2& u);
/// u^k for integer k by repeated multiplication (any base; k < 0 needs u != 0).
Jet2 ipow(const Jet2& u, long k);
/// u^c for a real constant c, power rule; requires u > 0.
Jet2 pow(const Jet2& u, double c);

/// Square n x n matrix of jets, row-major.
struct JetMatrix {
  std::size_t n = 0;
  std::vector<Jet2> a;

  JetMatrix() = default;
  explicit JetMatrix(std::size_t dim) : n(dim), a(dim * dim) {}
  static JetMatrix identity(std::size_t dim);

  Jet2& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Jet2& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

JetMatrix operator*(const JetMatrix& x, const JetMatrix& y);

/// Largest value-part condition number (1-norm estimate) accepted by
/// jet_matrix_inverse.
inline constexpr double kMaxConditionNumber = 1e12;

/// Inverse with derivative propagation: Gaussian elimination with partial
/// pivoting on the value part, carried out in jet arithmetic. Throws
/// SingularMatrixError when the value part is singular or its condition
/// estimate exceeds kMaxConditionNumber.
JetMatrix jet_matrix_inverse(const JetMatrix& m);

}  // namespace cartansym
