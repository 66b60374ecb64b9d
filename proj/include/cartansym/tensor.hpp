#pragma once

// Pointwise tensor calculus on a single chart.
//
// Index conventions used everywhere in this library:
//   * Components are stored upper indices first, then lower, row-major.
//   * Connection coefficients Gamma^l_{m n} take the differentiation direction
//     in the LAST lower slot: nabla_n V^l = d_n V^l + Gamma^l_{m n} V^m.
//   * Torsion T^l_{m n} = Gamma^l_{m n} - Gamma^l_{n m}.
//   * Lorentzian signature is (-,+,...,+).

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cartansym/expr.hpp"
#include "cartansym/jet.hpp"

namespace cartansym {

enum class Signature { Lorentzian, Euclidean };

std::string_view to_string(Signature s);

/// diag(-1, 1, ..., 1) or the identity, as a flat n*n array.
std::vector<double> signature_matrix(Signature s, std::size_t n);

/// Dense tensor of jets at one point. Rank (upper, lower), n^(upper+lower)
/// components.
class TensorValue {
 public:
  TensorValue() = default;
  TensorValue(int upper, int lower, std::size_t dim);

  int upper() const noexcept { return upper_; }
  int lower() const noexcept { return lower_; }
  int rank() const noexcept { return upper_ + lower_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return comps_.size(); }

  template <class... I>
  Jet2& at(I... idx) {
    return comps_[flat({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  const Jet2& at(I... idx) const {
    return comps_[flat({static_cast<std::size_t>(idx)...})];
  }
  Jet2& operator[](std::size_t k) { return comps_[k]; }
  const Jet2& operator[](std::size_t k) const { return comps_[k]; }

  /// Multi-index of flat position k.
  std::vector<std::size_t> unflatten(std::size_t k) const;
  std::size_t flat(std::initializer_list<std::size_t> idx) const;
  std::size_t flat(std::span<const std::size_t> idx) const;

  /// Largest |value| over components.
  double sup_value() const;
  /// Lowest derivative order present among the components.
  int order() const;

 private:
  int upper_ = 0;
  int lower_ = 0;
  std::size_t dim_ = 0;
  std::vector<Jet2> comps_;
};

/// Componentwise difference of value parts, as a sup norm.
double sup_difference(const TensorValue& a, const TensorValue& b);

/// A tensor field: something that evaluates to jets at a chart point.
struct TensorField {
  Chart chart;
  int upper = 0;
  int lower = 0;
  std::function<TensorValue(std::span<const double>)> evaluate;
};

struct MetricSpec {
  Chart chart;
  std::vector<Expr> components;  // n*n, symmetric by construction
  Signature signature = Signature::Lorentzian;
};

struct ConnectionSpec {
  Chart chart;
  std::vector<Expr> components;  // n^3, Gamma^l_{m n} at l*n*n + m*n + n
};

struct TorsionSpec {
  Chart chart;
  std::vector<Expr> components;  // n^3, antisymmetric in the lower pair
};

struct TetradSpec {
  Chart chart;
  std::vector<Expr> components;  // e^a_m at a*n + m
};

struct VectorFieldSpec {
  std::string name;
  Chart chart;
  std::vector<Expr> components;
};

/// Finsler length function over coordinates plus velocities: F(x, y) with the
/// 2n variables (x^0..x^{n-1}, y^0..y^{n-1}).
struct FinslerSpec {
  Chart chart;
  Expr function;
};

/// Riemann-Cartan data: metric plus either torsion or a full connection.
struct RiemannCartanSpec {
  MetricSpec metric;
  std::variant<TorsionSpec, ConnectionSpec> structure;
};

enum class GeometryKind { Affine, Riemannian, RiemannCartan, Weitzenbock, Finsler };

std::string_view to_string(GeometryKind k);

struct GeometrySpec {
  std::string name;
  GeometryKind kind = GeometryKind::Riemannian;
  std::variant<ConnectionSpec, MetricSpec, RiemannCartanSpec, TetradSpec, FinslerSpec> data;

  const Chart& chart() const;
};

/// Components evaluated to jets of the given order.
TensorValue evaluate(const MetricSpec& g, std::span<const double> x, int order = Jet2::kMaxOrder);
TensorValue evaluate(const ConnectionSpec& c, std::span<const double> x, int order = Jet2::kMaxOrder);
TensorValue evaluate(const TorsionSpec& t, std::span<const double> x, int order = Jet2::kMaxOrder);
TensorValue evaluate(const TetradSpec& e, std::span<const double> x, int order = Jet2::kMaxOrder);
TensorValue evaluate(const VectorFieldSpec& v, std::span<const double> x, int order = Jet2::kMaxOrder);

TensorField as_field(const MetricSpec& g);
TensorField as_field(const ConnectionSpec& c);
TensorField as_field(const TorsionSpec& t);
TensorField as_field(const TetradSpec& e);
TensorField as_field(const VectorFieldSpec& v);

/// Matrix inverse of a rank-2 tensor's component matrix (g^{mn} from g_{mn},
/// E^m_a from e^a_m). Result has the transposed index type.
TensorValue inverse(const TensorValue& m);

/// Christoffel symbols from order-2 metric jets. Result has order 1.
TensorValue levi_civita(const TensorValue& g);
TensorValue levi_civita(const MetricSpec& g, std::span<const double> x);

TensorValue torsion_of_connection(const TensorValue& gamma);

/// The metric-compatible connection with torsion T: Levi-Civita plus
/// contortion K_{lmn} = (T_{lmn} - T_{mln} - T_{nlm}) / 2 (first index lowered).
TensorValue connection_from_metric_torsion(const TensorValue& g, const TensorValue& torsion);
TensorValue connection_from_metric_torsion(const MetricSpec& g, const TorsionSpec& t, std::span<const double> x);

/// Gamma^l_{m n} = E^l_a d_n e^a_m.
TensorValue weitzenbock_connection(const TensorValue& e);
TensorValue weitzenbock_connection(const TetradSpec& e, std::span<const double> x);

/// g_{mn} = eta_{ab} e^a_m e^b_n.
TensorValue tetrad_metric(const TensorValue& e, Signature signature);

/// nabla_l g_{mn} = d_l g_{mn} - Gamma^r_{m l} g_{r n} - Gamma^r_{n l} g_{m r},
/// stored with the derivative index first: (0,3) tensor at [l][m][n].
TensorValue metricity_residual(const TensorValue& g, const TensorValue& gamma);

/// Lie derivative of an arbitrary (r,s) tensor along xi. Both arguments are
/// jets at the same point; the result loses one derivative order.
TensorValue lie_derivative(const TensorValue& field, const TensorValue& xi);
TensorValue lie_derivative_tensor(const TensorField& field, const VectorFieldSpec& xi, std::span<const double> x);

/// Lie derivative of connection coefficients; includes the inhomogeneous
/// d_m d_n xi^l term, so xi needs order-2 jets.
TensorValue lie_derivative_connection(const TensorValue& gamma, const TensorValue& xi);
TensorValue lie_derivative_connection(const TensorField& gamma, const VectorFieldSpec& xi,
                                      std::span<const double> x);

/// Lie bracket [xi, zeta]^m = xi^r d_r zeta^m - zeta^r d_r xi^m.
TensorValue lie_bracket(const TensorValue& xi, const TensorValue& zeta);

/// Lie derivative of a tetrad e^a_m, each row a treated as a covector (the
/// frame index is not transformed): xi^r d_r e^a_m + e^a_r d_m xi^r.
TensorValue lie_derivative_tetrad(const TensorValue& e, const TensorValue& xi);

/// Throws ValidationError unless both charts carry the same coordinates.
void require_same_chart(const Chart& a, const Chart& b);

}  // namespace cartansym
