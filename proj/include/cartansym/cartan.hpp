#pragma once

// Frame-bundle picture of symmetry.
//
// The total space of GL(M) is coordinatized by z = (x^m, f^m_a): the base
// point followed by the n*n frame entries (f^m_a at offset n + m*n + a). A
// frame f is a linear bijection R^n -> T_xM whose columns f_a are the images
// of the standard basis.
//
// Two first-order reductive models are supported:
//   AFFINE    G = affine group, H = GL(n), P = GL(M)
//   POINCARE  G = (pseudo-)Poincare group, H = O(eta), P = orthonormal frames
// In both, the translation part of the Cartan connection is the solder form
// e^a = (f^-1)^a_m dx^m and the H part is the connection form
// w^a_b = (f^-1)^a_m (df^m_b + Gamma^m_{r n} f^r_b dx^n).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartansym/tensor.hpp"

namespace cartansym {

enum class ModelKind { Affine, Poincare };

std::string_view to_string(ModelKind k);

struct ModelDescriptor {
  ModelKind kind = ModelKind::Affine;
  std::size_t dim = 0;
  Signature signature = Signature::Lorentzian;  // POINCARE only
  std::vector<double> eta;                      // POINCARE only, n*n

  static ModelDescriptor affine(std::size_t n);
  static ModelDescriptor poincare(std::size_t n, Signature s);

  std::size_t total_dim() const noexcept { return dim + dim * dim; }
  /// dim(h): n^2 for gl(n), n(n-1)/2 for o(eta).
  std::size_t h_dim() const noexcept;
  /// Basis of h as n*n matrices (row a, column b).
  std::vector<std::vector<double>> h_basis() const;
};

struct FramePoint {
  std::vector<double> x;
  std::vector<double> f;  // f^m_a at m*n + a

  std::size_t dim() const noexcept { return x.size(); }
  double frame(std::size_t m, std::size_t a) const { return f[m * dim() + a]; }
  /// Total-space coordinates z.
  std::vector<double> coordinates() const;
};

/// A geometry seen as a Cartan geometry: model plus the connection that
/// enters the h part of A.
struct CartanGeometry {
  std::string name;
  ModelDescriptor model;
  Chart chart;
  std::optional<MetricSpec> metric;  // POINCARE models
  std::function<TensorValue(std::span<const double>)> connection;  // order >= 1 jets
};

/// Affine, Riemannian and Riemann-Cartan geometries only.
CartanGeometry make_cartan_geometry(const GeometrySpec& geom);

/// Coefficients of A over dz^I as first-order jets in z.
struct CartanValue {
  std::size_t n = 0;
  std::size_t total = 0;
  std::vector<Jet2> e_part;  // [a * total + I]
  std::vector<Jet2> h_part;  // [(a * n + b) * total + I]

  const Jet2& e(std::size_t a, std::size_t coord) const { return e_part[a * total + coord]; }
  const Jet2& h(std::size_t a, std::size_t b, std::size_t coord) const { return h_part[(a * n + b) * total + coord]; }
};

/// Components of the frame bundle lift of xi at p, as first-order jets in z:
/// (xi^m, d_r xi^m f^r_a).
struct LiftedField {
  std::size_t n = 0;
  std::vector<Jet2> components;  // total_dim entries
};

LiftedField frame_lift(const VectorFieldSpec& xi, const FramePoint& p);

/// The lift applied to the functions g(f_a, f_b) - eta_ab that cut P out of
/// GL(M). Returns an n*n matrix; zero iff the lift is tangent to P at p.
/// Throws ValidationError if p is not an orthonormal frame.
std::vector<double> tangency_residual(const MetricSpec& g, const VectorFieldSpec& xi, const FramePoint& p);

CartanValue cartan_connection_eval(const CartanGeometry& geom, const FramePoint& p);

/// Coefficients of the Lie derivative of A along the lift, over dz^J.
struct CartanLieDerivative {
  std::size_t n = 0;
  std::size_t total = 0;
  std::vector<double> e_part;  // [a * total + J]
  std::vector<double> h_part;  // [(a * n + b) * total + J]
};

CartanLieDerivative lie_derivative_cartan(const CartanGeometry& geom, const VectorFieldSpec& xi,
                                          const FramePoint& p);

/// Basis of T_pP as vectors in z-coordinates. AFFINE: all coordinate
/// directions. POINCARE: n horizontal lifts d_m - Gamma^r_{s m} f^s_a d/df^r_a
/// followed by the vertical fields f * Lambda_k.
std::vector<std::vector<double>> tangent_basis(const CartanGeometry& geom, const FramePoint& p);

/// sup over A-components and tangent basis vectors of |(L A)(V)|.
double restricted_sup(const CartanLieDerivative& lie, std::span<const std::vector<double>> basis);

/// Evaluate the h part of A on a z-vector: returns the n*n matrix w(V).
std::vector<double> h_part_on(const CartanValue& a, std::span<const double> v);
/// Evaluate the solder form on a z-vector.
std::vector<double> e_part_on(const CartanValue& a, std::span<const double> v);

/// Frames at x. With a metric: signature-aware Gram-Schmidt of the coordinate
/// frame (timelike vector first), then right-multiplied by exp(eps Lambda)
/// for a random element Lambda of o(eta) and eps <= max_epsilon. Without a
/// metric: identity plus a random perturbation, det-guarded. Frame k depends
/// only on (seed, k).
std::vector<FramePoint> sample_frames(const MetricSpec* g, std::span<const double> x, std::size_t count,
                                      std::uint64_t seed, double max_epsilon = 0.5);

/// sup |g(f_a, f_b) - eta_ab|.
double orthonormality_residual(const MetricSpec& g, const FramePoint& p);

}  // namespace cartansym
