#pragma once

// Symmetry verdicts for a candidate vector field.
//
// Direct mode checks the classical condition of each geometry kind:
//   affine          L_xi Gamma = 0
//   riemannian      L_xi g = 0
//   riemann_cartan  L_xi g = 0 and L_xi T = 0
//   weitzenbock     L_xi e = lambda e, lambda constant and eta-antisymmetric
//   finsler         the tangent-bundle lift of xi annihilates F
// Cartan mode checks that the frame-bundle lift is tangent to P and
// preserves the Cartan connection.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartansym/cartan.hpp"
#include "cartansym/tensor.hpp"

namespace cartansym {

enum class Mode { Direct, Cartan, Both };
enum class Verdict { Symmetric, NotSymmetric };

std::string_view to_string(Mode m);
std::string_view to_string(Verdict v);

inline constexpr double kDefaultTolerance = 1e-9;

struct CheckConfig {
  double tolerance = kDefaultTolerance;
  std::size_t samples = 40;
  /// Frames (Cartan mode) or velocities (Finsler) per base point.
  std::size_t frames = 5;
  std::uint64_t seed = 0;
  Mode mode = Mode::Direct;
  /// 0: CARTANSYM_THREADS from the environment, else the hardware count.
  unsigned threads = 0;
};

struct Residual {
  std::string name;
  double raw = 0.0;
  /// raw divided by the sup of the field's own components over the samples;
  /// equal to raw for dimensionless residuals or a vanishing field.
  double normalized = 0.0;
};

struct CheckReport {
  std::string geometry;
  GeometryKind geometry_kind = GeometryKind::Riemannian;
  std::string vector;
  Mode mode = Mode::Direct;
  std::size_t sample_count = 0;
  std::size_t frames_per_sample = 0;  // 0 when unused
  std::vector<Residual> residuals;
  Verdict verdict = Verdict::NotSymmetric;
  std::optional<std::vector<double>> lambda_estimate;  // n*n, sample mean
  std::optional<double> lambda_mean_deviation;         // sup |lambda_i - mean|
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;

  const Residual* find(std::string_view name) const;
  /// Largest normalized residual: the value the verdict is decided on.
  double decisive() const;
};

/// The infinitesimal Lorentz transformation recovered from L_xi e = lambda e.
struct LorentzLambda {
  std::vector<double> lambda;      // sample mean, n*n, lambda^a_b at a*n + b
  double constancy_spread = 0.0;   // max pairwise sup-difference across samples
  double mean_deviation = 0.0;     // max sup-difference from the mean
  double antisymmetry = 0.0;       // sup |eta lambda + lambda^T eta| over samples
};

CheckReport check_affine(const ConnectionSpec& gamma, const VectorFieldSpec& xi, const CheckConfig& cfg);
CheckReport check_riemannian(const MetricSpec& g, const VectorFieldSpec& xi, const CheckConfig& cfg);
CheckReport check_riemannian(const TensorField& g, const VectorFieldSpec& xi, const CheckConfig& cfg);
CheckReport check_riemann_cartan(const MetricSpec& g, const TorsionSpec& t, const VectorFieldSpec& xi,
                                 const CheckConfig& cfg);
CheckReport check_riemann_cartan(const TensorField& g, const TensorField& t, const VectorFieldSpec& xi,
                                 const CheckConfig& cfg);
CheckReport check_weitzenbock(const TetradSpec& e, const VectorFieldSpec& xi, const CheckConfig& cfg);
CheckReport check_finsler(const FinslerSpec& f, const VectorFieldSpec& xi, const CheckConfig& cfg);

/// Lambda statistics behind check_weitzenbock.
LorentzLambda weitzenbock_lambda(const TetradSpec& e, const VectorFieldSpec& xi, const CheckConfig& cfg);

/// xi^m dF/dx^m + y^r d_r xi^m dF/dy^m at (x, y).
double tangent_lift_apply(const FinslerSpec& f, const VectorFieldSpec& xi, std::span<const double> x,
                          std::span<const double> y);

/// Throws ValidationError unless F(x, s y) == s F(x, y) for s in {0.5, 2, 3.7}
/// at seeded samples (relative error 1e-9).
void validate_finsler_homogeneity(const FinslerSpec& f, std::uint64_t seed = 0);

/// F = sqrt(|g_mn y^m y^n|) (without abs for Euclidean signature).
FinslerSpec finsler_from_metric(const MetricSpec& g);

/// Frame-bundle verdict: residuals "tangency" and "lie_A".
CheckReport check_cartan(const CartanGeometry& geom, const VectorFieldSpec& xi, const CheckConfig& cfg);

/// Direct-mode verdict for any geometry kind.
CheckReport check_direct(const GeometrySpec& geom, const VectorFieldSpec& xi, const CheckConfig& cfg);

struct EquivalenceResult {
  CheckReport direct;
  CheckReport cartan;
  bool agreement = false;
  /// A decisive residual fell in (tol, 10 tol].
  bool inconclusive = false;
};

EquivalenceResult equivalence_harness(const GeometrySpec& geom, const VectorFieldSpec& xi, const CheckConfig& cfg);

/// Central difference (phi_t^* g - phi_{-t}^* g) / (2t) at x, with the flow
/// and its Jacobian integrated by classical RK4 in `steps` fixed steps.
/// Throws DomainError if the flow enters an excluded region.
TensorValue flow_pullback_oracle(const MetricSpec& g, const VectorFieldSpec& xi, std::span<const double> x,
                                 double t, int steps = 32);

/// Flow-oracle error against the jet Lie derivative, max over seeded base
/// points and components, for each step t; slope is the least-squares
/// log-log slope of error against t.
struct OracleStudy {
  std::vector<double> steps;
  std::vector<double> errors;
  double slope = 0.0;
};

OracleStudy flow_oracle_study(const MetricSpec& g, const VectorFieldSpec& xi, std::span<const double> steps,
                              std::size_t points, std::uint64_t seed = 0);

/// The study behind the oracle table: slope over t = 1e-2, 5e-3, 2.5e-3,
/// 1.25e-3, then the probe t = 1e-3 appended as the last entry.
OracleStudy standard_oracle_study(const MetricSpec& g, const VectorFieldSpec& xi, std::size_t points,
                                  std::uint64_t seed = 0);

inline constexpr double kOracleMaxError = 1e-5;
/// Below this the errors are rounding noise and carry no slope.
inline constexpr double kOracleRoundingFloor = 1e-9;

bool oracle_slope_measurable(const OracleStudy& st);
/// Last error below kOracleMaxError, and a slope in [1.8, 2.2] when measurable.
bool oracle_passes(const OracleStudy& st);

/// Metric g_e = eta_ab e^a e^b and Weitzenbock torsion of a tetrad, as fields.
TensorField tetrad_metric_field(const TetradSpec& e, Signature s = Signature::Lorentzian);
TensorField tetrad_torsion_field(const TetradSpec& e);

}  // namespace cartansym
