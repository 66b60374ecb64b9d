#include "cartansym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "cartansym/error.hpp"
#include "cartansym/sampling.hpp"
#include "parallel.hpp"

namespace cartansym {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Direct: return "direct";
    case Mode::Cartan: return "cartan";
    case Mode::Both: return "both";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) { return v == Verdict::Symmetric ? "symmetric" : "not_symmetric"; }

const Residual* CheckReport::find(std::string_view name) const {
  for (const auto& r : residuals)
    if (r.name == name) return &r;
  return nullptr;
}

double CheckReport::decisive() const {
  double d = 0.0;
  for (const auto& r : residuals) d = std::max(d, r.normalized);
  return d;
}

namespace {

std::string describe_point(std::span<const double> x) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", x[i]);
    s += buf;
  }
  return s + ")";
}

/// Run fn, re-raising evaluation failures with the sample point attached.
template <class Fn>
auto at_sample(std::span<const double> x, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " at sample point " + describe_point(x));
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(std::string(e.what()) + " at sample point " + describe_point(x));
  }
}

struct Sup {
  double raw = 0.0;
  double scale = 0.0;
};

Residual make_residual(std::string name, double raw, double scale) {
  Residual r;
  r.name = std::move(name);
  r.raw = raw;
  r.normalized = scale > 0.0 ? raw / scale : raw;
  return r;
}

CheckReport start_report(const VectorFieldSpec& xi, GeometryKind kind, Mode mode, const CheckConfig& cfg) {
  CheckReport rep;
  rep.geometry_kind = kind;
  rep.vector = xi.name;
  rep.mode = mode;
  rep.sample_count = cfg.samples;
  rep.tolerance = cfg.tolerance;
  rep.seed = cfg.seed;
  return rep;
}

void decide(CheckReport& rep) {
  bool ok = true;
  for (const auto& r : rep.residuals)
    if (!(r.normalized < rep.tolerance)) ok = false;
  rep.verdict = ok ? Verdict::Symmetric : Verdict::NotSymmetric;
}

template <class Fn>
std::vector<std::vector<Sup>> per_sample(const Chart& chart, const CheckConfig& cfg, Fn&& fn) {
  const auto pts = sample_points(chart, cfg.samples, cfg.seed);
  return detail::parallel_map<std::vector<Sup>>(pts.size(), cfg.threads, [&](std::size_t i) {
    return at_sample(pts[i], [&] { return fn(i, std::span<const double>(pts[i])); });
  });
}

std::vector<Sup> reduce(const std::vector<std::vector<Sup>>& samples, std::size_t count) {
  std::vector<Sup> out(count);
  for (const auto& s : samples)
    for (std::size_t k = 0; k < count; ++k) {
      out[k].raw = std::max(out[k].raw, s[k].raw);
      out[k].scale = std::max(out[k].scale, s[k].scale);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

CheckReport check_affine(const ConnectionSpec& gamma, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  require_same_chart(gamma.chart, xi.chart);
  const auto samples = per_sample(gamma.chart, cfg, [&](std::size_t, std::span<const double> x) {
    const TensorValue g = evaluate(gamma, x);
    const TensorValue lie = lie_derivative_connection(g, evaluate(xi, x));
    return std::vector<Sup>{{lie.sup_value(), g.sup_value()}};
  });
  const auto sup = reduce(samples, 1);
  CheckReport rep = start_report(xi, GeometryKind::Affine, Mode::Direct, cfg);
  rep.residuals.push_back(make_residual("lie_Gamma", sup[0].raw, sup[0].scale));
  decide(rep);
  return rep;
}

CheckReport check_riemannian(const TensorField& g, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  require_same_chart(g.chart, xi.chart);
  const auto samples = per_sample(g.chart, cfg, [&](std::size_t, std::span<const double> x) {
    const TensorValue gx = g.evaluate(x);
    const TensorValue lie = lie_derivative(gx, evaluate(xi, x));
    return std::vector<Sup>{{lie.sup_value(), gx.sup_value()}};
  });
  const auto sup = reduce(samples, 1);
  CheckReport rep = start_report(xi, GeometryKind::Riemannian, Mode::Direct, cfg);
  rep.residuals.push_back(make_residual("lie_g", sup[0].raw, sup[0].scale));
  decide(rep);
  return rep;
}

CheckReport check_riemannian(const MetricSpec& g, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  return check_riemannian(as_field(g), xi, cfg);
}

CheckReport check_riemann_cartan(const TensorField& g, const TensorField& t, const VectorFieldSpec& xi,
                                 const CheckConfig& cfg) {
  require_same_chart(g.chart, xi.chart);
  require_same_chart(t.chart, xi.chart);
  const auto samples = per_sample(g.chart, cfg, [&](std::size_t, std::span<const double> x) {
    const TensorValue gx = g.evaluate(x);
    const TensorValue tx = t.evaluate(x);
    const TensorValue v = evaluate(xi, x);
    const TensorValue lie_g = lie_derivative(gx, v);
    const TensorValue lie_t = lie_derivative(tx, v);
    return std::vector<Sup>{{lie_g.sup_value(), gx.sup_value()}, {lie_t.sup_value(), tx.sup_value()}};
  });
  const auto sup = reduce(samples, 2);
  CheckReport rep = start_report(xi, GeometryKind::RiemannCartan, Mode::Direct, cfg);
  rep.residuals.push_back(make_residual("lie_g", sup[0].raw, sup[0].scale));
  rep.residuals.push_back(make_residual("lie_T", sup[1].raw, sup[1].scale));
  decide(rep);
  return rep;
}

CheckReport check_riemann_cartan(const MetricSpec& g, const TorsionSpec& t, const VectorFieldSpec& xi,
                                 const CheckConfig& cfg) {
  return check_riemann_cartan(as_field(g), as_field(t), xi, cfg);
}

// ---------------------------------------------------------------------------

LorentzLambda weitzenbock_lambda(const TetradSpec& e, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  require_same_chart(e.chart, xi.chart);
  const std::size_t n = e.chart.dim();
  const auto pts = sample_points(e.chart, cfg.samples, cfg.seed);
  const auto lambdas = detail::parallel_map<std::vector<double>>(pts.size(), cfg.threads, [&](std::size_t i) {
    return at_sample(pts[i], [&] {
      const TensorValue ex = evaluate(e, pts[i]);
      const TensorValue lie = lie_derivative_tetrad(ex, evaluate(xi, pts[i]));
      const TensorValue inv = inverse(ex);  // E^m_b at [m][b]
      std::vector<double> lam(n * n, 0.0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t m = 0; m < n; ++m) lam[a * n + b] += lie.at(a, m).value() * inv.at(m, b).value();
      return lam;
    });
  });

  const auto eta = signature_matrix(Signature::Lorentzian, n);
  LorentzLambda out;
  out.lambda.assign(n * n, 0.0);
  for (const auto& lam : lambdas)
    for (std::size_t k = 0; k < n * n; ++k) out.lambda[k] += lam[k];
  if (!lambdas.empty())
    for (double& v : out.lambda) v /= static_cast<double>(lambdas.size());

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t k = 0; k < n * n; ++k)
      out.mean_deviation = std::max(out.mean_deviation, std::abs(lambdas[i][k] - out.lambda[k]));
    for (std::size_t j = i + 1; j < lambdas.size(); ++j)
      for (std::size_t k = 0; k < n * n; ++k)
        out.constancy_spread = std::max(out.constancy_spread, std::abs(lambdas[i][k] - lambdas[j][k]));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double s = eta[a * n + a] * lambdas[i][a * n + b] + lambdas[i][b * n + a] * eta[b * n + b];
        out.antisymmetry = std::max(out.antisymmetry, std::abs(s));
      }
  }
  return out;
}

CheckReport check_weitzenbock(const TetradSpec& e, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  const LorentzLambda lam = weitzenbock_lambda(e, xi, cfg);
  CheckReport rep = start_report(xi, GeometryKind::Weitzenbock, Mode::Direct, cfg);
  rep.residuals.push_back(make_residual("lambda_constancy", lam.constancy_spread, 0.0));
  rep.residuals.push_back(make_residual("lambda_antisymmetry", lam.antisymmetry, 0.0));
  rep.lambda_estimate = lam.lambda;
  rep.lambda_mean_deviation = lam.mean_deviation;
  decide(rep);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Jet2> phase_space_jets(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<Jet2> vars;
  vars.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) vars.push_back(Jet2::variable(x[i], i, 2 * n, 1));
  for (std::size_t i = 0; i < n; ++i) vars.push_back(Jet2::variable(y[i], n + i, 2 * n, 1));
  return vars;
}

double finsler_value(const FinslerSpec& f, std::span<const double> x, std::span<const double> y) {
  std::vector<double> z(x.begin(), x.end());
  z.insert(z.end(), y.begin(), y.end());
  return f.function.eval(z);
}

constexpr double kMinFinslerValue = 1e-6;
constexpr std::size_t kMaxVelocityDraws = 1000;

/// Velocity uniform in direction, radius uniform in [0.5, 2], |F| >= 1e-6.
std::vector<double> draw_velocity(const FinslerSpec& f, std::span<const double> x, SampleRng& rng) {
  const std::size_t n = x.size();
  std::vector<double> y(n);
  for (std::size_t attempt = 0; attempt < kMaxVelocityDraws; ++attempt) {
    double norm2 = 0.0;
    for (auto& c : y) {
      c = rng.normal();
      norm2 += c * c;
    }
    if (norm2 == 0.0) continue;
    const double radius = rng.uniform(0.5, 2.0);
    const double s = radius / std::sqrt(norm2);
    for (auto& c : y) c *= s;
    try {
      if (std::abs(finsler_value(f, x, y)) >= kMinFinslerValue) return y;
    } catch (const DomainError&) {
    }
  }
  throw ValidationError("could not draw a velocity with F away from zero at sample point " + describe_point(x));
}

}  // namespace

double tangent_lift_apply(const FinslerSpec& f, const VectorFieldSpec& xi, std::span<const double> x,
                          std::span<const double> y) {
  require_same_chart(f.chart, xi.chart);
  const std::size_t n = x.size();
  if (y.size() != n || n != f.chart.dim()) throw std::invalid_argument("tangent_lift_apply: dimension mismatch");
  const auto vars = phase_space_jets(x, y);
  const Jet2 fj = f.function.eval_jet(vars);
  const TensorValue v = evaluate(xi, x, 1);
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    s += v[m].value() * fj.grad(m);
    double dy = 0.0;
    for (std::size_t r = 0; r < n; ++r) dy += y[r] * v[m].grad(r);
    s += dy * fj.grad(n + m);
  }
  return s;
}

void validate_finsler_homogeneity(const FinslerSpec& f, std::uint64_t seed) {
  constexpr std::size_t kChecks = 16;
  constexpr double kScales[] = {0.5, 2.0, 3.7};
  const auto pts = sample_points(f.chart, kChecks, seed, Stream::Validation);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    SampleRng rng(seed, static_cast<std::uint64_t>(Stream::Validation), 1000 + i);
    const auto y = draw_velocity(f, pts[i], rng);
    const double base = finsler_value(f, pts[i], y);
    for (double s : kScales) {
      std::vector<double> ys(y);
      for (auto& c : ys) c *= s;
      const double scaled = finsler_value(f, pts[i], ys);
      if (std::abs(scaled - s * base) > 1e-9 * std::abs(s * base))
        throw ValidationError("Finsler function is not positively homogeneous of degree 1 in the velocities");
    }
  }
}

FinslerSpec finsler_from_metric(const MetricSpec& g) {
  const std::size_t n = g.chart.dim();
  std::vector<Expr> vel;
  for (std::size_t i = 0; i < n; ++i) vel.push_back(Expr::variable("d" + g.chart.coord_names[i], n + i));
  std::optional<Expr> quad;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k) {
      const Expr& c = g.components[m * n + k];
      if (c.is_zero()) continue;
      Expr term = c * vel[m] * vel[k];
      quad = quad ? *quad + term : term;
    }
  if (!quad) throw ValidationError("metric has no nonzero components");
  Expr inner = g.signature == Signature::Lorentzian ? Expr::call(UnaryFunction::Abs, *quad) : *quad;
  return FinslerSpec{g.chart, Expr::call(UnaryFunction::Sqrt, inner)};
}

CheckReport check_finsler(const FinslerSpec& f, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  require_same_chart(f.chart, xi.chart);
  validate_finsler_homogeneity(f, cfg.seed);
  const std::size_t velocities = std::max<std::size_t>(cfg.frames, 1);
  const auto samples = per_sample(f.chart, cfg, [&](std::size_t i, std::span<const double> x) {
    const std::uint64_t sub = derive_seed(cfg.seed, i);
    Sup raw_sup;
    Sup rel_sup;
    for (std::size_t k = 0; k < velocities; ++k) {
      SampleRng rng(sub, static_cast<std::uint64_t>(Stream::Velocities), k);
      const auto y = draw_velocity(f, x, rng);
      const double lift = std::abs(tangent_lift_apply(f, xi, x, y));
      const double fv = std::abs(finsler_value(f, x, y));
      raw_sup.raw = std::max(raw_sup.raw, lift);
      rel_sup.raw = std::max(rel_sup.raw, lift / fv);
    }
    return std::vector<Sup>{raw_sup, rel_sup};
  });
  const auto sup = reduce(samples, 2);
  CheckReport rep = start_report(xi, GeometryKind::Finsler, Mode::Direct, cfg);
  rep.frames_per_sample = velocities;
  Residual r;
  r.name = "finsler_lift";
  r.raw = sup[0].raw;
  r.normalized = sup[1].raw;
  rep.residuals.push_back(r);
  decide(rep);
  return rep;
}

// ---------------------------------------------------------------------------

CheckReport check_cartan(const CartanGeometry& geom, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  require_same_chart(geom.chart, xi.chart);
  const MetricSpec* metric = geom.metric ? &*geom.metric : nullptr;
  const bool on_subbundle = geom.model.kind == ModelKind::Poincare;
  const auto samples = per_sample(geom.chart, cfg, [&](std::size_t i, std::span<const double> x) {
    const auto frames = sample_frames(metric, x, cfg.frames, derive_seed(cfg.seed, i));
    Sup tangency;
    Sup lie_a;
    for (const auto& p : frames) {
      if (on_subbundle) {
        for (double v : tangency_residual(*metric, xi, p)) tangency.raw = std::max(tangency.raw, std::abs(v));
      }
      const auto lie = lie_derivative_cartan(geom, xi, p);
      const auto basis = tangent_basis(geom, p);
      lie_a.raw = std::max(lie_a.raw, restricted_sup(lie, basis));
    }
    return std::vector<Sup>{tangency, lie_a};
  });
  const auto sup = reduce(samples, 2);
  CheckReport rep = start_report(xi, on_subbundle ? GeometryKind::Riemannian : GeometryKind::Affine, Mode::Cartan, cfg);
  rep.geometry = geom.name;
  rep.frames_per_sample = cfg.frames;
  rep.residuals.push_back(make_residual("tangency", sup[0].raw, 0.0));
  rep.residuals.push_back(make_residual("lie_A", sup[1].raw, 0.0));
  decide(rep);
  return rep;
}

CheckReport check_direct(const GeometrySpec& geom, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  CheckReport rep;
  switch (geom.kind) {
    case GeometryKind::Affine:
      rep = check_affine(std::get<ConnectionSpec>(geom.data), xi, cfg);
      break;
    case GeometryKind::Riemannian:
      rep = check_riemannian(std::get<MetricSpec>(geom.data), xi, cfg);
      break;
    case GeometryKind::RiemannCartan: {
      const auto& rc = std::get<RiemannCartanSpec>(geom.data);
      TensorField torsion;
      if (const auto* t = std::get_if<TorsionSpec>(&rc.structure)) {
        torsion = as_field(*t);
      } else {
        const auto& c = std::get<ConnectionSpec>(rc.structure);
        torsion = {c.chart, 1, 2, [c](std::span<const double> x) { return torsion_of_connection(evaluate(c, x)); }};
      }
      rep = check_riemann_cartan(as_field(rc.metric), torsion, xi, cfg);
      break;
    }
    case GeometryKind::Weitzenbock:
      rep = check_weitzenbock(std::get<TetradSpec>(geom.data), xi, cfg);
      break;
    case GeometryKind::Finsler:
      rep = check_finsler(std::get<FinslerSpec>(geom.data), xi, cfg);
      break;
  }
  rep.geometry = geom.name;
  rep.geometry_kind = geom.kind;
  return rep;
}

EquivalenceResult equivalence_harness(const GeometrySpec& geom, const VectorFieldSpec& xi, const CheckConfig& cfg) {
  if (geom.kind != GeometryKind::Affine && geom.kind != GeometryKind::Riemannian &&
      geom.kind != GeometryKind::RiemannCartan)
    throw ValidationError("Cartan mode is available for affine, riemannian and riemann_cartan geometries only");
  EquivalenceResult res;
  res.direct = check_direct(geom, xi, cfg);
  res.cartan = check_cartan(make_cartan_geometry(geom), xi, cfg);
  res.cartan.geometry_kind = geom.kind;
  const double tol = cfg.tolerance;
  auto in_band = [tol](const CheckReport& r) {
    const double d = r.decisive();
    return d >= tol && d <= 10.0 * tol;
  };
  res.inconclusive = in_band(res.direct) || in_band(res.cartan);
  res.agreement = res.direct.verdict == res.cartan.verdict && !res.inconclusive;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

struct FlowState {
  std::vector<double> x;
  std::vector<double> jac;  // J^m_k at m*n + k
};

FlowState flow_rhs(const VectorFieldSpec& xi, const FlowState& s) {
  const std::size_t n = s.x.size();
  const TensorValue v = evaluate(xi, s.x, 1);
  FlowState d{std::vector<double>(n), std::vector<double>(n * n, 0.0)};
  for (std::size_t m = 0; m < n; ++m) {
    d.x[m] = v[m].value();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) d.jac[m * n + k] += v[m].grad(r) * s.jac[r * n + k];
  }
  return d;
}

FlowState axpy(const FlowState& s, double h, const FlowState& d) {
  FlowState r = s;
  for (std::size_t i = 0; i < r.x.size(); ++i) r.x[i] += h * d.x[i];
  for (std::size_t i = 0; i < r.jac.size(); ++i) r.jac[i] += h * d.jac[i];
  return r;
}

FlowState integrate_flow(const Chart& chart, const VectorFieldSpec& xi, std::span<const double> x, double t,
                         int steps) {
  const std::size_t n = x.size();
  FlowState s{std::vector<double>(x.begin(), x.end()), std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) s.jac[i * n + i] = 1.0;
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    const FlowState k1 = flow_rhs(xi, s);
    const FlowState k2 = flow_rhs(xi, axpy(s, 0.5 * h, k1));
    const FlowState k3 = flow_rhs(xi, axpy(s, 0.5 * h, k2));
    const FlowState k4 = flow_rhs(xi, axpy(s, h, k3));
    for (std::size_t i = 0; i < n; ++i) s.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
    for (std::size_t i = 0; i < n * n; ++i)
      s.jac[i] += h / 6.0 * (k1.jac[i] + 2.0 * k2.jac[i] + 2.0 * k3.jac[i] + k4.jac[i]);
    if (chart.excluded(s.x)) throw DomainError("flow leaves the chart domain at " + describe_point(s.x));
  }
  return s;
}

std::vector<double> pullback_metric(const MetricSpec& g, const FlowState& s) {
  const std::size_t n = s.x.size();
  std::vector<double> gx(n * n);
  for (std::size_t k = 0; k < n * n; ++k) gx[k] = g.components[k].eval(s.x);
  std::vector<double> out(n * n, 0.0);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) acc += gx[a * n + b] * s.jac[a * n + m] * s.jac[b * n + k];
      out[m * n + k] = acc;
    }
  return out;
}

}  // namespace

TensorValue flow_pullback_oracle(const MetricSpec& g, const VectorFieldSpec& xi, std::span<const double> x,
                                 double t, int steps) {
  require_same_chart(g.chart, xi.chart);
  if (!(t > 0.0) || steps < 1) throw std::invalid_argument("flow_pullback_oracle: t > 0 and steps >= 1 required");
  const std::size_t n = x.size();
  const auto forward = pullback_metric(g, integrate_flow(g.chart, xi, x, t, steps));
  const auto backward = pullback_metric(g, integrate_flow(g.chart, xi, x, -t, steps));
  TensorValue out(0, 2, n);
  for (std::size_t k = 0; k < n * n; ++k) out[k] = Jet2((forward[k] - backward[k]) / (2.0 * t));
  return out;
}

OracleStudy flow_oracle_study(const MetricSpec& g, const VectorFieldSpec& xi, std::span<const double> steps,
                              std::size_t points, std::uint64_t seed) {
  require_same_chart(g.chart, xi.chart);
  OracleStudy st;
  st.steps.assign(steps.begin(), steps.end());
  st.errors.assign(steps.size(), 0.0);
  const auto field = as_field(g);
  for (const auto& x : sample_points(g.chart, points, seed)) {
    const TensorValue exact = lie_derivative_tensor(field, xi, x);
    for (std::size_t k = 0; k < steps.size(); ++k)
      st.errors[k] = std::max(st.errors[k], sup_difference(flow_pullback_oracle(g, xi, x, steps[k]), exact));
  }
  if (steps.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(steps.size());
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const double lx = std::log(steps[k]);
      const double ly = std::log(std::max(st.errors[k], 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    st.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return st;
}

TensorField tetrad_metric_field(const TetradSpec& e, Signature s) {
  return {e.chart, 0, 2, [e, s](std::span<const double> x) { return tetrad_metric(evaluate(e, x), s); }};
}

TensorField tetrad_torsion_field(const TetradSpec& e) {
  return {e.chart, 1, 2,
          [e](std::span<const double> x) { return torsion_of_connection(weitzenbock_connection(evaluate(e, x))); }};
}

OracleStudy standard_oracle_study(const MetricSpec& g, const VectorFieldSpec& xi, std::size_t points,
                                  std::uint64_t seed) {
  static constexpr double steps[] = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
  static constexpr double probe[] = {1e-3};
  OracleStudy st = flow_oracle_study(g, xi, steps, points, seed);
  const OracleStudy at = flow_oracle_study(g, xi, probe, points, seed);
  st.steps.push_back(probe[0]);
  st.errors.push_back(at.errors[0]);
  return st;
}

bool oracle_slope_measurable(const OracleStudy& st) {
  return std::ranges::any_of(st.errors, [](double e) { return e > kOracleRoundingFloor; });
}

bool oracle_passes(const OracleStudy& st) {
  if (st.errors.empty() || !(st.errors.back() < kOracleMaxError)) return false;
  return !oracle_slope_measurable(st) || (st.slope >= 1.8 && st.slope <= 2.2);
}

}  // namespace cartansym
