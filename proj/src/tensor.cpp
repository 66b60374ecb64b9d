#include "cartansym/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cartansym/error.hpp"

namespace cartansym {

std::string_view to_string(Signature s) { return s == Signature::Lorentzian ? "lorentzian" : "euclidean"; }

std::string_view to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::Affine: return "affine";
    case GeometryKind::Riemannian: return "riemannian";
    case GeometryKind::RiemannCartan: return "riemann_cartan";
    case GeometryKind::Weitzenbock: return "weitzenbock";
    case GeometryKind::Finsler: return "finsler";
  }
  return "unknown";
}

std::vector<double> signature_matrix(Signature s, std::size_t n) {
  std::vector<double> eta(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) eta[i * n + i] = 1.0;
  if (s == Signature::Lorentzian && n > 0) eta[0] = -1.0;
  return eta;
}

const Chart& GeometrySpec::chart() const {
  return std::visit(
      [](const auto& d) -> const Chart& {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, RiemannCartanSpec>) {
          return d.metric.chart;
        } else {
          return d.chart;
        }
      },
      data);
}

// ---------------------------------------------------------------------------

TensorValue::TensorValue(int upper, int lower, std::size_t dim) : upper_(upper), lower_(lower), dim_(dim) {
  std::size_t count = 1;
  for (int k = 0; k < upper + lower; ++k) count *= dim;
  comps_.resize(count);
}

std::size_t TensorValue::flat(std::initializer_list<std::size_t> idx) const {
  return flat(std::span<const std::size_t>(idx.begin(), idx.size()));
}

std::size_t TensorValue::flat(std::span<const std::size_t> idx) const {
  if (idx.size() != static_cast<std::size_t>(rank())) throw std::out_of_range("TensorValue: wrong index count");
  std::size_t k = 0;
  for (std::size_t i : idx) {
    if (i >= dim_) throw std::out_of_range("TensorValue: index out of range");
    k = k * dim_ + i;
  }
  return k;
}

std::vector<std::size_t> TensorValue::unflatten(std::size_t k) const {
  std::vector<std::size_t> idx(static_cast<std::size_t>(rank()));
  for (std::size_t p = idx.size(); p-- > 0;) {
    idx[p] = k % dim_;
    k /= dim_;
  }
  return idx;
}

double TensorValue::sup_value() const {
  double s = 0.0;
  for (const auto& c : comps_) s = std::max(s, std::abs(c.value()));
  return s;
}

int TensorValue::order() const {
  int o = Jet2::kMaxOrder;
  for (const auto& c : comps_) o = std::min(o, c.order());
  return o;
}

double sup_difference(const TensorValue& a, const TensorValue& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sup_difference: shape mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k].value() - b[k].value()));
  return s;
}

void require_same_chart(const Chart& a, const Chart& b) {
  if (!a.same_coordinates(b)) throw ValidationError("chart mismatch: fields are defined on different coordinates");
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Jet2> variable_jets(std::span<const double> x, int order) {
  std::vector<Jet2> vars;
  vars.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vars.push_back(Jet2::variable(x[i], i, x.size(), order));
  return vars;
}

TensorValue evaluate_components(const Chart& chart, const std::vector<Expr>& comps, int upper, int lower,
                                std::span<const double> x, int order) {
  if (x.size() != chart.dim()) throw std::invalid_argument("evaluation point has the wrong dimension");
  const auto vars = variable_jets(x, order);
  TensorValue t(upper, lower, chart.dim());
  if (comps.size() != t.size()) throw std::invalid_argument("component table has the wrong size");
  for (std::size_t k = 0; k < comps.size(); ++k) t[k] = comps[k].is_zero() ? Jet2(0.0) : comps[k].eval_jet(vars);
  return t;
}

}  // namespace

TensorValue evaluate(const MetricSpec& g, std::span<const double> x, int order) {
  return evaluate_components(g.chart, g.components, 0, 2, x, order);
}
TensorValue evaluate(const ConnectionSpec& c, std::span<const double> x, int order) {
  return evaluate_components(c.chart, c.components, 1, 2, x, order);
}
TensorValue evaluate(const TorsionSpec& t, std::span<const double> x, int order) {
  return evaluate_components(t.chart, t.components, 1, 2, x, order);
}
TensorValue evaluate(const TetradSpec& e, std::span<const double> x, int order) {
  return evaluate_components(e.chart, e.components, 1, 1, x, order);
}
TensorValue evaluate(const VectorFieldSpec& v, std::span<const double> x, int order) {
  return evaluate_components(v.chart, v.components, 1, 0, x, order);
}

TensorField as_field(const MetricSpec& g) {
  return {g.chart, 0, 2, [g](std::span<const double> x) { return evaluate(g, x); }};
}
TensorField as_field(const ConnectionSpec& c) {
  return {c.chart, 1, 2, [c](std::span<const double> x) { return evaluate(c, x); }};
}
TensorField as_field(const TorsionSpec& t) {
  return {t.chart, 1, 2, [t](std::span<const double> x) { return evaluate(t, x); }};
}
TensorField as_field(const TetradSpec& e) {
  return {e.chart, 1, 1, [e](std::span<const double> x) { return evaluate(e, x); }};
}
TensorField as_field(const VectorFieldSpec& v) {
  return {v.chart, 1, 0, [v](std::span<const double> x) { return evaluate(v, x); }};
}

// ---------------------------------------------------------------------------

TensorValue inverse(const TensorValue& m) {
  if (m.rank() != 2) throw std::invalid_argument("inverse: rank-2 tensor required");
  const std::size_t n = m.dim();
  JetMatrix mat(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mat(i, j) = m.at(i, j);
  const JetMatrix inv = jet_matrix_inverse(mat);
  TensorValue r(m.lower(), m.upper(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.at(i, j) = inv(i, j);
  return r;
}

TensorValue levi_civita(const TensorValue& g) {
  const std::size_t n = g.dim();
  const TensorValue ginv = inverse(g);
  // dg[s][m][n] = d_s g_{mn}
  std::vector<Jet2> dg(n * n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) dg[(s * n + a) * n + b] = g.at(a, b).partial(s);
  auto d = [&](std::size_t s, std::size_t a, std::size_t b) -> const Jet2& { return dg[(s * n + a) * n + b]; };

  TensorValue gamma(1, 2, n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t nu = m; nu < n; ++nu) {
      // Lowered symbol Gamma_{s m nu}, then raise.
      std::vector<Jet2> low(n);
      for (std::size_t s = 0; s < n; ++s) low[s] = 0.5 * (d(m, s, nu) + d(nu, s, m) - d(s, m, nu));
      for (std::size_t l = 0; l < n; ++l) {
        Jet2 acc;
        for (std::size_t s = 0; s < n; ++s) acc += ginv.at(l, s) * low[s];
        gamma.at(l, m, nu) = acc;
        gamma.at(l, nu, m) = std::move(acc);
      }
    }
  }
  return gamma;
}

TensorValue levi_civita(const MetricSpec& g, std::span<const double> x) { return levi_civita(evaluate(g, x)); }

TensorValue torsion_of_connection(const TensorValue& gamma) {
  if (gamma.upper() != 1 || gamma.lower() != 2) throw std::invalid_argument("torsion: (1,2) connection required");
  const std::size_t n = gamma.dim();
  TensorValue t(1, 2, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) t.at(l, m, k) = gamma.at(l, m, k) - gamma.at(l, k, m);
  return t;
}

TensorValue connection_from_metric_torsion(const TensorValue& g, const TensorValue& torsion) {
  const std::size_t n = g.dim();
  TensorValue gamma = levi_civita(g);
  const TensorValue ginv = inverse(g);

  // T_{lmn} with the upper index lowered.
  std::vector<Jet2> tl(n * n * n);
  auto at3 = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        Jet2 acc;
        for (std::size_t s = 0; s < n; ++s) acc += g.at(l, s) * torsion.at(s, m, k);
        tl[at3(l, m, k)] = std::move(acc);
      }

  std::vector<Jet2> contortion(n * n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k)
        contortion[at3(l, m, k)] = 0.5 * (tl[at3(l, m, k)] - tl[at3(m, l, k)] - tl[at3(k, l, m)]);

  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        Jet2 acc;
        for (std::size_t s = 0; s < n; ++s) acc += ginv.at(l, s) * contortion[at3(s, m, k)];
        gamma.at(l, m, k) += acc;
      }
  return gamma;
}

TensorValue connection_from_metric_torsion(const MetricSpec& g, const TorsionSpec& t, std::span<const double> x) {
  require_same_chart(g.chart, t.chart);
  return connection_from_metric_torsion(evaluate(g, x), evaluate(t, x));
}

TensorValue weitzenbock_connection(const TensorValue& e) {
  const std::size_t n = e.dim();
  const TensorValue inv = inverse(e);  // E^m_a at [m][a]
  TensorValue gamma(1, 2, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        Jet2 acc;
        for (std::size_t a = 0; a < n; ++a) acc += inv.at(l, a) * e.at(a, m).partial(k);
        gamma.at(l, m, k) = std::move(acc);
      }
  return gamma;
}

TensorValue weitzenbock_connection(const TetradSpec& e, std::span<const double> x) {
  return weitzenbock_connection(evaluate(e, x));
}

TensorValue tetrad_metric(const TensorValue& e, Signature signature) {
  const std::size_t n = e.dim();
  const auto eta = signature_matrix(signature, n);
  TensorValue g(0, 2, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m; k < n; ++k) {
      Jet2 acc;
      for (std::size_t a = 0; a < n; ++a) acc += eta[a * n + a] * (e.at(a, m) * e.at(a, k));
      g.at(m, k) = acc;
      g.at(k, m) = std::move(acc);
    }
  return g;
}

TensorValue metricity_residual(const TensorValue& g, const TensorValue& gamma) {
  const std::size_t n = g.dim();
  TensorValue r(0, 3, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        Jet2 acc = g.at(m, k).partial(l);
        for (std::size_t s = 0; s < n; ++s) {
          acc -= gamma.at(s, m, l) * g.at(s, k);
          acc -= gamma.at(s, k, l) * g.at(m, s);
        }
        r.at(l, m, k) = std::move(acc);
      }
  return r;
}

// ---------------------------------------------------------------------------

TensorValue lie_derivative(const TensorValue& field, const TensorValue& xi) {
  if (xi.upper() != 1 || xi.lower() != 0) throw std::invalid_argument("lie_derivative: xi must be a vector");
  const std::size_t n = field.dim();
  if (xi.dim() != n) throw std::invalid_argument("lie_derivative: dimension mismatch");
  const int upper = field.upper();
  const int rank = field.rank();

  // dxi[r][m] = d_r xi^m
  std::vector<Jet2> dxi(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t m = 0; m < n; ++m) dxi[r * n + m] = xi[m].partial(r);

  TensorValue out(upper, field.lower(), n);
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < field.size(); ++k) {
    idx = field.unflatten(k);
    Jet2 acc;
    for (std::size_t r = 0; r < n; ++r) acc += xi[r] * field[k].partial(r);
    for (int slot = 0; slot < rank; ++slot) {
      const std::size_t orig = idx[static_cast<std::size_t>(slot)];
      for (std::size_t r = 0; r < n; ++r) {
        idx[static_cast<std::size_t>(slot)] = r;
        const Jet2& s = field[field.flat(idx)];
        if (s.size() == 0 && s.value() == 0.0) continue;
        if (slot < upper) {
          acc -= dxi[r * n + orig] * s;
        } else {
          acc += dxi[orig * n + r] * s;
        }
      }
      idx[static_cast<std::size_t>(slot)] = orig;
    }
    out[k] = std::move(acc);
  }
  return out;
}

TensorValue lie_derivative_tensor(const TensorField& field, const VectorFieldSpec& xi, std::span<const double> x) {
  require_same_chart(field.chart, xi.chart);
  return lie_derivative(field.evaluate(x), evaluate(xi, x));
}

TensorValue lie_derivative_connection(const TensorValue& gamma, const TensorValue& xi) {
  if (gamma.upper() != 1 || gamma.lower() != 2)
    throw std::invalid_argument("lie_derivative_connection: (1,2) coefficients required");
  TensorValue out = lie_derivative(gamma, xi);
  const std::size_t n = gamma.dim();
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) out.at(l, m, k) += xi[l].partial(m).partial(k);
  return out;
}

TensorValue lie_derivative_connection(const TensorField& gamma, const VectorFieldSpec& xi,
                                      std::span<const double> x) {
  require_same_chart(gamma.chart, xi.chart);
  return lie_derivative_connection(gamma.evaluate(x), evaluate(xi, x));
}

TensorValue lie_bracket(const TensorValue& xi, const TensorValue& zeta) { return lie_derivative(zeta, xi); }

TensorValue lie_derivative_tetrad(const TensorValue& e, const TensorValue& xi) {
  const std::size_t n = e.dim();
  TensorValue out(1, 1, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t m = 0; m < n; ++m) {
      Jet2 acc;
      for (std::size_t r = 0; r < n; ++r) {
        acc += xi[r] * e.at(a, m).partial(r);
        acc += e.at(a, r) * xi[r].partial(m);
      }
      out.at(a, m) = std::move(acc);
    }
  return out;
}

}  // namespace cartansym
