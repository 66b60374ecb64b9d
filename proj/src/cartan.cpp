#include "cartansym/cartan.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>

#include "cartansym/error.hpp"
#include "cartansym/sampling.hpp"

namespace cartansym {

std::string_view to_string(ModelKind k) { return k == ModelKind::Affine ? "affine" : "poincare"; }

ModelDescriptor ModelDescriptor::affine(std::size_t n) {
  ModelDescriptor m;
  m.kind = ModelKind::Affine;
  m.dim = n;
  return m;
}

ModelDescriptor ModelDescriptor::poincare(std::size_t n, Signature s) {
  ModelDescriptor m;
  m.kind = ModelKind::Poincare;
  m.dim = n;
  m.signature = s;
  m.eta = signature_matrix(s, n);
  return m;
}

std::size_t ModelDescriptor::h_dim() const noexcept {
  return kind == ModelKind::Affine ? dim * dim : dim * (dim - 1) / 2;
}

std::vector<std::vector<double>> ModelDescriptor::h_basis() const {
  const std::size_t n = dim;
  std::vector<std::vector<double>> basis;
  if (kind == ModelKind::Affine) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<double> m(n * n, 0.0);
        m[a * n + b] = 1.0;
        basis.push_back(std::move(m));
      }
    return basis;
  }
  // Lambda = eta * (E_ab - E_ba), so that eta Lambda is antisymmetric.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<double> m(n * n, 0.0);
      m[a * n + b] = eta[a * n + a];
      m[b * n + a] = -eta[b * n + b];
      basis.push_back(std::move(m));
    }
  return basis;
}

std::vector<double> FramePoint::coordinates() const {
  std::vector<double> z = x;
  z.insert(z.end(), f.begin(), f.end());
  return z;
}

CartanGeometry make_cartan_geometry(const GeometrySpec& geom) {
  CartanGeometry cg;
  cg.name = geom.name;
  cg.chart = geom.chart();
  const std::size_t n = cg.chart.dim();
  switch (geom.kind) {
    case GeometryKind::Affine: {
      const auto& conn = std::get<ConnectionSpec>(geom.data);
      cg.model = ModelDescriptor::affine(n);
      cg.connection = [conn](std::span<const double> x) { return evaluate(conn, x); };
      break;
    }
    case GeometryKind::Riemannian: {
      const auto& g = std::get<MetricSpec>(geom.data);
      cg.model = ModelDescriptor::poincare(n, g.signature);
      cg.metric = g;
      cg.connection = [g](std::span<const double> x) { return levi_civita(evaluate(g, x)); };
      break;
    }
    case GeometryKind::RiemannCartan: {
      const auto& rc = std::get<RiemannCartanSpec>(geom.data);
      cg.model = ModelDescriptor::poincare(n, rc.metric.signature);
      cg.metric = rc.metric;
      if (const auto* t = std::get_if<TorsionSpec>(&rc.structure)) {
        cg.connection = [g = rc.metric, t = *t](std::span<const double> x) {
          return connection_from_metric_torsion(evaluate(g, x), evaluate(t, x));
        };
      } else {
        const auto& c = std::get<ConnectionSpec>(rc.structure);
        cg.connection = [c](std::span<const double> x) { return evaluate(c, x); };
      }
      break;
    }
    default:
      throw ValidationError("geometry kind " + std::string(to_string(geom.kind)) +
                            " has no Cartan-geometric model in this library");
  }
  return cg;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t fiber_index(std::size_t n, std::size_t m, std::size_t a) { return n + m * n + a; }

/// Frame entries as order-1 jets in the total-space variables.
JetMatrix frame_jets(const FramePoint& p) {
  const std::size_t n = p.dim();
  const std::size_t total = n + n * n;
  JetMatrix f(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a) f(m, a) = Jet2::variable(p.frame(m, a), fiber_index(n, m, a), total, 1);
  return f;
}

Jet2 lift_to_total(const Jet2& base, std::size_t total) { return base.truncated(1).embedded(total, 0); }

void check_frame(const FramePoint& p) {
  const std::size_t n = p.dim();
  if (n == 0 || p.f.size() != n * n) throw std::invalid_argument("frame point has inconsistent dimensions");
}

}  // namespace

LiftedField frame_lift(const VectorFieldSpec& xi, const FramePoint& p) {
  check_frame(p);
  const std::size_t n = p.dim();
  const std::size_t total = n + n * n;
  const TensorValue v = evaluate(xi, p.x);
  const JetMatrix f = frame_jets(p);

  LiftedField lift;
  lift.n = n;
  lift.components.resize(total);
  for (std::size_t m = 0; m < n; ++m) lift.components[m] = lift_to_total(v[m], total);
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<Jet2> grad(n);
    for (std::size_t r = 0; r < n; ++r) grad[r] = lift_to_total(v[m].partial(r), total);
    for (std::size_t a = 0; a < n; ++a) {
      Jet2 acc;
      for (std::size_t r = 0; r < n; ++r) acc += grad[r] * f(r, a);
      lift.components[fiber_index(n, m, a)] = std::move(acc);
    }
  }
  return lift;
}

double orthonormality_residual(const MetricSpec& g, const FramePoint& p) {
  const std::size_t n = p.dim();
  const auto eta = signature_matrix(g.signature, n);
  std::vector<double> gx(n * n);
  for (std::size_t k = 0; k < n * n; ++k) gx[k] = g.components[k].eval(p.x);
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) s += gx[m * n + k] * p.frame(m, a) * p.frame(k, b);
      worst = std::max(worst, std::abs(s - eta[a * n + b]));
    }
  return worst;
}

std::vector<double> tangency_residual(const MetricSpec& g, const VectorFieldSpec& xi, const FramePoint& p) {
  check_frame(p);
  require_same_chart(g.chart, xi.chart);
  if (orthonormality_residual(g, p) > 1e-9) throw ValidationError("frame is not orthonormal: not a point of P");
  const std::size_t n = p.dim();
  const std::size_t total = n + n * n;
  const auto eta = signature_matrix(g.signature, n);
  const TensorValue gx = evaluate(g, p.x, 1);
  const JetMatrix f = frame_jets(p);
  const LiftedField lift = frame_lift(xi, p);

  std::vector<Jet2> gz(n * n);
  for (std::size_t k = 0; k < n * n; ++k) gz[k] = lift_to_total(gx[k], total);

  std::vector<double> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // Defining function of P: g(f_a, f_b) - eta_ab.
      Jet2 phi(-eta[a * n + b]);
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) phi += gz[m * n + k] * (f(m, a) * f(k, b));
      double directional = 0.0;
      for (std::size_t i = 0; i < total; ++i) directional += lift.components[i].value() * phi.grad(i);
      out[a * n + b] = directional;
    }
  return out;
}

CartanValue cartan_connection_eval(const CartanGeometry& geom, const FramePoint& p) {
  check_frame(p);
  const std::size_t n = p.dim();
  if (n != geom.model.dim) throw ValidationError("frame dimension does not match the geometry");
  const std::size_t total = n + n * n;
  const JetMatrix f = frame_jets(p);
  const JetMatrix finv = jet_matrix_inverse(f);
  const TensorValue gamma = geom.connection(p.x);

  CartanValue a;
  a.n = n;
  a.total = total;
  a.e_part.assign(n * total, Jet2(0.0));
  a.h_part.assign(n * n * total, Jet2(0.0));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) a.e_part[i * total + m] = finv(i, m);

  std::vector<Jet2> gz(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) gz[k] = lift_to_total(gamma[k], total);
  auto gam = [&](std::size_t l, std::size_t m, std::size_t k) -> const Jet2& { return gz[(l * n + m) * n + k]; };

  for (std::size_t b = 0; b < n; ++b) {
    // (Gamma_k f_b)^m = Gamma^m_{r k} f^r_b for each direction k.
    std::vector<Jet2> gf(n * n);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        Jet2 acc;
        for (std::size_t r = 0; r < n; ++r) acc += gam(m, r, k) * f(r, b);
        gf[m * n + k] = std::move(acc);
      }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = (i * n + b) * total;
      for (std::size_t k = 0; k < n; ++k) {
        Jet2 acc;
        for (std::size_t m = 0; m < n; ++m) acc += finv(i, m) * gf[m * n + k];
        a.h_part[row + k] = std::move(acc);
      }
      for (std::size_t m = 0; m < n; ++m) a.h_part[row + fiber_index(n, m, b)] = finv(i, m);
    }
  }
  return a;
}

CartanLieDerivative lie_derivative_cartan(const CartanGeometry& geom, const VectorFieldSpec& xi,
                                          const FramePoint& p) {
  require_same_chart(geom.chart, xi.chart);
  const CartanValue a = cartan_connection_eval(geom, p);
  const LiftedField lift = frame_lift(xi, p);
  const std::size_t total = a.total;

  std::vector<double> xv(total);
  for (std::size_t i = 0; i < total; ++i) xv[i] = lift.components[i].value();

  // (L_X A)_J = X^I d_I A_J + A_I d_J X^I, per Lie-algebra component.
  auto apply = [&](const std::vector<Jet2>& coeffs, std::size_t rows) {
    std::vector<double> out(rows * total, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const Jet2* row = &coeffs[r * total];
      for (std::size_t j = 0; j < total; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
          s += xv[i] * row[j].grad(i);
          s += row[i].value() * lift.components[i].grad(j);
        }
        out[r * total + j] = s;
      }
    }
    return out;
  };

  CartanLieDerivative lie;
  lie.n = a.n;
  lie.total = total;
  lie.e_part = apply(a.e_part, a.n);
  lie.h_part = apply(a.h_part, a.n * a.n);
  return lie;
}

std::vector<std::vector<double>> tangent_basis(const CartanGeometry& geom, const FramePoint& p) {
  const std::size_t n = p.dim();
  const std::size_t total = n + n * n;
  std::vector<std::vector<double>> basis;
  if (geom.model.kind == ModelKind::Affine) {
    for (std::size_t i = 0; i < total; ++i) {
      std::vector<double> v(total, 0.0);
      v[i] = 1.0;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  const TensorValue gamma = geom.connection(p.x);
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<double> v(total, 0.0);
    v[m] = 1.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t a = 0; a < n; ++a) {
        double s = 0.0;
        for (std::size_t q = 0; q < n; ++q) s += gamma.at(r, q, m).value() * p.frame(q, a);
        v[fiber_index(n, r, a)] = -s;
      }
    basis.push_back(std::move(v));
  }
  for (const auto& lam : geom.model.h_basis()) {
    std::vector<double> v(total, 0.0);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t a = 0; a < n; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < n; ++b) s += p.frame(m, b) * lam[b * n + a];
        v[fiber_index(n, m, a)] = s;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

double restricted_sup(const CartanLieDerivative& lie, std::span<const std::vector<double>> basis) {
  const std::size_t total = lie.total;
  double worst = 0.0;
  auto scan = [&](const std::vector<double>& coeffs) {
    const std::size_t rows = coeffs.size() / total;
    for (std::size_t r = 0; r < rows; ++r)
      for (const auto& v : basis) {
        double s = 0.0;
        for (std::size_t j = 0; j < total; ++j) s += coeffs[r * total + j] * v[j];
        worst = std::max(worst, std::abs(s));
      }
  };
  scan(lie.e_part);
  scan(lie.h_part);
  return worst;
}

std::vector<double> h_part_on(const CartanValue& a, std::span<const double> v) {
  std::vector<double> w(a.n * a.n, 0.0);
  for (std::size_t r = 0; r < a.n * a.n; ++r)
    for (std::size_t j = 0; j < a.total; ++j) w[r] += a.h_part[r * a.total + j].value() * v[j];
  return w;
}

std::vector<double> e_part_on(const CartanValue& a, std::span<const double> v) {
  std::vector<double> w(a.n, 0.0);
  for (std::size_t r = 0; r < a.n; ++r)
    for (std::size_t j = 0; j < a.total; ++j) w[r] += a.e_part[r * a.total + j].value() * v[j];
  return w;
}

// ---------------------------------------------------------------------------

namespace {

using Mat = Eigen::MatrixXd;

Mat orthonormal_coordinate_frame(const Mat& g, Signature sig) {
  const auto n = g.rows();
  std::vector<Eigen::Index> order;
  if (sig == Signature::Lorentzian) {
    Eigen::Index timelike = -1;
    for (Eigen::Index m = 0; m < n && timelike < 0; ++m)
      if (g(m, m) < 0.0) timelike = m;
    if (timelike < 0) throw ValidationError("Gram-Schmidt failure: no timelike coordinate direction");
    order.push_back(timelike);
  }
  for (Eigen::Index m = 0; m < n; ++m)
    if (std::find(order.begin(), order.end(), m) == order.end()) order.push_back(m);

  Mat f = Mat::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double expected = (sig == Signature::Lorentzian && a == 0) ? -1.0 : 1.0;
    Eigen::VectorXd w = Eigen::VectorXd::Unit(n, order[static_cast<std::size_t>(a)]);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index b = 0; b < a; ++b) {
        const double eta_bb = (sig == Signature::Lorentzian && b == 0) ? -1.0 : 1.0;
        w -= eta_bb * (w.dot(g * f.col(b))) * f.col(b);
      }
    }
    const double q = w.dot(g * w);
    if (!(std::abs(q) > 1e-12) || (q < 0.0) != (expected < 0.0))
      throw ValidationError("Gram-Schmidt failure: metric is degenerate or has the wrong signature");
    f.col(a) = w / std::sqrt(std::abs(q));
  }
  return f;
}

}  // namespace

std::vector<FramePoint> sample_frames(const MetricSpec* g, std::span<const double> x, std::size_t count,
                                      std::uint64_t seed, double max_epsilon) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const std::size_t un = x.size();
  std::vector<FramePoint> frames;
  frames.reserve(count);

  if (g != nullptr) {
    if (g->chart.dim() != un) throw std::invalid_argument("sample_frames: dimension mismatch");
    Mat gx(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) gx(i, j) = g->components[static_cast<std::size_t>(i * n + j)].eval(x);
    const Mat base = orthonormal_coordinate_frame(gx, g->signature);
    const ModelDescriptor model = ModelDescriptor::poincare(un, g->signature);
    const auto basis = model.h_basis();
    for (std::size_t k = 0; k < count; ++k) {
      SampleRng rng(seed, static_cast<std::uint64_t>(Stream::Frames), k);
      Mat lambda = Mat::Zero(n, n);
      for (const auto& b : basis) {
        const double c = rng.uniform(-1.0, 1.0);
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j) lambda(i, j) += c * b[static_cast<std::size_t>(i * n + j)];
      }
      const double eps = max_epsilon * rng.uniform();
      const Mat h = (eps * lambda).exp();
      const Mat f = base * h;
      FramePoint p;
      p.x.assign(x.begin(), x.end());
      p.f.resize(un * un);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) p.f[static_cast<std::size_t>(i * n + j)] = f(i, j);
      frames.push_back(std::move(p));
    }
    return frames;
  }

  for (std::size_t k = 0; k < count; ++k) {
    SampleRng rng(seed, static_cast<std::uint64_t>(Stream::Frames), k);
    Mat f;
    do {
      f = Mat::Identity(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) f(i, j) += max_epsilon * rng.uniform(-1.0, 1.0);
    } while (std::abs(f.determinant()) < 0.2);
    FramePoint p;
    p.x.assign(x.begin(), x.end());
    p.f.resize(un * un);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) p.f[static_cast<std::size_t>(i * n + j)] = f(i, j);
    frames.push_back(std::move(p));
  }
  return frames;
}

}  // namespace cartansym
