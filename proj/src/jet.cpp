#include "cartansym/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "cartansym/error.hpp"

namespace cartansym {

Jet2 Jet2::constant(double value, std::size_t n, int order) {
  Jet2 j(value);
  j.n_ = n;
  j.order_ = std::clamp(order, 0, kMaxOrder);
  if (j.order_ >= 1) j.grad_.assign(n, 0.0);
  if (j.order_ >= 2) j.hess_.assign(n * n, 0.0);
  return j;
}

Jet2 Jet2::variable(double value, std::size_t index, std::size_t n, int order) {
  if (index >= n) throw std::out_of_range("Jet2::variable: index out of range");
  Jet2 j = constant(value, n, order);
  if (j.order_ >= 1) j.grad_[index] = 1.0;
  return j;
}

double Jet2::grad(std::size_t i) const {
  if (n_ == 0) return 0.0;
  if (order_ < 1) throw std::logic_error("Jet2::grad on an order-0 jet");
  return grad_.at(i);
}

double Jet2::hess(std::size_t i, std::size_t j) const {
  if (n_ == 0) return 0.0;
  if (order_ < 2) throw std::logic_error("Jet2::hess on a jet of order < 2");
  if (i >= n_ || j >= n_) throw std::out_of_range("Jet2::hess");
  return hess_[i * n_ + j];
}

Jet2 Jet2::partial(std::size_t i) const {
  if (n_ == 0) return Jet2(0.0);
  if (order_ < 1) throw std::logic_error("Jet2::partial on an order-0 jet");
  if (i >= n_) throw std::out_of_range("Jet2::partial");
  Jet2 d(grad_[i]);
  d.n_ = n_;
  d.order_ = order_ - 1;
  if (d.order_ >= 1) d.grad_.assign(hess_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                                    hess_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
  return d;
}

Jet2 Jet2::truncated(int order) const {
  if (order >= order_) return *this;
  Jet2 t = *this;
  t.order_ = std::max(order, 0);
  if (n_ == 0) return t;
  if (t.order_ < 2) t.hess_.clear();
  if (t.order_ < 1) t.grad_.clear();
  return t;
}

Jet2 Jet2::embedded(std::size_t n, std::size_t offset) const {
  if (n_ == 0) return *this;
  if (offset + n_ > n) throw std::out_of_range("Jet2::embedded");
  Jet2 e = constant(value_, n, order_);
  for (std::size_t i = 0; i < n_ && order_ >= 1; ++i) e.grad_[offset + i] = grad_[i];
  if (order_ >= 2) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) e.hess_[(offset + i) * n + offset + j] = hess_[i * n_ + j];
  }
  return e;
}

Jet2 Jet2::compose(double f, double df, double d2f) const {
  Jet2 r = *this;
  r.value_ = f;
  if (n_ == 0) return r;
  if (order_ >= 2) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        const double h = df * hess_[i * n_ + j] + d2f * grad_[i] * grad_[j];
        r.hess_[i * n_ + j] = h;
        r.hess_[j * n_ + i] = h;
      }
    }
  }
  if (order_ >= 1)
    for (std::size_t i = 0; i < n_; ++i) r.grad_[i] = df * grad_[i];
  return r;
}

bool Jet2::is_finite() const noexcept {
  if (!std::isfinite(value_)) return false;
  for (double g : grad_)
    if (!std::isfinite(g)) return false;
  for (double h : hess_)
    if (!std::isfinite(h)) return false;
  return true;
}

void Jet2::adopt_shape(const Jet2& o) {
  // Promote a constant to o's variable set, or reconcile orders.
  if (n_ == 0 && o.n_ != 0) {
    const int ord = std::min(order_, o.order_);
    *this = constant(value_, o.n_, ord);
    return;
  }
  if (o.n_ != 0 && o.n_ != n_) throw std::invalid_argument("Jet2: mismatched variable counts");
  if (o.n_ != 0 && o.order_ < order_) *this = truncated(o.order_);
}

Jet2& Jet2::operator+=(const Jet2& o) {
  adopt_shape(o);
  value_ += o.value_;
  if (o.n_ == 0) return *this;
  for (std::size_t i = 0; i < grad_.size(); ++i) grad_[i] += o.grad_[i];
  for (std::size_t i = 0; i < hess_.size(); ++i) hess_[i] += o.hess_[i];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  adopt_shape(o);
  value_ -= o.value_;
  if (o.n_ == 0) return *this;
  for (std::size_t i = 0; i < grad_.size(); ++i) grad_[i] -= o.grad_[i];
  for (std::size_t i = 0; i < hess_.size(); ++i) hess_[i] -= o.hess_[i];
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  value_ *= s;
  for (double& g : grad_) g *= s;
  for (double& h : hess_) h *= s;
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) {
  if (o.n_ == 0) {
    if (o.order_ < order_) *this = truncated(o.order_);
    return *this *= o.value_;
  }
  if (n_ == 0) {
    const double a = value_;
    const int ord = std::min(order_, o.order_);
    *this = o.truncated(ord);
    return *this *= a;
  }
  adopt_shape(o);
  const double a = value_;
  const double b = o.value_;
  if (order_ >= 2) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        const double h = hess_[i * n_ + j] * b + a * o.hess_[i * n_ + j] +
                         (grad_[i] * o.grad_[j] + o.grad_[i] * grad_[j]);
        hess_[i * n_ + j] = h;
        hess_[j * n_ + i] = h;
      }
    }
  }
  if (order_ >= 1)
    for (std::size_t i = 0; i < n_; ++i) grad_[i] = grad_[i] * b + a * o.grad_[i];
  value_ = a * b;
  return *this;
}

Jet2& Jet2::operator/=(const Jet2& o) {
  const double v = o.value_;
  if (o.n_ == 0) {
    if (o.order_ < order_) *this = truncated(o.order_);
    return *this *= (1.0 / v);
  }
  return *this *= o.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet2 Jet2::operator-() const {
  Jet2 r = *this;
  return r *= -1.0;
}

std::string Jet2::to_string() const {
  std::string s;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  s += "{value ";
  s += buf;
  if (!grad_.empty()) {
    s += ", grad [";
    for (std::size_t i = 0; i < grad_.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.17g", i ? " " : "", grad_[i]);
      s += buf;
    }
    s += "]";
  }
  if (!hess_.empty()) {
    s += ", hess [";
    for (std::size_t i = 0; i < hess_.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.17g", i ? " " : "", hess_[i]);
      s += buf;
    }
    s += "]";
  }
  s += "}";
  return s;
}

Jet2 sin(const Jet2& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return u.compose(s, c, -s);
}

Jet2 cos(const Jet2& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return u.compose(c, -s, -c);
}

Jet2 tan(const Jet2& u) {
  const double t = std::tan(u.value());
  const double d = 1.0 + t * t;
  return u.compose(t, d, 2.0 * t * d);
}

Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.value());
  return u.compose(e, e, e);
}

Jet2 log(const Jet2& u) {
  const double v = u.value();
  if (!(v > 0.0)) return u.compose(std::nan(""), std::nan(""), std::nan(""));
  return u.compose(std::log(v), 1.0 / v, -1.0 / (v * v));
}

Jet2 sqrt(const Jet2& u) {
  const double v = u.value();
  if (!(v > 0.0)) {
    // sqrt(0) has an infinite derivative; only a constant zero is acceptable.
    if (v == 0.0 && u.size() == 0) return Jet2(0.0);
    return u.compose(std::nan(""), std::nan(""), std::nan(""));
  }
  const double s = std::sqrt(v);
  return u.compose(s, 0.5 / s, -0.25 / (s * v));
}

Jet2 abs(const Jet2& u) {
  const double v = u.value();
  if (std::abs(v) < 1e-12 && u.size() != 0) return u.compose(std::nan(""), std::nan(""), std::nan(""));
  const double sign = v < 0.0 ? -1.0 : 1.0;
  return u.compose(std::abs(v), sign, 0.0);
}

Jet2 tanh(const Jet2& u) {
  const double t = std::tanh(u.value());
  const double d = 1.0 - t * t;
  return u.compose(t, d, -2.0 * t * d);
}

Jet2 cosh(const Jet2& u) {
  const double c = std::cosh(u.value()), s = std::sinh(u.value());
  return u.compose(c, s, c);
}

Jet2 sinh(const Jet2& u) {
  const double c = std::cosh(u.value()), s = std::sinh(u.value());
  return u.compose(s, c, s);
}

Jet2 ipow(const Jet2& u, long k) {
  if (k < 0) return Jet2(1.0) / ipow(u, -k);
  Jet2 result(1.0);
  Jet2 base = u;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Jet2 pow(const Jet2& u, double c) {
  const double v = u.value();
  if (!(v > 0.0)) return u.compose(std::nan(""), std::nan(""), std::nan(""));
  const double p = std::pow(v, c);
  return u.compose(p, c * p / v, c * (c - 1.0) * p / (v * v));
}

JetMatrix JetMatrix::identity(std::size_t dim) {
  JetMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = Jet2(1.0);
  return m;
}

JetMatrix operator*(const JetMatrix& x, const JetMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("JetMatrix product: dimension mismatch");
  JetMatrix r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) {
      Jet2 s;
      for (std::size_t k = 0; k < x.n; ++k) s += x(i, k) * y(k, j);
      r(i, j) = std::move(s);
    }
  return r;
}

namespace {

double one_norm(const std::vector<double>& a, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i * n + j]);
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

JetMatrix jet_matrix_inverse(const JetMatrix& m) {
  const std::size_t n = m.n;
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n * n; ++i) values[i] = m.a[i].value();
  const double norm = one_norm(values, n);

  // Gauss-Jordan on [m | I] with row pivoting chosen from the value part.
  JetMatrix work = m;
  JetMatrix inv = JetMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(work(r, col).value()) > std::abs(work(pivot, col).value())) pivot = r;
    if (work(pivot, col).value() == 0.0 || !std::isfinite(work(pivot, col).value()))
      throw SingularMatrixError("matrix is singular");
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(work(pivot, k), work(col, k));
        std::swap(inv(pivot, k), inv(col, k));
      }
    }
    const Jet2 p = work(col, col);
    for (std::size_t k = 0; k < n; ++k) {
      work(col, k) /= p;
      inv(col, k) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet2 factor = work(r, col);
      if (factor.value() == 0.0 && factor.size() == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        work(r, k) -= factor * work(col, k);
        inv(r, k) -= factor * inv(col, k);
      }
    }
  }

  std::vector<double> inv_values(n * n);
  for (std::size_t i = 0; i < n * n; ++i) inv_values[i] = inv.a[i].value();
  const double cond = norm * one_norm(inv_values, n);
  if (!std::isfinite(cond) || cond > kMaxConditionNumber) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "matrix is ill-conditioned (condition estimate %.3g)", cond);
    throw SingularMatrixError(buf);
  }
  return inv;
}

}  // namespace cartansym
