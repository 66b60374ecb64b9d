#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cartansym/error.hpp"
#include "cartansym/expr.hpp"
#include "cartansym/jet.hpp"
#include "cartansym/sampling.hpp"
#include "numeric_oracles.hpp"

using namespace cartansym;
using namespace cartansym::testing;

namespace {

const std::vector<std::string> kTX = {"t", "x"};

}  // namespace

TEST_CASE("parse builds the expected tree") {
  const Expr e = parse_expr("x*x + sin(t)", kTX);
  CHECK(e.to_string() == "((x * x) + sin(t))");
  const Expr expected = parse_expr("(x*x) + (sin(t))", kTX);
  CHECK(e.structurally_equal(expected));
  CHECK(e.eval(std::vector<double>{0.0, 3.0}) == doctest::Approx(9.0));
}

TEST_CASE("unknown identifier is rejected by name") {
  try {
    parse_expr("q + 1", kTX);
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("\"q\"") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expr("foo(x)", kTX), ValidationError);
}

TEST_CASE("named constants bind at parse time") {
  const std::vector<std::string> vars = {"t", "r"};
  const ConstantTable consts = {{"M", 1.0}};
  const Expr e = parse_expr("-(1 - 2*M/r)", vars, consts);
  CHECK(e.eval(std::vector<double>{0.0, 4.0}) == doctest::Approx(-0.5));
  CHECK(parse_expr("pi", vars).eval(std::vector<double>{0, 0}) == doctest::Approx(M_PI));
  CHECK_THROWS_AS(parse_expr("-(1 - 2*M/r)", vars), ValidationError);
}

TEST_CASE("syntax errors carry byte offsets") {
  const auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      parse_expr(text, kTX);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset_of("x + ") == 4);
  CHECK(offset_of("(x + t") == 6);
  CHECK(offset_of("x $ t") == 2);
  CHECK(offset_of("sin(x") == 5);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("x t") == 2);
}

TEST_CASE("power is right associative and unary minus binds below it") {
  const std::vector<std::string> v = {"x"};
  const std::vector<double> p = {2.0};
  CHECK(parse_expr("2^3^2", v).eval(p) == doctest::Approx(512.0));
  CHECK(parse_expr("-x^2", v).eval(p) == doctest::Approx(-4.0));
  CHECK(parse_expr("x^-1", v).eval(p) == doctest::Approx(0.5));
  CHECK(parse_expr("1e-3*x", v).eval(p) == doctest::Approx(2e-3));
}

TEST_CASE("eval_jet on simple polynomials and functions") {
  const std::vector<std::string> v = {"x"};
  const Jet2 sq = parse_expr("x*x", v).eval_jet(std::vector<double>{3.0});
  CHECK(sq.value() == 9.0);
  CHECK(sq.grad(0) == 6.0);
  CHECK(sq.hess(0, 0) == 2.0);

  const std::vector<std::string> t = {"t"};
  const Jet2 s = parse_expr("sin(t)", t).eval_jet(std::vector<double>{0.0});
  CHECK(s.value() == 0.0);
  CHECK(s.grad(0) == 1.0);
  CHECK(s.hess(0, 0) == 0.0);
}

TEST_CASE("exp(x*y) matches central differences") {
  const std::vector<std::string> v = {"x", "y"};
  const Expr e = parse_expr("exp(x*y)", v);
  const std::vector<double> p = {0.5, -1.2};
  const Jet2 j = e.eval_jet(p);
  auto f = [&](const std::vector<double>& q) { return e.eval(q); };
  for (std::size_t i = 0; i < 2; ++i) {
    auto xp = p, xm = p;
    xp[i] += 1e-5;
    xm[i] -= 1e-5;
    CHECK(rel_err(j.grad(i), (f(xp) - f(xm)) / 2e-5) < 1e-6);
    for (std::size_t k = 0; k < 2; ++k) CHECK(rel_err(j.hess(i, k), fd_hess(f, p, i, k, 2e-3)) < 1e-6);
  }
}

TEST_CASE("jets of random expressions match Richardson differences") {
  SampleRng rng(17, 0, 0);
  for (int c = 0; c < 100; ++c) {
    const std::string text = random_expr(rng, 3);
    const Expr e = parse_expr(text, kXYZ);
    const auto p = random_point(rng);
    const Jet2 j = e.eval_jet(p);
    auto f = [&](const std::vector<double>& q) { return e.eval(q); };
    CHECK(j.value() == doctest::Approx(f(p)).epsilon(1e-14));
    for (std::size_t i = 0; i < 3; ++i) {
      INFO(text);
      CHECK(rel_err(j.grad(i), fd_grad(f, p, i, 1e-3)) < 1e-6);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(j.hess(i, k) == j.hess(k, i));
        CHECK(rel_err(j.hess(i, k), fd_hess(f, p, i, k, 2e-3)) < 1e-6);
      }
    }
  }
}

TEST_CASE("jet arithmetic agrees with evaluating the combined expression") {
  SampleRng rng(5, 0, 0);
  for (int c = 0; c < 50; ++c) {
    const Expr a = parse_expr(random_expr(rng, 2), kXYZ);
    const Expr b = parse_expr(random_expr(rng, 2), kXYZ);
    const auto p = random_point(rng);
    const Jet2 ja = a.eval_jet(p), jb = b.eval_jet(p);
    const Jet2 sum = (a + b).eval_jet(p), prod = (a * b).eval_jet(p);
    const Jet2 sum2 = ja + jb, prod2 = ja * jb;
    CHECK(std::abs(sum.value() - sum2.value()) < 1e-13);
    CHECK(std::abs(prod.value() - prod2.value()) < 1e-13);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(sum.grad(i) - sum2.grad(i)) < 1e-13);
      CHECK(std::abs(prod.grad(i) - prod2.grad(i)) < 1e-13);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(sum.hess(i, k) - sum2.hess(i, k)) < 1e-13);
        CHECK(std::abs(prod.hess(i, k) - prod2.hess(i, k)) < 1e-13);
      }
    }
    // Commutativity holds bit for bit.
    const Jet2 ab = ja * jb, ba = jb * ja;
    CHECK(ab.value() == ba.value());
    for (std::size_t i = 0; i < 3; ++i) CHECK(ab.grad(i) == ba.grad(i));
  }
}

TEST_CASE("print then parse round-trips") {
  SampleRng rng(9, 0, 0);
  for (int c = 0; c < 200; ++c) {
    const Expr e = parse_expr(random_expr(rng, 4), kXYZ);
    const Expr back = parse_expr(e.to_string(), kXYZ);
    CHECK(back.structurally_equal(e));
    CHECK(back.to_string() == e.to_string());
  }
  for (const char* s : {"-x", "x^-2", "-(x - -y)", "1e300*x", "0.1 + 0.2", "-3", "pi*x", "x/y/z", "2^3^x"}) {
    const Expr e = parse_expr(s, kXYZ);
    CHECK(parse_expr(e.to_string(), kXYZ).structurally_equal(e));
  }
  const Expr c = parse_expr("2*M*x", kXYZ, {{"M", 1.0 / 3.0}});
  CHECK(parse_expr(c.to_string(), kXYZ, {{"M", 1.0 / 3.0}}).structurally_equal(c));
}

TEST_CASE("domain errors name the offending subexpression") {
  const std::vector<std::string> v = {"x"};
  try {
    parse_expr("1 + log(x - 2)", v).eval_jet(std::vector<double>{1.0});
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("log") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expr("sqrt(x)", v).eval_jet(std::vector<double>{-1.0}), DomainError);
  CHECK_THROWS_AS(parse_expr("1/x", v).eval_jet(std::vector<double>{0.0}), DomainError);
  CHECK_THROWS_AS(parse_expr("abs(x)", v).eval_jet(std::vector<double>{0.0}), DomainError);
  CHECK_THROWS_AS(parse_expr("x^0.5", v).eval_jet(std::vector<double>{-2.0}), DomainError);
  CHECK_THROWS_AS(parse_expr("x^x", v).eval_jet(std::vector<double>{-2.0}), DomainError);
}

TEST_CASE("power rules") {
  const std::vector<std::string> v = {"x", "y"};
  // Integer exponents work for negative bases.
  const Jet2 cube = parse_expr("x^3", v).eval_jet(std::vector<double>{-2.0, 0.0});
  CHECK(cube.value() == -8.0);
  CHECK(cube.grad(0) == 12.0);
  CHECK(cube.hess(0, 0) == -12.0);
  // Variable exponent: d/dy x^y = x^y log x.
  const Jet2 p = parse_expr("x^y", v).eval_jet(std::vector<double>{2.0, 3.0});
  CHECK(p.value() == doctest::Approx(8.0));
  CHECK(p.grad(0) == doctest::Approx(12.0));
  CHECK(p.grad(1) == doctest::Approx(8.0 * std::log(2.0)));
  // Constant exponent folded from a constant expression.
  const Jet2 q = parse_expr("x^(4/3)", v).eval_jet(std::vector<double>{8.0, 0.0});
  CHECK(q.value() == doctest::Approx(16.0));
  CHECK(q.grad(0) == doctest::Approx(4.0 / 3.0 * 2.0));
}

TEST_CASE("partial drops one derivative level") {
  const std::vector<std::string> v = {"x", "y"};
  const Jet2 j = parse_expr("x^2*y", v).eval_jet(std::vector<double>{1.5, 2.0});
  const Jet2 dx = j.partial(0);
  CHECK(dx.order() == 1);
  CHECK(dx.value() == doctest::Approx(6.0));
  CHECK(dx.grad(0) == doctest::Approx(4.0));
  CHECK(dx.grad(1) == doctest::Approx(3.0));
  CHECK_THROWS(dx.hess(0, 0));
  const Jet2 dxy = dx.partial(1);
  CHECK(dxy.order() == 0);
  CHECK(dxy.value() == doctest::Approx(3.0));
}

TEST_CASE("concurrent evaluation of one expression") {
  const Expr e = parse_expr("exp(sin(x)*y) + z^3/(2 + cos(x*z))", kXYZ);
  const std::vector<double> p = {0.3, -0.7, 0.9};
  const Jet2 ref = e.eval_jet(p);
  std::vector<int> ok(8, 0);
  {
    std::vector<std::jthread> pool;
    for (int k = 0; k < 8; ++k)
      pool.emplace_back([&, k] {
        bool same = true;
        for (int r = 0; r < 200; ++r) {
          const Jet2 j = e.eval_jet(p);
          same = same && j.value() == ref.value() && j.grad(2) == ref.grad(2) && j.hess(0, 2) == ref.hess(0, 2);
        }
        ok[k] = same;
      });
  }
  for (int v : ok) CHECK(v == 1);
}

// ---------------------------------------------------------------------------

TEST_CASE("inverse of the identity and of a constant diagonal") {
  const JetMatrix id = JetMatrix::identity(4);
  const JetMatrix inv = jet_matrix_inverse(id);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(inv(i, j).value() == (i == j ? 1.0 : 0.0));

  JetMatrix eta(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) eta(i, j) = Jet2::constant(i == j ? (i == 0 ? -1.0 : 1.0) : 0.0, 2);
  const JetMatrix einv = jet_matrix_inverse(eta);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(einv(i, j).value() == eta(i, j).value());
      for (std::size_t k = 0; k < 2; ++k) CHECK(einv(i, j).grad(k) == 0.0);
    }
}

TEST_CASE("inverse carries derivatives of a matrix of exponentials") {
  const std::vector<std::string> v = {"x", "y"};
  const Expr entries[4] = {parse_expr("exp(x)", v), parse_expr("exp(x*y)", v), parse_expr("exp(-y)", v),
                           parse_expr("exp(2*x)", v)};
  const std::vector<double> p = {0.3, -0.4};
  JetMatrix m(2);
  for (std::size_t k = 0; k < 4; ++k) m.a[k] = entries[k].eval_jet(p);
  const JetMatrix inv = jet_matrix_inverse(m);

  // Closed-form 2x2 inverse of the value part at perturbed points.
  auto inverse_entry = [&](const std::vector<double>& q, std::size_t k) {
    const double a = entries[0].eval(q), b = entries[1].eval(q), c = entries[2].eval(q), d = entries[3].eval(q);
    const double det = a * d - b * c;
    const double out[4] = {d / det, -b / det, -c / det, a / det};
    return out[k];
  };
  for (std::size_t k = 0; k < 4; ++k) {
    auto f = [&](const std::vector<double>& q) { return inverse_entry(q, k); };
    CHECK(inv.a[k].value() == doctest::Approx(f(p)).epsilon(1e-14));
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(rel_err(inv.a[k].grad(i), fd_grad(f, p, i, 1e-3)) < 1e-8);
      for (std::size_t j = 0; j < 2; ++j) CHECK(rel_err(inv.a[k].hess(i, j), fd_hess(f, p, i, j, 2e-3)) < 1e-7);
    }
  }

  const JetMatrix prod = m * inv;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const Jet2& e = prod(i, j);
      CHECK(std::abs(e.value() - (i == j ? 1.0 : 0.0)) < 1e-12);
      for (std::size_t a = 0; a < 2; ++a) {
        CHECK(std::abs(e.grad(a)) < 1e-12);
        for (std::size_t b = 0; b < 2; ++b) CHECK(std::abs(e.hess(a, b)) < 1e-12);
      }
    }
}

TEST_CASE("singular and ill-conditioned matrices are rejected") {
  JetMatrix m(2);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  m(1, 0) = 2.0;
  m(1, 1) = 4.0;
  CHECK_THROWS_AS(jet_matrix_inverse(m), SingularMatrixError);
  m(1, 1) = 4.0 + 1e-14;
  CHECK_THROWS_AS(jet_matrix_inverse(m), SingularMatrixError);
  m(1, 1) = 5.0;
  CHECK_NOTHROW(jet_matrix_inverse(m));
}
