#include <doctest.h>

#include <cstring>
#include <string>
#include <thread>

#include "cartansym/cartansym.h"

namespace {

const std::string kData = CARTANSYM_TEST_DATA;

bool contains(const char* haystack, const char* needle) { return std::strstr(haystack, needle) != nullptr; }

cs_check_config config(cs_mode mode = CS_MODE_DIRECT) {
  cs_check_config c;
  cs_check_config_default(&c);
  c.mode = mode;
  return c;
}

struct Pair {
  cs_geometry* g = nullptr;
  cs_vector* v = nullptr;
  Pair(const std::string& geometry, const std::string& vector) {
    REQUIRE(cs_geometry_load(geometry.c_str(), &g) == CS_OK);
    REQUIRE(cs_vector_load(vector.c_str(), &v) == CS_OK);
  }
  ~Pair() {
    cs_vector_free(v);
    cs_geometry_free(g);
  }
};

}  // namespace

TEST_CASE("defaults and names") {
  const cs_check_config c = config();
  CHECK(c.tolerance == 1e-9);
  CHECK(c.samples == 40);
  CHECK(c.frames == 5);
  CHECK(c.seed == 0);
  CHECK(c.mode == CS_MODE_DIRECT);
  CHECK(std::strlen(cs_version()) > 0);
  CHECK(std::string(cs_status_name(CS_ERR_IO)) == "io");
  CHECK(std::string(cs_status_name(CS_OK)) == "ok");
}

TEST_CASE("loading geometries and vectors") {
  cs_geometry* g = nullptr;
  REQUIRE(cs_geometry_load("schwarzschild", &g) == CS_OK);
  CHECK(std::string(cs_geometry_name(g)) == "schwarzschild");
  CHECK(std::string(cs_geometry_kind(g)) == "riemannian");
  CHECK(cs_geometry_dim(g) == 4);
  cs_geometry_free(g);

  REQUIRE(cs_geometry_load((kData + "/torsion.geom").c_str(), &g) == CS_OK);
  CHECK(std::string(cs_geometry_kind(g)) == "riemann_cartan");
  cs_geometry_free(g);

  CHECK(cs_geometry_load("nowhere", &g) == CS_ERR_IO);
  CHECK(g == nullptr);
  CHECK(contains(cs_last_error(), "nowhere"));
  CHECK(cs_geometry_load((kData + "/asymmetric.geom").c_str(), &g) == CS_ERR_VALIDATION);
  CHECK(cs_geometry_load((kData + "/syntax.geom").c_str(), &g) == CS_ERR_PARSE);
  CHECK(contains(cs_last_error(), "syntax.geom:9"));
  CHECK(cs_geometry_load(nullptr, &g) == CS_ERR_ARGUMENT);
  CHECK(cs_geometry_parse("[geometry]\nname = x\n", &g) == CS_ERR_VALIDATION);

  cs_vector* v = nullptr;
  REQUIRE(cs_vector_parse("[vector]\nname = spin\ncoords = x, y\n[components]\nxi[0] = -y\nxi[1] = x\n", &v) == CS_OK);
  CHECK(std::string(cs_vector_name(v)) == "spin");
  cs_vector_free(v);
  CHECK(cs_vector_parse("[vector]\nname = bad\ncoords = x, y\n[components]\nxi[0] = y +\n", &v) == CS_ERR_PARSE);

  // Freeing null handles is allowed.
  cs_geometry_free(nullptr);
  cs_vector_free(nullptr);
  cs_report_free(nullptr);
  cs_text_free(nullptr);
}

TEST_CASE("checks") {
  SUBCASE("symmetric in both modes") {
    Pair p("minkowski4", "boost_tx");
    const cs_check_config c = config(CS_MODE_BOTH);
    cs_report* r = nullptr;
    REQUIRE(cs_check(p.g, p.v, &c, &r) == CS_OK);
    CHECK(cs_report_verdict(r) == CS_SYMMETRIC);
    double raw = -1, norm = -1;
    REQUIRE(cs_report_residual(r, "lie_g", &raw, &norm) == CS_OK);
    CHECK(norm < 1e-9);
    REQUIRE(cs_report_residual(r, "lie_A", &raw, nullptr) == CS_OK);
    CHECK(raw < 1e-9);
    CHECK(cs_report_residual(r, "lie_T", &raw, &norm) == CS_ERR_ARGUMENT);
    CHECK(contains(cs_report_json(r), "\"agreement\": true"));
    CHECK(contains(cs_report_text(r), "symmetric"));
    cs_report_free(r);
  }
  SUBCASE("dilation") {
    Pair p("minkowski4", "dilation");
    const cs_check_config c = config();
    cs_report* r = nullptr;
    REQUIRE(cs_check(p.g, p.v, &c, &r) == CS_OK);
    CHECK(cs_report_verdict(r) == CS_NOT_SYMMETRIC);
    double norm = 0;
    REQUIRE(cs_report_residual(r, "lie_g", nullptr, &norm) == CS_OK);
    CHECK(norm == 2.0);
    cs_report_free(r);
  }
  SUBCASE("inconclusive band") {
    Pair p("minkowski4", "dilation");
    cs_check_config c = config(CS_MODE_BOTH);
    c.tolerance = 0.5;
    cs_report* r = nullptr;
    REQUIRE(cs_check(p.g, p.v, &c, &r) == CS_OK);
    CHECK(cs_report_verdict(r) == CS_INCONCLUSIVE);
    cs_report_free(r);
  }
  SUBCASE("errors") {
    cs_report* r = nullptr;
    {
      Pair p("minkowski4", "sch_time");
      const cs_check_config c = config();
      CHECK(cs_check(p.g, p.v, &c, &r) == CS_ERR_VALIDATION);
      CHECK(r == nullptr);
    }
    {
      Pair p("weitzenbock_diag", "rot_yz");
      const cs_check_config c = config(CS_MODE_CARTAN);
      CHECK(cs_check(p.g, p.v, &c, &r) == CS_ERR_VALIDATION);
      CHECK(contains(cs_last_error(), "--mode direct"));
      const cs_check_config d = config();
      REQUIRE(cs_check(p.g, p.v, &d, &r) == CS_OK);
      CHECK(contains(cs_report_json(r), "\"lambda_estimate\": ["));
      cs_report_free(r);
    }
    {
      Pair p("minkowski4", "trans_t");
      cs_check_config c = config();
      c.tolerance = -1;
      CHECK(cs_check(p.g, p.v, &c, &r) == CS_ERR_ARGUMENT);
      c = config();
      c.samples = 0;
      CHECK(cs_check(p.g, p.v, &c, &r) == CS_ERR_ARGUMENT);
      c = config();
      c.mode = static_cast<cs_mode>(9);
      CHECK(cs_check(p.g, p.v, &c, &r) == CS_ERR_ARGUMENT);
      CHECK(cs_check(p.g, nullptr, &c, &r) == CS_ERR_ARGUMENT);
      // A null config means the defaults.
      REQUIRE(cs_check(p.g, p.v, nullptr, &r) == CS_OK);
      CHECK(cs_report_verdict(r) == CS_SYMMETRIC);
      cs_report_free(r);
    }
  }
}

TEST_CASE("listing, oracle and matrix") {
  cs_text* t = nullptr;
  REQUIRE(cs_catalog_list(1, &t) == CS_OK);
  CHECK(contains(cs_text_data(t), "\"finsler_randers\""));
  cs_text_free(t);

  int pass = 0;
  REQUIRE(cs_oracle_table("schwarzschild", "sch_rot_x", 3, 0, 0, &t, &pass) == CS_OK);
  CHECK(pass == 1);
  CHECK(contains(cs_text_data(t), "sch_rot_x"));
  cs_text_free(t);
  CHECK(cs_oracle_table("schwarzschild", nullptr, 3, 0, 0, &t, &pass) == CS_ERR_ARGUMENT);
  CHECK(cs_oracle_table("flat_affine", "trans_t", 3, 0, 0, &t, &pass) == CS_ERR_VALIDATION);
  CHECK(cs_oracle_table("minkowski4", "trans_t", 0, 0, 0, &t, &pass) == CS_ERR_ARGUMENT);

  cs_check_config c = config();
  c.samples = 3;
  c.frames = 2;
  int agree = 0;
  REQUIRE(cs_catalog_matrix(&c, 1, &t, &agree) == CS_OK);
  CHECK(agree == 1);
  CHECK(contains(cs_text_data(t), "cartansym.matrix/1"));
  cs_text_free(t);
}

TEST_CASE("error messages are per thread") {
  cs_geometry* g = nullptr;
  CHECK(cs_geometry_load("first_missing", &g) == CS_ERR_IO);
  std::string other;
  std::thread th([&] {
    cs_geometry* h = nullptr;
    cs_geometry_load("second_missing", &h);
    other = cs_last_error();
  });
  th.join();
  CHECK(contains(cs_last_error(), "first_missing"));
  CHECK(other.find("second_missing") != std::string::npos);
}
