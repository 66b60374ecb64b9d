#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <set>
#include <string>

#include "cartansym/catalog.hpp"
#include "cartansym/error.hpp"
#include "cartansym/geometry_file.hpp"
#include "cartansym/report.hpp"
#include "cartansym/sampling.hpp"
#include "cartansym/symmetry.hpp"

using namespace cartansym;
using nlohmann::json;

namespace {

const std::string kData = CARTANSYM_TEST_DATA;

std::string path(const char* file) { return kData + "/" + file; }

std::string header(const std::string& kind, const std::string& extra = "") {
  return "[geometry]\nname = t\nkind = " + kind + "\n" + extra + "coords = x, y\ndomain.x = [-1, 1]\ndomain.y = [-1, 1]\n";
}

std::string error_of(const std::string& text) {
  try {
    parse_geometry(text, "<s>");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("catalog geometries load") {
  const GeometrySpec* m = catalog_geometry("minkowski4");
  REQUIRE(m);
  CHECK(m->kind == GeometryKind::Riemannian);
  const auto& g = std::get<MetricSpec>(m->data);
  CHECK(g.signature == Signature::Lorentzian);
  const TensorValue v = evaluate(g, std::vector<double>{0.1, 0.2, 0.3, 0.4});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(v.at(i, j).value() == (i != j ? 0.0 : i == 0 ? -1.0 : 1.0));
  CHECK(catalog_geometry("no_such_geometry") == nullptr);
  CHECK(catalog_vector("no_such_vector") == nullptr);
}

TEST_CASE("catalog contents") {
  CHECK(catalog_geometry_items().size() == 15);
  CHECK(catalog_vector_items().size() == 31);
  std::set<std::string> names;
  for (const auto& item : catalog_geometry_items()) {
    CHECK(names.insert(std::string(item.name)).second);
    CHECK_FALSE(item.summary.empty());
    const GeometrySpec* g = catalog_geometry(item.name);
    REQUIRE(g);
    CHECK_NOTHROW(validate_geometry(*g));
    CHECK_FALSE(catalog_vectors_for(g->chart()).empty());
  }
  for (const auto& item : catalog_vector_items()) CHECK(names.insert(std::string(item.name)).second);
  CHECK(catalog_cartan_pairs().size() >= 40);
  for (const auto& p : catalog_cartan_pairs()) CHECK(has_cartan_model(p.geometry->kind));
  const auto oracle = catalog_oracle_pairs();
  CHECK(oracle.size() == 5);
  for (const auto& p : oracle) CHECK(catalog_geometry(p.geometry)->kind == GeometryKind::Riemannian);
  CHECK_FALSE(has_cartan_model(GeometryKind::Weitzenbock));
  CHECK_FALSE(has_cartan_model(GeometryKind::Finsler));
}

TEST_CASE("catalog directory mirrors the builtin catalog") {
  namespace fs = std::filesystem;
  const fs::path dir = CARTANSYM_CATALOG_DIR;
  std::size_t files = 0;
  auto same = [&](const CatalogItem& item, const char* ext) {
    const fs::path file = dir / (std::string(item.name) + ext);
    INFO(file.string());
    REQUIRE(fs::exists(file));
    std::ifstream in(file);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == item.source);
    ++files;
  };
  for (const auto& item : catalog_geometry_items()) same(item, ".geom");
  for (const auto& item : catalog_vector_items()) same(item, ".vec");
  CHECK(static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator())) == files);
  const GeometrySpec m = load_geometry_file(dir / "minkowski4.geom");
  CHECK(m.kind == GeometryKind::Riemannian);
}

TEST_CASE("geometry files") {
  SUBCASE("metric file matches the catalog entry") {
    const GeometrySpec f = load_geometry_file(path("schwarzschild.geom"));
    CHECK(f.name == "schwarzschild_file");
    const auto& a = std::get<MetricSpec>(f.data);
    const auto& b = std::get<MetricSpec>(catalog_geometry("schwarzschild")->data);
    for (const auto& x : sample_points(a.chart, 5, 0)) CHECK(sup_difference(evaluate(a, x), evaluate(b, x)) == 0.0);
    const VectorFieldSpec v = load_vector_file(path("sch_rot_x.vec"));
    CHECK(v.name == "rotation_x");
    CHECK(check_riemannian(a, v, CheckConfig{}).verdict == Verdict::Symmetric);
  }
  SUBCASE("torsion file") {
    const GeometrySpec f = resolve_geometry(path("torsion.geom"));
    CHECK(f.kind == GeometryKind::RiemannCartan);
    const VectorFieldSpec v = resolve_vector(path("rot_xy.vec"));
    const CheckReport r = check_direct(f, v, CheckConfig{});
    CHECK(r.find("lie_g")->normalized < 1e-9);
    CHECK(r.find("lie_T")->normalized >= 1.0);
  }
  SUBCASE("finsler file") {
    const GeometrySpec f = load_geometry_file(path("randers.geom"));
    CHECK(f.kind == GeometryKind::Finsler);
    CHECK(check_direct(f, *catalog_vector("rot_yz"), CheckConfig{}).verdict == Verdict::Symmetric);
    CHECK(check_direct(f, *catalog_vector("rot_xy"), CheckConfig{}).verdict == Verdict::NotSymmetric);
  }
}

TEST_CASE("invalid geometry files") {
  try {
    load_geometry_file(path("asymmetric.geom"));
    FAIL("asymmetric metric accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("asymmetric.geom:") != std::string::npos);
    CHECK(std::string(e.what()).find("g[1][0]") != std::string::npos);
  }
  // The horizon lies inside r in [1, 10]: the metric changes signature there.
  CHECK_THROWS_AS(load_geometry_file(path("horizon.geom")), ValidationError);
  CHECK_THROWS_AS(load_geometry_file(path("wrong_signature.geom")), ValidationError);
  try {
    load_geometry_file(path("syntax.geom"));
    FAIL("syntax error accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("syntax.geom:9: g[0][0]:") != std::string::npos);
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(load_geometry_file(path("missing.geom")), IoError);
  CHECK_THROWS_AS(resolve_geometry("not_in_catalog"), IoError);
  CHECK_THROWS_AS(resolve_vector("not_in_catalog"), IoError);
}

TEST_CASE("schema errors") {
  const std::string ok = header("riemannian", "signature = euclidean\n") + "[components]\ng[0][0] = 1\ng[1][1] = 1\n";
  CHECK_NOTHROW(parse_geometry(ok));
  CHECK(error_of(header("riemannian", "signature = euclidean\n") + "[components]\ng[0][0] = 1\ng[0][0] = 2\ng[1][1] = 1\n")
            .find("<s>:10:") != std::string::npos);
  CHECK_FALSE(error_of(header("riemannian", "signature = euclidean\n") + "[components]\ng[0][0] = 1\ng[2][2] = 1\n").empty());
  CHECK_FALSE(error_of(header("riemannian", "signature = euclidean\n") + "[components]\ng[0][0] = 1\ng[1][1] = 1\nh = 2\n").empty());
  CHECK_FALSE(error_of(header("riemannian") + "[components]\ng[0][0] = 1\ng[1][1] = 1\n").empty());
  CHECK_FALSE(error_of(header("finsler", "signature = euclidean\n") + "[components]\nF = sqrt(dx^2 + dy^2)\n").empty());
  CHECK_FALSE(error_of(header("lorentzian_thing") + "[components]\n").empty());
  CHECK_FALSE(error_of("[geometry]\nname = t\nkind = affine\ncoords = x, y\ndomain.x = [-1, 1]\n[components]\n").empty());
  CHECK_FALSE(error_of("[geometry]\nname = t\nkind = affine\ncoords = x, y\ndomain.x = [1, -1]\ndomain.y = [-1, 1]\n[components]\n").empty());
  CHECK_FALSE(error_of(header("riemann_cartan", "signature = euclidean\n") +
                       "[components]\ng[0][0] = 1\ng[1][1] = 1\nT[0][1,0] = 1\n").empty());
  CHECK_FALSE(error_of(header("riemann_cartan", "signature = euclidean\n") +
                       "[components]\ng[0][0] = 1\ng[1][1] = 1\nT[0][0,1] = 1\nGamma[0][0][1] = 1\n").empty());
  CHECK_FALSE(error_of(header("affine", "const.a = b + 1\n") + "[components]\n").empty());
  CHECK_FALSE(error_of(header("affine") + "[components]\nGamma[0][0][0] = q\n").empty());
  CHECK_FALSE(error_of(header("affine") + "exclude = x ~ 1\n[components]\n").empty());
  // Riemann-Cartan with a full connection must be metric.
  CHECK_FALSE(error_of(header("riemann_cartan", "signature = euclidean\n") +
                       "[components]\ng[0][0] = 1\ng[1][1] = 1\nGamma[0][0][1] = 1\n").empty());
  CHECK_NOTHROW(parse_geometry(header("riemann_cartan", "signature = euclidean\n") +
                               "[components]\ng[0][0] = 1\ng[1][1] = 1\nGamma[0][1][0] = 1\nGamma[1][0][0] = -1\n"));
  // Constants may build on earlier constants.
  CHECK_NOTHROW(parse_geometry(header("riemannian", "signature = euclidean\nconst.a = 2\nconst.b = a^2 + 1\n") +
                               "[components]\ng[0][0] = b\ng[1][1] = a\n"));
  CHECK_THROWS_AS(parse_vector("[vector]\nname = v\ncoords = x, y\n[components]\nxi[2] = 1\n"), ValidationError);
  CHECK_NOTHROW(parse_vector("[vector]\nname = v\ncoords = x, y\n[components]\nxi[1] = x*y # trailing comment\n"));
}

TEST_CASE("number formatting") {
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::nan("")) == "null");
  CHECK(format_number(INFINITY) == "null");
  CHECK(json_quote("a\"b\\c\n") == "\"a\\\"b\\\\c\\n\"");
}

TEST_CASE("JSON reports") {
  const CheckReport r = check_direct(*catalog_geometry("minkowski4"), *catalog_vector("dilation"), CheckConfig{});
  const json j = json::parse(report_json(r));
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["geometry"] == "minkowski4");
  CHECK(j["vector"] == "dilation");
  CHECK(j["mode"] == "direct");
  CHECK(j["verdict"] == "not_symmetric");
  CHECK(j["sample_count"] == 40);
  for (const auto name : kResidualNames) CHECK(j["residuals"].contains(std::string(name)));
  CHECK(j["residuals"]["lie_g"]["normalized"] == 2.0);
  CHECK(j["residuals"]["lie_A"].is_null());
  CHECK(j["lambda_estimate"].is_null());
  CHECK(report_text(r).find("not_symmetric") != std::string::npos);

  const auto& e = std::get<TetradSpec>(catalog_geometry("weitzenbock_identity")->data);
  const CheckReport w = check_weitzenbock(e, *catalog_vector("rot_xy"), CheckConfig{});
  const json wj = json::parse(report_json(w));
  REQUIRE(wj["lambda_estimate"].is_array());
  CHECK(wj["lambda_estimate"].size() == 4);
  CHECK(wj["lambda_estimate"][1][2] == -1.0);
  CHECK(wj["verdict"] == "symmetric");

  const auto both = equivalence_harness(*catalog_geometry("schwarzschild"), *catalog_vector("sch_rot_z"),
                                        CheckConfig{.mode = Mode::Both});
  const json bj = json::parse(report_json(both));
  CHECK(bj["agreement"] == true);
  CHECK(bj["inconclusive"] == false);
  CHECK(bj["verdict"] == "symmetric");
  CHECK(bj["direct"]["residuals"]["lie_g"].is_object());
  CHECK(bj["cartan"]["residuals"]["tangency"].is_object());
  CHECK(combined_verdict(both) == "symmetric");
}

TEST_CASE("reports are byte identical across runs and thread counts") {
  const GeometrySpec& g = *catalog_geometry("schwarzschild");
  const VectorFieldSpec& v = *catalog_vector("sch_boost_x");
  const std::string a = report_json(equivalence_harness(g, v, CheckConfig{.mode = Mode::Both, .threads = 1}));
  const std::string b = report_json(equivalence_harness(g, v, CheckConfig{.mode = Mode::Both, .threads = 1}));
  const std::string c = report_json(equivalence_harness(g, v, CheckConfig{.mode = Mode::Both, .threads = 5}));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a != report_json(equivalence_harness(g, v, CheckConfig{.seed = 9, .mode = Mode::Both})));
}

TEST_CASE("catalog and matrix listings") {
  const json c = json::parse(catalog_json());
  CHECK(c["geometries"].size() == 15);
  CHECK(c["vectors"].size() == 31);
  CHECK(catalog_text().find("schwarzschild") != std::string::npos);

  std::vector<MatrixRow> rows;
  const CheckConfig cfg{.samples = 5, .frames = 2, .mode = Mode::Both};
  rows.push_back({"minkowski4", "boost_tx", equivalence_harness(*catalog_geometry("minkowski4"), *catalog_vector("boost_tx"), cfg)});
  rows.push_back({"minkowski4", "dilation", equivalence_harness(*catalog_geometry("minkowski4"), *catalog_vector("dilation"), cfg)});
  const json m = json::parse(matrix_json(rows, cfg));
  CHECK(m["schema"] == "cartansym.matrix/1");
  CHECK(m["pairs"].size() == 2);
  CHECK(m["total"] == 2);
  CHECK(m["agreed"] == 2);
  CHECK(m["pairs"][1]["direct"] == "not_symmetric");
  CHECK(matrix_text(rows, cfg).find("dilation") != std::string::npos);
}
