#include "cartansym/cartansym.h"

#include <memory>
#include <new>
#include <optional>
#include <string>

#include "cartansym/catalog.hpp"
#include "cartansym/error.hpp"
#include "cartansym/geometry_file.hpp"
#include "cartansym/report.hpp"
#include "cartansym/symmetry.hpp"

using namespace cartansym;

struct cs_geometry {
  GeometrySpec def;
  std::string kind;
};

struct cs_vector {
  VectorFieldSpec def;
};

struct cs_report {
  std::optional<CheckReport> single;
  std::optional<EquivalenceResult> both;
  std::string json;
  std::string text;
};

struct cs_text {
  std::string data;
};

namespace {

thread_local std::string last_error;

cs_status fail(cs_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
cs_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const ParseError& e) {
    return fail(CS_ERR_PARSE, e.what());
  } catch (const ValidationError& e) {
    return fail(CS_ERR_VALIDATION, e.what());
  } catch (const DomainError& e) {
    return fail(CS_ERR_DOMAIN, e.what());
  } catch (const SingularMatrixError& e) {
    return fail(CS_ERR_SINGULAR, e.what());
  } catch (const IoError& e) {
    return fail(CS_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CS_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CS_ERR_INTERNAL, "unknown error");
  }
}

CheckConfig to_config(const cs_check_config* c) {
  CheckConfig cfg;
  if (!c) return cfg;
  if (!(c->tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (c->samples == 0) throw std::invalid_argument("samples must be at least 1");
  if (c->frames == 0) throw std::invalid_argument("frames must be at least 1");
  if (c->mode != CS_MODE_DIRECT && c->mode != CS_MODE_CARTAN && c->mode != CS_MODE_BOTH)
    throw std::invalid_argument("unknown mode");
  cfg.tolerance = c->tolerance;
  cfg.samples = c->samples;
  cfg.frames = c->frames;
  cfg.seed = c->seed;
  cfg.threads = c->threads;
  cfg.mode = c->mode == CS_MODE_DIRECT ? Mode::Direct : c->mode == CS_MODE_CARTAN ? Mode::Cartan : Mode::Both;
  return cfg;
}

OracleRow oracle_row(const GeometrySpec& g, const VectorFieldSpec& v, std::size_t points, std::uint64_t seed) {
  if (g.kind != GeometryKind::Riemannian)
    throw ValidationError("oracle needs a riemannian geometry, '" + g.name + "' is " + std::string(to_string(g.kind)));
  return {g.name, v.name, standard_oracle_study(std::get<MetricSpec>(g.data), v, points, seed)};
}

}  // namespace

extern "C" {

const char* cs_version(void) { return "0.1.0"; }

const char* cs_last_error(void) { return last_error.c_str(); }

const char* cs_status_name(cs_status status) {
  switch (status) {
    case CS_OK: return "ok";
    case CS_ERR_ARGUMENT: return "argument";
    case CS_ERR_PARSE: return "parse";
    case CS_ERR_VALIDATION: return "validation";
    case CS_ERR_DOMAIN: return "domain";
    case CS_ERR_SINGULAR: return "singular";
    case CS_ERR_IO: return "io";
    case CS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void cs_check_config_default(cs_check_config* cfg) {
  if (!cfg) return;
  const CheckConfig d;
  cfg->tolerance = d.tolerance;
  cfg->samples = static_cast<uint32_t>(d.samples);
  cfg->frames = static_cast<uint32_t>(d.frames);
  cfg->seed = d.seed;
  cfg->mode = CS_MODE_DIRECT;
  cfg->threads = 0;
}

cs_status cs_geometry_load(const char* name_or_path, cs_geometry** out) {
  if (!name_or_path || !out) return fail(CS_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto g = std::make_unique<cs_geometry>(cs_geometry{resolve_geometry(name_or_path), {}});
    g->kind = to_string(g->def.kind);
    *out = g.release();
    return CS_OK;
  });
}

cs_status cs_geometry_parse(const char* text, cs_geometry** out) {
  if (!text || !out) return fail(CS_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto g = std::make_unique<cs_geometry>(cs_geometry{parse_geometry(text), {}});
    g->kind = to_string(g->def.kind);
    *out = g.release();
    return CS_OK;
  });
}

void cs_geometry_free(cs_geometry* geometry) { delete geometry; }

const char* cs_geometry_name(const cs_geometry* geometry) { return geometry ? geometry->def.name.c_str() : nullptr; }

const char* cs_geometry_kind(const cs_geometry* geometry) { return geometry ? geometry->kind.c_str() : nullptr; }

size_t cs_geometry_dim(const cs_geometry* geometry) { return geometry ? geometry->def.chart().dim() : 0; }

cs_status cs_vector_load(const char* name_or_path, cs_vector** out) {
  if (!name_or_path || !out) return fail(CS_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new cs_vector{resolve_vector(name_or_path)};
    return CS_OK;
  });
}

cs_status cs_vector_parse(const char* text, cs_vector** out) {
  if (!text || !out) return fail(CS_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new cs_vector{parse_vector(text)};
    return CS_OK;
  });
}

void cs_vector_free(cs_vector* vector) { delete vector; }

const char* cs_vector_name(const cs_vector* vector) { return vector ? vector->def.name.c_str() : nullptr; }

cs_status cs_check(const cs_geometry* geometry, const cs_vector* vector, const cs_check_config* cfg,
                   cs_report** out) {
  if (!geometry || !vector || !out) return fail(CS_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const CheckConfig c = to_config(cfg);
    const GeometrySpec& g = geometry->def;
    const VectorFieldSpec& v = vector->def;
    require_same_chart(g.chart(), v.chart);
    if (c.mode != Mode::Direct && !has_cartan_model(g.kind))
      throw ValidationError("mode " + std::string(to_string(c.mode)) + " is not available for " +
                            std::string(to_string(g.kind)) + " geometries (no Cartan model); use --mode direct");
    auto rep = std::make_unique<cs_report>();
    if (c.mode == Mode::Both) {
      rep->both = equivalence_harness(g, v, c);
      rep->json = report_json(*rep->both);
      rep->text = report_text(*rep->both);
    } else {
      rep->single = c.mode == Mode::Direct ? check_direct(g, v, c) : check_cartan(make_cartan_geometry(g), v, c);
      rep->single->geometry_kind = g.kind;
      rep->json = report_json(*rep->single);
      rep->text = report_text(*rep->single);
    }
    *out = rep.release();
    return CS_OK;
  });
}

void cs_report_free(cs_report* report) { delete report; }

cs_verdict cs_report_verdict(const cs_report* report) {
  if (!report) return CS_NOT_SYMMETRIC;
  if (report->single) return report->single->verdict == Verdict::Symmetric ? CS_SYMMETRIC : CS_NOT_SYMMETRIC;
  const auto& b = *report->both;
  if (b.inconclusive) return CS_INCONCLUSIVE;
  if (!b.agreement) return CS_DISAGREEMENT;
  return b.direct.verdict == Verdict::Symmetric ? CS_SYMMETRIC : CS_NOT_SYMMETRIC;
}

cs_status cs_report_residual(const cs_report* report, const char* name, double* raw, double* normalized) {
  if (!report || !name) return fail(CS_ERR_ARGUMENT, "null argument");
  const Residual* r = nullptr;
  if (report->single) {
    r = report->single->find(name);
  } else {
    r = report->both->direct.find(name);
    if (!r) r = report->both->cartan.find(name);
  }
  if (!r) return fail(CS_ERR_ARGUMENT, std::string("no residual named '") + name + "' in this report");
  if (raw) *raw = r->raw;
  if (normalized) *normalized = r->normalized;
  return CS_OK;
}

const char* cs_report_json(const cs_report* report) { return report ? report->json.c_str() : nullptr; }

const char* cs_report_text(const cs_report* report) { return report ? report->text.c_str() : nullptr; }

cs_status cs_catalog_list(int json, cs_text** out) {
  if (!out) return fail(CS_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new cs_text{json ? catalog_json() : catalog_text()};
    return CS_OK;
  });
}

cs_status cs_oracle_table(const char* geometry, const char* vector, uint32_t points, uint64_t seed, int json,
                          cs_text** out, int* all_pass) {
  if (!out) return fail(CS_ERR_ARGUMENT, "null argument");
  if ((geometry == nullptr) != (vector == nullptr))
    return fail(CS_ERR_ARGUMENT, "give both a geometry and a vector field, or neither");
  *out = nullptr;
  return guarded([&] {
    if (points == 0) throw std::invalid_argument("points must be at least 1");
    std::vector<OracleRow> rows;
    if (geometry) {
      const GeometrySpec g = resolve_geometry(geometry);
      const VectorFieldSpec v = resolve_vector(vector);
      rows.push_back(oracle_row(g, v, points, seed));
    } else {
      for (const auto& p : catalog_oracle_pairs())
        rows.push_back(oracle_row(*catalog_geometry(p.geometry), *catalog_vector(p.vector), points, seed));
    }
    bool pass = true;
    for (const auto& r : rows) pass = pass && oracle_passes(r.study);
    if (all_pass) *all_pass = pass ? 1 : 0;
    *out = new cs_text{json ? oracle_json(rows) : oracle_text(rows)};
    return CS_OK;
  });
}

cs_status cs_catalog_matrix(const cs_check_config* cfg, int json, cs_text** out, int* all_agree) {
  if (!out) return fail(CS_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    CheckConfig c = to_config(cfg);
    c.mode = Mode::Both;
    std::vector<MatrixRow> rows;
    bool ok = true;
    for (const auto& p : catalog_cartan_pairs()) {
      rows.push_back({p.geometry->name, p.vector->name, equivalence_harness(*p.geometry, *p.vector, c)});
      ok = ok && rows.back().result.agreement;
    }
    if (all_agree) *all_agree = ok ? 1 : 0;
    *out = new cs_text{json ? matrix_json(rows, c) : matrix_text(rows, c)};
    return CS_OK;
  });
}

const char* cs_text_data(const cs_text* text) { return text ? text->data.c_str() : nullptr; }

void cs_text_free(cs_text* text) { delete text; }

}  // extern "C"
