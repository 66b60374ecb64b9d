#include "cartansym/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cartansym/catalog.hpp"

namespace cartansym {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

namespace {

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Report fields as "key": value lines, without braces.
void report_fields(std::ostringstream& os, const CheckReport& r, const std::string& pad) {
  os << pad << "\"geometry\": " << json_quote(r.geometry) << ",\n";
  os << pad << "\"geometry_kind\": " << json_quote(to_string(r.geometry_kind)) << ",\n";
  os << pad << "\"vector\": " << json_quote(r.vector) << ",\n";
  os << pad << "\"mode\": " << json_quote(to_string(r.mode)) << ",\n";
  os << pad << "\"verdict\": " << json_quote(to_string(r.verdict)) << ",\n";
  os << pad << "\"tolerance\": " << format_number(r.tolerance) << ",\n";
  os << pad << "\"seed\": " << r.seed << ",\n";
  os << pad << "\"sample_count\": " << r.sample_count << ",\n";
  os << pad << "\"frames_per_sample\": " << r.frames_per_sample << ",\n";
  os << pad << "\"residuals\": {\n";
  bool first = true;
  for (std::string_view name : kResidualNames) {
    os << (first ? "" : ",\n") << pad << "  " << json_quote(name) << ": ";
    first = false;
    if (const Residual* res = r.find(name)) {
      os << "{\"raw\": " << format_number(res->raw) << ", \"normalized\": " << format_number(res->normalized) << "}";
    } else {
      os << "null";
    }
  }
  os << "\n" << pad << "},\n";
  os << pad << "\"lambda_estimate\": ";
  if (r.lambda_estimate) {
    const auto& l = *r.lambda_estimate;
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(l.size()))));
    os << "[";
    for (std::size_t a = 0; a < n; ++a) {
      os << (a ? ", " : "") << "[";
      for (std::size_t b = 0; b < n; ++b) os << (b ? ", " : "") << format_number(l[a * n + b]);
      os << "]";
    }
    os << "],\n";
  } else {
    os << "null,\n";
  }
  os << pad << "\"lambda_mean_deviation\": "
     << (r.lambda_mean_deviation ? format_number(*r.lambda_mean_deviation) : "null") << "\n";
}

void report_lines(std::ostringstream& os, const CheckReport& r, const std::string& pad) {
  os << pad << "verdict: " << to_string(r.verdict) << "\n";
  os << pad << "samples: " << r.sample_count;
  if (r.frames_per_sample) os << " x " << r.frames_per_sample << (r.mode == Mode::Cartan ? " frames" : " velocities");
  os << ", tolerance " << short_number(r.tolerance) << ", seed " << r.seed << "\n";
  for (const auto& res : r.residuals)
    os << pad << "  " << res.name << std::string(res.name.size() < 20 ? 20 - res.name.size() : 1, ' ')
       << "raw " << short_number(res.raw) << "  normalized " << short_number(res.normalized) << "\n";
  if (r.lambda_estimate) {
    const auto& l = *r.lambda_estimate;
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(l.size()))));
    os << pad << "  lambda (mean):\n";
    for (std::size_t a = 0; a < n; ++a) {
      os << pad << "   ";
      for (std::size_t b = 0; b < n; ++b) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %10.6f", std::abs(l[a * n + b]) < 5e-13 ? 0.0 : l[a * n + b]);
        os << buf;
      }
      os << "\n";
    }
  }
}

}  // namespace

std::string report_json(const CheckReport& r) {
  std::ostringstream os;
  os << "{\n  \"schema\": " << json_quote(kReportSchema) << ",\n";
  report_fields(os, r, "  ");
  os << "}\n";
  return os.str();
}

std::string report_text(const CheckReport& r) {
  std::ostringstream os;
  os << r.geometry << " (" << to_string(r.geometry_kind) << ") / " << r.vector << " [" << to_string(r.mode) << "]\n";
  report_lines(os, r, "");
  return os.str();
}

std::string_view combined_verdict(const EquivalenceResult& r) {
  if (r.agreement) return to_string(r.direct.verdict);
  return r.inconclusive ? "inconclusive" : "disagreement";
}

std::string report_json(const EquivalenceResult& r) {
  std::ostringstream os;
  os << "{\n  \"schema\": " << json_quote(kReportSchema) << ",\n";
  os << "  \"geometry\": " << json_quote(r.direct.geometry) << ",\n";
  os << "  \"geometry_kind\": " << json_quote(to_string(r.direct.geometry_kind)) << ",\n";
  os << "  \"vector\": " << json_quote(r.direct.vector) << ",\n";
  os << "  \"mode\": \"both\",\n";
  os << "  \"verdict\": " << json_quote(combined_verdict(r)) << ",\n";
  os << "  \"agreement\": " << (r.agreement ? "true" : "false") << ",\n";
  os << "  \"inconclusive\": " << (r.inconclusive ? "true" : "false") << ",\n";
  os << "  \"tolerance\": " << format_number(r.direct.tolerance) << ",\n";
  os << "  \"seed\": " << r.direct.seed << ",\n";
  os << "  \"direct\": {\n";
  report_fields(os, r.direct, "    ");
  os << "  },\n  \"cartan\": {\n";
  report_fields(os, r.cartan, "    ");
  os << "  }\n}\n";
  return os.str();
}

std::string report_text(const EquivalenceResult& r) {
  std::ostringstream os;
  os << r.direct.geometry << " (" << to_string(r.direct.geometry_kind) << ") / " << r.direct.vector << " [both]\n";
  os << "verdict: " << combined_verdict(r) << (r.agreement ? " (modes agree)" : "") << "\n";
  os << "direct:\n";
  report_lines(os, r.direct, "  ");
  os << "cartan:\n";
  report_lines(os, r.cartan, "  ");
  return os.str();
}

std::string matrix_json(const std::vector<MatrixRow>& rows, const CheckConfig& cfg) {
  std::size_t agree = 0, inconclusive = 0;
  std::ostringstream os;
  os << "{\n  \"schema\": \"cartansym.matrix/1\",\n";
  os << "  \"tolerance\": " << format_number(cfg.tolerance) << ",\n  \"seed\": " << cfg.seed << ",\n";
  os << "  \"samples\": " << cfg.samples << ",\n  \"frames\": " << cfg.frames << ",\n  \"pairs\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].result;
    agree += r.agreement;
    inconclusive += r.inconclusive;
    os << "    {\"geometry\": " << json_quote(rows[i].geometry) << ", \"vector\": " << json_quote(rows[i].vector)
       << ", \"direct\": " << json_quote(to_string(r.direct.verdict))
       << ", \"cartan\": " << json_quote(to_string(r.cartan.verdict))
       << ", \"direct_residual\": " << format_number(r.direct.decisive())
       << ", \"cartan_residual\": " << format_number(r.cartan.decisive())
       << ", \"agreement\": " << (r.agreement ? "true" : "false")
       << ", \"inconclusive\": " << (r.inconclusive ? "true" : "false") << "}" << (i + 1 < rows.size() ? "," : "")
       << "\n";
  }
  os << "  ],\n  \"total\": " << rows.size() << ",\n  \"agreed\": " << agree << ",\n  \"inconclusive\": " << inconclusive
     << "\n}\n";
  return os.str();
}

std::string matrix_text(const std::vector<MatrixRow>& rows, const CheckConfig& cfg) {
  std::size_t agree = 0, inconclusive = 0;
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-22s %-16s %-14s %-14s %-10s %-10s %s\n", "geometry", "vector", "direct", "cartan",
                "r_direct", "r_cartan", "status");
  os << buf;
  for (const auto& row : rows) {
    const auto& r = row.result;
    agree += r.agreement;
    inconclusive += r.inconclusive;
    std::snprintf(buf, sizeof buf, "%-22s %-16s %-14s %-14s %-10.2e %-10.2e %s\n", row.geometry.c_str(),
                  row.vector.c_str(), std::string(to_string(r.direct.verdict)).c_str(),
                  std::string(to_string(r.cartan.verdict)).c_str(), r.direct.decisive(), r.cartan.decisive(),
                  r.agreement ? "agree" : (r.inconclusive ? "INCONCLUSIVE" : "DISAGREE"));
    os << buf;
  }
  os << agree << "/" << rows.size() << " pairs agree, " << inconclusive << " inconclusive (tolerance "
     << short_number(cfg.tolerance) << ", seed " << cfg.seed << ")\n";
  return os.str();
}

std::string oracle_json(const std::vector<OracleRow>& rows) {
  std::ostringstream os;
  os << "{\n  \"schema\": \"cartansym.oracle/1\",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& st = rows[i].study;
    os << "    {\"geometry\": " << json_quote(rows[i].geometry) << ", \"vector\": " << json_quote(rows[i].vector)
       << ", \"steps\": [";
    for (std::size_t k = 0; k < st.steps.size(); ++k) os << (k ? ", " : "") << format_number(st.steps[k]);
    os << "], \"errors\": [";
    for (std::size_t k = 0; k < st.errors.size(); ++k) os << (k ? ", " : "") << format_number(st.errors[k]);
    os << "], \"slope\": " << (oracle_slope_measurable(st) ? format_number(st.slope) : "null")
       << ", \"pass\": " << (oracle_passes(st) ? "true" : "false") << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string oracle_text(const std::vector<OracleRow>& rows) {
  std::ostringstream os;
  char buf[128];
  for (const auto& row : rows) {
    os << row.geometry << " / " << row.vector << "\n";
    for (std::size_t k = 0; k < row.study.steps.size(); ++k) {
      std::snprintf(buf, sizeof buf, "  t = %-10.4g error %.3e\n", row.study.steps[k], row.study.errors[k]);
      os << buf;
    }
    if (oracle_slope_measurable(row.study))
      std::snprintf(buf, sizeof buf, "  slope %.4f  %s\n", row.study.slope, oracle_passes(row.study) ? "PASS" : "FAIL");
    else
      std::snprintf(buf, sizeof buf, "  slope n/a (errors at rounding level)  %s\n", oracle_passes(row.study) ? "PASS" : "FAIL");
    os << buf;
  }
  return os.str();
}

std::string catalog_json() {
  std::ostringstream os;
  os << "{\n  \"geometries\": [\n";
  const auto& gs = catalog_geometry_items();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto* g = catalog_geometry(gs[i].name);
    os << "    {\"name\": " << json_quote(gs[i].name) << ", \"kind\": " << json_quote(to_string(g->kind))
       << ", \"coords\": [";
    const auto& names = g->chart().coord_names;
    for (std::size_t k = 0; k < names.size(); ++k) os << (k ? ", " : "") << json_quote(names[k]);
    os << "], \"summary\": " << json_quote(gs[i].summary) << "}" << (i + 1 < gs.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"vectors\": [\n";
  const auto& vs = catalog_vector_items();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto* v = catalog_vector(vs[i].name);
    os << "    {\"name\": " << json_quote(vs[i].name) << ", \"coords\": [";
    const auto& names = v->chart.coord_names;
    for (std::size_t k = 0; k < names.size(); ++k) os << (k ? ", " : "") << json_quote(names[k]);
    os << "], \"summary\": " << json_quote(vs[i].summary) << "}" << (i + 1 < vs.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string catalog_text() {
  std::ostringstream os;
  char buf[256];
  auto coords = [](const Chart& c) {
    std::string s;
    for (const auto& n : c.coord_names) s += (s.empty() ? "" : ",") + n;
    return s;
  };
  os << "geometries:\n";
  for (const auto& item : catalog_geometry_items()) {
    const auto* g = catalog_geometry(item.name);
    std::snprintf(buf, sizeof buf, "  %-22s %-15s %-18s %s\n", std::string(item.name).c_str(),
                  std::string(to_string(g->kind)).c_str(), coords(g->chart()).c_str(),
                  std::string(item.summary).c_str());
    os << buf;
  }
  os << "vector fields:\n";
  for (const auto& item : catalog_vector_items()) {
    const auto* v = catalog_vector(item.name);
    std::snprintf(buf, sizeof buf, "  %-22s %-18s %s\n", std::string(item.name).c_str(), coords(v->chart).c_str(),
                  std::string(item.summary).c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace cartansym
