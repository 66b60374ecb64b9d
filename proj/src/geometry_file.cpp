#include "cartansym/geometry_file.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "cartansym/error.hpp"
#include "cartansym/sampling.hpp"
#include "cartansym/symmetry.hpp"

namespace cartansym {
namespace {

constexpr std::size_t kScanPoints = 128;

struct Line {
  std::string key;
  std::string value;
  std::size_t number = 0;
};

struct Document {
  std::string header_section;  // "geometry" or "vector"
  std::vector<Line> header;
  std::vector<Line> components;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string location(std::string_view origin, std::size_t line) {
  std::string s(origin);
  if (line > 0) s += ":" + std::to_string(line);
  return s + ": ";
}

[[noreturn]] void schema_error(std::string_view origin, std::size_t line, const std::string& msg) {
  throw ValidationError(location(origin, line) + msg);
}

Document split(std::string_view text, std::string_view origin, std::string_view expected) {
  Document doc;
  std::string section;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section == "components") {
        if (doc.header_section.empty()) schema_error(origin, number, "[components] before [" + std::string(expected) + "]");
      } else if (section == expected) {
        if (!doc.header_section.empty()) schema_error(origin, number, "duplicate section [" + section + "]");
        doc.header_section = section;
      } else {
        schema_error(origin, number, "unknown section [" + section + "], expected [" + std::string(expected) +
                                         "] or [components]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) schema_error(origin, number, "expected key = value");
    if (section.empty()) schema_error(origin, number, "entry outside of a section");
    Line entry{trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), number};
    if (entry.key.empty()) schema_error(origin, number, "empty key");
    if (entry.value.empty()) schema_error(origin, number, entry.key + ": empty value");
    (section == "components" ? doc.components : doc.header).push_back(std::move(entry));
  }
  if (doc.header_section.empty()) schema_error(origin, 0, "missing [" + std::string(expected) + "] section");
  return doc;
}

std::vector<std::string> split_names(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

double constant_value(const Line& l, std::string_view origin, const ConstantTable& constants) {
  try {
    const Expr e = parse_expr(l.value, std::span<const std::string>{}, constants);
    const double v = e.eval({});
    if (!std::isfinite(v)) schema_error(origin, l.number, l.key + ": not finite");
    return v;
  } catch (const ParseError& e) {
    throw e.located(location(origin, l.number) + l.key + ": ");
  } catch (const DomainError& e) {
    schema_error(origin, l.number, l.key + ": " + e.what());
  } catch (const ValidationError& e) {
    schema_error(origin, l.number, l.key + ": " + e.what());
  }
}

// Header shared by geometry and vector files.
struct Header {
  std::string name;
  std::optional<std::string> kind;
  std::optional<std::string> signature;
  Chart chart;
  ConstantTable constants;
};

Header read_header(const Document& doc, std::string_view origin, bool needs_domain) {
  Header h;
  std::map<std::string, const Line*> domains;
  std::vector<const Line*> excludes;
  bool have_coords = false;
  for (const Line& l : doc.header) {
    if (l.key == "name") {
      if (!h.name.empty()) schema_error(origin, l.number, "name: duplicate key");
      h.name = l.value;
    } else if (l.key == "kind") {
      if (needs_domain == false) schema_error(origin, l.number, "kind: not allowed in a vector file");
      h.kind = l.value;
    } else if (l.key == "signature") {
      h.signature = l.value;
    } else if (l.key == "coords") {
      if (have_coords) schema_error(origin, l.number, "coords: duplicate key");
      h.chart.coord_names = split_names(l.value);
      for (const auto& c : h.chart.coord_names)
        if (!valid_identifier(c)) schema_error(origin, l.number, "coords: invalid coordinate name '" + c + "'");
      have_coords = true;
    } else if (l.key.starts_with("const.")) {
      const std::string cname = l.key.substr(6);
      if (!valid_identifier(cname)) schema_error(origin, l.number, l.key + ": invalid constant name");
      if (h.constants.contains(cname)) schema_error(origin, l.number, l.key + ": duplicate key");
      h.constants[cname] = constant_value(l, origin, h.constants);
    } else if (l.key.starts_with("domain.")) {
      if (!domains.emplace(l.key.substr(7), &l).second) schema_error(origin, l.number, l.key + ": duplicate key");
    } else if (l.key == "exclude") {
      excludes.push_back(&l);
    } else {
      schema_error(origin, l.number, l.key + ": unknown key");
    }
  }
  if (h.name.empty()) schema_error(origin, 0, "name: missing");
  if (!have_coords || h.chart.coord_names.empty()) schema_error(origin, 0, "coords: missing");
  for (const auto& c : h.chart.coord_names)
    if (h.constants.contains(c)) schema_error(origin, 0, "const." + c + ": shadows a coordinate");

  for (const auto& [coord, line] : domains)
    if (h.chart.index_of(coord) < 0) schema_error(origin, line->number, line->key + ": no such coordinate");
  if (needs_domain) {
    for (const auto& c : h.chart.coord_names) {
      const auto it = domains.find(c);
      if (it == domains.end()) schema_error(origin, 0, "domain." + c + ": missing");
      const Line& l = *it->second;
      const std::string& v = l.value;
      if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        schema_error(origin, l.number, l.key + ": expected [lo, hi]");
      const std::string inner = v.substr(1, v.size() - 2);
      const auto comma = inner.find(',');
      if (comma == std::string::npos) schema_error(origin, l.number, l.key + ": expected [lo, hi]");
      Line lo{l.key, trim(std::string_view(inner).substr(0, comma)), l.number};
      Line hi{l.key, trim(std::string_view(inner).substr(comma + 1)), l.number};
      const double a = constant_value(lo, origin, h.constants);
      const double b = constant_value(hi, origin, h.constants);
      if (!(a < b)) schema_error(origin, l.number, l.key + ": empty interval");
      h.chart.domain_box.push_back({a, b});
    }
  }
  for (const Line* l : excludes) {
    static constexpr std::pair<std::string_view, Chart::Exclusion::Op> ops[] = {
        {"<=", Chart::Exclusion::Op::LessEqual},
        {">=", Chart::Exclusion::Op::GreaterEqual},
        {"<", Chart::Exclusion::Op::Less},
        {">", Chart::Exclusion::Op::Greater},
    };
    std::optional<std::size_t> pos;
    std::size_t len = 0;
    Chart::Exclusion::Op op{};
    for (const auto& [tok, o] : ops) {
      const auto p = l->value.find(tok);
      if (p != std::string::npos && (!pos || p < *pos || (p == *pos && tok.size() > len))) {
        pos = p;
        len = tok.size();
        op = o;
      }
    }
    if (!pos) schema_error(origin, l->number, "exclude: expected a comparison (<, <=, >, >=)");
    try {
      const Expr lhs = parse_expr(l->value.substr(0, *pos), h.chart, h.constants);
      const Expr rhs = parse_expr(l->value.substr(*pos + len), h.chart, h.constants);
      h.chart.excluded_regions.push_back(
          {std::make_shared<const Expr>(lhs - rhs), op, l->value});
    } catch (const ParseError& e) {
      throw e.located(location(origin, l->number) + "exclude: ");
    } catch (const ValidationError& e) {
      schema_error(origin, l->number, std::string("exclude: ") + e.what());
    }
  }
  if (needs_domain) {
    try {
      h.chart.validate();
    } catch (const ValidationError& e) {
      schema_error(origin, 0, e.what());
    }
  }
  return h;
}

// Parses "base[i][j]..." or "T[l][m,n]" into base and indices.
struct ComponentKey {
  std::string base;
  std::vector<std::size_t> indices;
};

ComponentKey parse_key(const Line& l, std::string_view origin) {
  ComponentKey k;
  const auto br = l.key.find('[');
  k.base = trim(std::string_view(l.key).substr(0, br));
  if (br == std::string::npos) return k;
  std::string_view rest = std::string_view(l.key).substr(br);
  while (!rest.empty()) {
    if (rest.front() != '[') schema_error(origin, l.number, l.key + ": malformed index");
    const auto close = rest.find(']');
    if (close == std::string_view::npos) schema_error(origin, l.number, l.key + ": unterminated index");
    for (const auto& part : split_names(rest.substr(1, close - 1))) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        schema_error(origin, l.number, l.key + ": index must be a non-negative integer");
      k.indices.push_back(std::stoul(part));
    }
    rest = rest.substr(close + 1);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  }
  return k;
}

// Collects components of one family, rejecting duplicates and bad indices.
class Components {
 public:
  Components(std::string base, std::size_t rank, std::size_t n) : base_(std::move(base)), rank_(rank), n_(n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < rank; ++i) total *= n;
    exprs_.assign(total, Expr::number(0.0));
    set_.assign(total, false);
  }

  void add(const ComponentKey& k, const Line& l, const Expr& e, std::string_view origin) {
    if (k.indices.size() != rank_)
      schema_error(origin, l.number, l.key + ": expected " + std::to_string(rank_) + " indices");
    std::size_t flat = 0;
    for (std::size_t i : k.indices) {
      if (i >= n_) schema_error(origin, l.number, l.key + ": index out of range (dimension " + std::to_string(n_) + ")");
      flat = flat * n_ + i;
    }
    if (set_[flat]) schema_error(origin, l.number, l.key + ": duplicate key");
    set_[flat] = true;
    exprs_[flat] = e;
  }

  bool is_set(std::size_t flat) const { return set_[flat]; }
  bool any() const { return std::find(set_.begin(), set_.end(), true) != set_.end(); }
  std::vector<Expr>& exprs() { return exprs_; }

 private:
  std::string base_;
  std::size_t rank_;
  std::size_t n_;
  std::vector<Expr> exprs_;
  std::vector<bool> set_;
};

Expr parse_component(const Line& l, std::span<const std::string> vars, const ConstantTable& constants,
                     std::string_view origin) {
  try {
    return parse_expr(l.value, vars, constants);
  } catch (const ParseError& e) {
    throw e.located(location(origin, l.number) + l.key + ": ");
  } catch (const ValidationError& e) {
    schema_error(origin, l.number, l.key + ": " + e.what());
  }
}

Signature read_signature(const Header& h, std::string_view origin) {
  if (!h.signature) schema_error(origin, 0, "signature: missing");
  if (*h.signature == "lorentzian") return Signature::Lorentzian;
  if (*h.signature == "euclidean") return Signature::Euclidean;
  schema_error(origin, 0, "signature: expected lorentzian or euclidean, got '" + *h.signature + "'");
}

std::vector<std::size_t> scan_indices() {
  std::vector<std::size_t> v(kScanPoints);
  for (std::size_t i = 0; i < kScanPoints; ++i) v[i] = i;
  return v;
}

std::string point_text(std::span<const double> x) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

Eigen::MatrixXd value_matrix(const TensorValue& t) {
  const std::size_t n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = t.at(i, j).value();
  return m;
}

void check_metric(const MetricSpec& g, const std::string& name) {
  const std::size_t n = g.chart.dim();
  const int expected_negative = g.signature == Signature::Lorentzian ? 1 : 0;
  // Signs of the leading principal minors. With the eigenvalue count fixed, a
  // change here means some coordinate switches between timelike and spacelike
  // inside the box, which for a smooth metric needs a pole or a degeneracy in
  // between (the Schwarzschild horizon is the standard case).
  std::vector<int> minor_signs;
  std::vector<double> minor_point;
  for (std::size_t i : scan_indices()) {
    const auto x = sample_point(g.chart, 0, i, Stream::Validation);
    TensorValue v;
    try {
      v = evaluate(g, x, 0);
    } catch (const DomainError& e) {
      throw ValidationError(name + ": metric undefined at " + point_text(x) + ": " + e.what());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(value_matrix(v), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    int negative = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (std::abs(ev[k]) <= 1e-12 * std::max(scale, 1.0))
        throw ValidationError(name + ": metric degenerate at " + point_text(x));
      if (ev[k] < 0) ++negative;
    }
    if (negative != expected_negative)
      throw ValidationError(name + ": metric signature at " + point_text(x) + " has " + std::to_string(negative) +
                            " negative eigenvalue(s), " + std::string(to_string(g.signature)) + " needs " +
                            std::to_string(expected_negative));
    const Eigen::MatrixXd m = value_matrix(v);
    std::vector<int> signs(n, 0);
    for (std::size_t k = 1; k <= n; ++k) {
      const double d = m.topLeftCorner(k, k).determinant();
      if (std::abs(d) > 1e-12 * std::pow(std::max(scale, 1.0), static_cast<double>(k))) signs[k - 1] = d > 0 ? 1 : -1;
    }
    if (minor_signs.empty()) {
      minor_signs = signs;
      minor_point = x;
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (signs[k] == 0) continue;
      if (minor_signs[k] == 0) {
        minor_signs[k] = signs[k];
      } else if (minor_signs[k] != signs[k]) {
        throw ValidationError(name + ": metric changes character between " + point_text(minor_point) + " and " +
                              point_text(x) + " (leading " + std::to_string(k + 1) + "x" + std::to_string(k + 1) +
                              " minor changes sign); restrict the domain or add an exclusion");
      }
    }
  }
}

template <class Spec>
void check_finite(const Spec& s, const Chart& chart, const std::string& name, std::string_view what) {
  for (std::size_t i : scan_indices()) {
    const auto x = sample_point(chart, 0, i, Stream::Validation);
    try {
      (void)evaluate(s, x, 0);
    } catch (const DomainError& e) {
      throw ValidationError(name + ": " + std::string(what) + " undefined at " + point_text(x) + ": " + e.what());
    }
  }
}

void check_tetrad(const TetradSpec& e, const std::string& name) {
  for (std::size_t i : scan_indices()) {
    const auto x = sample_point(e.chart, 0, i, Stream::Validation);
    TensorValue v;
    try {
      v = evaluate(e, x, 0);
    } catch (const DomainError& err) {
      throw ValidationError(name + ": tetrad undefined at " + point_text(x) + ": " + err.what());
    }
    const Eigen::MatrixXd m = value_matrix(v);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[s.size() - 1] <= 1e-12 * s[0])
      throw ValidationError(name + ": tetrad not invertible at " + point_text(x));
  }
}

void check_metricity(const MetricSpec& g, const ConnectionSpec& c, const std::string& name) {
  for (std::size_t i : scan_indices()) {
    const auto x = sample_point(g.chart, 0, i, Stream::Validation);
    TensorValue gv;
    TensorValue cv;
    try {
      gv = evaluate(g, x, 1);
      cv = evaluate(c, x, 0);
    } catch (const DomainError& e) {
      throw ValidationError(name + ": fields undefined at " + point_text(x) + ": " + e.what());
    }
    const double r = metricity_residual(gv, cv).sup_value();
    const double scale = std::max(1.0, gv.sup_value());
    if (r > 1e-9 * scale)
      throw ValidationError(name + ": connection is not metric compatible at " + point_text(x) +
                            " (|nabla g| = " + std::to_string(r) + ")");
  }
}

}  // namespace

void validate_geometry(const GeometrySpec& geom) {
  const std::string& name = geom.name;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConnectionSpec>) {
          check_finite(d, d.chart, name, "connection");
        } else if constexpr (std::is_same_v<T, MetricSpec>) {
          check_metric(d, name);
        } else if constexpr (std::is_same_v<T, RiemannCartanSpec>) {
          check_metric(d.metric, name);
          if (const auto* c = std::get_if<ConnectionSpec>(&d.structure)) {
            check_metricity(d.metric, *c, name);
          } else {
            check_finite(std::get<TorsionSpec>(d.structure), d.metric.chart, name, "torsion");
          }
        } else if constexpr (std::is_same_v<T, TetradSpec>) {
          check_tetrad(d, name);
        } else if constexpr (std::is_same_v<T, FinslerSpec>) {
          try {
            validate_finsler_homogeneity(d);
          } catch (const DomainError& e) {
            throw ValidationError(name + ": Finsler function undefined: " + e.what());
          } catch (const ValidationError& e) {
            throw ValidationError(name + ": " + e.what());
          }
        }
      },
      geom.data);
}

GeometrySpec parse_geometry(std::string_view text, std::string_view origin) {
  const Document doc = split(text, origin, "geometry");
  Header h = read_header(doc, origin, true);
  if (!h.kind) schema_error(origin, 0, "kind: missing");
  const std::size_t n = h.chart.dim();
  const auto& vars = h.chart.coord_names;

  GeometrySpec geom;
  geom.name = h.name;
  const std::string& kind = *h.kind;
  if (kind == "affine") {
    geom.kind = GeometryKind::Affine;
  } else if (kind == "riemannian") {
    geom.kind = GeometryKind::Riemannian;
  } else if (kind == "riemann_cartan") {
    geom.kind = GeometryKind::RiemannCartan;
  } else if (kind == "weitzenbock") {
    geom.kind = GeometryKind::Weitzenbock;
  } else if (kind == "finsler") {
    geom.kind = GeometryKind::Finsler;
  } else {
    schema_error(origin, 0, "kind: unknown kind '" + kind + "'");
  }
  const bool metric_kind = geom.kind == GeometryKind::Riemannian || geom.kind == GeometryKind::RiemannCartan;
  if (h.signature && !metric_kind) schema_error(origin, 0, "signature: not allowed for kind " + kind);
  const Signature sig = metric_kind ? read_signature(h, origin) : Signature::Lorentzian;

  Components g("g", 2, n), gamma("Gamma", 3, n), torsion("T", 3, n), tetrad("e", 2, n);
  std::optional<Expr> finsler;
  std::vector<std::string> finsler_vars = vars;
  for (const auto& c : vars) finsler_vars.push_back("d" + c);

  auto allowed = [&](const std::string& base) {
    switch (geom.kind) {
      case GeometryKind::Affine: return base == "Gamma";
      case GeometryKind::Riemannian: return base == "g";
      case GeometryKind::RiemannCartan: return base == "g" || base == "T" || base == "Gamma";
      case GeometryKind::Weitzenbock: return base == "e";
      case GeometryKind::Finsler: return base == "F";
    }
    return false;
  };

  for (const Line& l : doc.components) {
    const ComponentKey k = parse_key(l, origin);
    if (k.base != "g" && k.base != "Gamma" && k.base != "T" && k.base != "e" && k.base != "F")
      schema_error(origin, l.number, l.key + ": unknown component");
    if (!allowed(k.base)) schema_error(origin, l.number, l.key + ": not allowed for kind " + kind);
    if (k.base == "F") {
      if (!k.indices.empty()) schema_error(origin, l.number, l.key + ": F takes no indices");
      if (finsler) schema_error(origin, l.number, "F: duplicate key");
      for (const auto& fv : finsler_vars)
        if (h.constants.contains(fv)) schema_error(origin, l.number, "const." + fv + ": shadows a velocity");
      finsler = parse_component(l, finsler_vars, h.constants, origin);
      continue;
    }
    const Expr e = parse_component(l, vars, h.constants, origin);
    if (k.base == "g") {
      g.add(k, l, e, origin);
    } else if (k.base == "Gamma") {
      gamma.add(k, l, e, origin);
    } else if (k.base == "e") {
      tetrad.add(k, l, e, origin);
    } else {
      if (k.indices.size() == 3 && k.indices[1] >= k.indices[2] && k.indices[1] < n && k.indices[2] < n)
        schema_error(origin, l.number, l.key + ": give T[l][m,n] with m < n only");
      torsion.add(k, l, e, origin);
    }
  }

  if (metric_kind) {
    auto& ge = g.exprs();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t a = i * n + j, b = j * n + i;
        if (g.is_set(a) && g.is_set(b)) {
          if (!ge[a].structurally_equal(ge[b]))
            schema_error(origin, 0, "g[" + std::to_string(i) + "][" + std::to_string(j) + "]: differs from g[" +
                                        std::to_string(j) + "][" + std::to_string(i) + "]");
        } else if (g.is_set(b)) {
          ge[a] = ge[b];
        } else {
          ge[b] = ge[a];
        }
      }
    if (!g.any()) schema_error(origin, 0, "g: no metric components given");
  }
  auto torsion_exprs = [&] {
    auto t = torsion.exprs();
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = m + 1; k < n; ++k) {
          const Expr& up = t[(l * n + m) * n + k];
          t[(l * n + k) * n + m] = up.is_zero() ? Expr::number(0.0) : -up;
        }
    return t;
  };

  switch (geom.kind) {
    case GeometryKind::Affine:
      geom.data = ConnectionSpec{h.chart, gamma.exprs()};
      break;
    case GeometryKind::Riemannian:
      geom.data = MetricSpec{h.chart, g.exprs(), sig};
      break;
    case GeometryKind::RiemannCartan: {
      if (torsion.any() && gamma.any()) schema_error(origin, 0, "give either T or Gamma for riemann_cartan, not both");
      RiemannCartanSpec rc{MetricSpec{h.chart, g.exprs(), sig}, TorsionSpec{h.chart, torsion_exprs()}};
      if (gamma.any()) rc.structure = ConnectionSpec{h.chart, gamma.exprs()};
      geom.data = std::move(rc);
      break;
    }
    case GeometryKind::Weitzenbock:
      if (!tetrad.any()) schema_error(origin, 0, "e: no tetrad components given");
      geom.data = TetradSpec{h.chart, tetrad.exprs()};
      break;
    case GeometryKind::Finsler:
      if (!finsler) schema_error(origin, 0, "F: missing");
      geom.data = FinslerSpec{h.chart, *finsler};
      break;
  }
  validate_geometry(geom);
  return geom;
}

VectorFieldSpec parse_vector(std::string_view text, std::string_view origin) {
  const Document doc = split(text, origin, "vector");
  Header h = read_header(doc, origin, false);
  if (h.signature) schema_error(origin, 0, "signature: not allowed in a vector file");
  if (!h.chart.domain_box.empty() || !h.chart.excluded_regions.empty())
    schema_error(origin, 0, "domain/exclude: not allowed in a vector file");
  const std::size_t n = h.chart.dim();
  Components xi("xi", 1, n);
  for (const Line& l : doc.components) {
    const ComponentKey k = parse_key(l, origin);
    if (k.base != "xi") schema_error(origin, l.number, l.key + ": unknown component (vector files take xi[m])");
    xi.add(k, l, parse_component(l, h.chart.coord_names, h.constants, origin), origin);
  }
  return VectorFieldSpec{h.name, h.chart, xi.exprs()};
}

namespace {
std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}
}  // namespace

GeometrySpec load_geometry_file(const std::filesystem::path& path) {
  return parse_geometry(read_file(path), path.string());
}

VectorFieldSpec load_vector_file(const std::filesystem::path& path) {
  return parse_vector(read_file(path), path.string());
}

}  // namespace cartansym
