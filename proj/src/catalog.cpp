#include "cartansym/catalog.hpp"

#include <filesystem>

#include "cartansym/error.hpp"
#include "cartansym/geometry_file.hpp"

namespace cartansym {
namespace {

constexpr std::string_view kCartesianBox = R"(coords = t, x, y, z
domain.t = [-2, 2]
domain.x = [-2, 2]
domain.y = [-2, 2]
domain.z = [-2, 2]
)";

std::string with_box(std::string_view head, std::string_view tail) {
  return std::string(head) + std::string(kCartesianBox) + std::string(tail);
}

const std::vector<std::string>& geometry_sources() {
  static const std::vector<std::string> sources = {
      with_box("[geometry]\nname = minkowski4\nkind = riemannian\nsignature = lorentzian\n",
               "[components]\ng[0][0] = -1\ng[1][1] = 1\ng[2][2] = 1\ng[3][3] = 1\n"),
      R"([geometry]
name = euclidean2
kind = riemannian
signature = euclidean
coords = x, y
domain.x = [-2, 2]
domain.y = [-2, 2]
[components]
g[0][0] = 1
g[1][1] = 1
)",
      R"([geometry]
name = euclidean2_polar
kind = riemannian
signature = euclidean
coords = r, phi
domain.r = [0.5, 2]
domain.phi = [-3, 3]
[components]
g[0][0] = 1
g[1][1] = r^2
)",
      R"([geometry]
name = sphere2
kind = riemannian
signature = euclidean
coords = theta, phi
domain.theta = [0.3, 2.8]
domain.phi = [-3, 3]
[components]
g[0][0] = 1
g[1][1] = sin(theta)^2
)",
      R"([geometry]
name = schwarzschild
kind = riemannian
signature = lorentzian
coords = t, r, theta, phi
const.M = 1
domain.t = [-5, 5]
domain.r = [3, 10]
domain.theta = [0.3, 2.8]
domain.phi = [-3, 3]
exclude = r < 2*M + 0.1
[components]
g[0][0] = -(1 - 2*M/r)
g[1][1] = 1/(1 - 2*M/r)
g[2][2] = r^2
g[3][3] = r^2*sin(theta)^2
)",
      R"([geometry]
name = flrw_flat
kind = riemannian
signature = lorentzian
coords = t, x, y, z
domain.t = [0.5, 2]
domain.x = [-2, 2]
domain.y = [-2, 2]
domain.z = [-2, 2]
[components]
g[0][0] = -1
g[1][1] = t^(4/3)
g[2][2] = t^(4/3)
g[3][3] = t^(4/3)
)",
      R"([geometry]
name = desitter
kind = riemannian
signature = lorentzian
coords = t, x, y, z
const.H = 1
domain.t = [-1, 1]
domain.x = [-2, 2]
domain.y = [-2, 2]
domain.z = [-2, 2]
[components]
g[0][0] = -1
g[1][1] = exp(2*H*t)
g[2][2] = exp(2*H*t)
g[3][3] = exp(2*H*t)
)",
      with_box("[geometry]\nname = flat_affine\nkind = affine\n", "[components]\n"),
      R"([geometry]
name = sphere2_affine
kind = affine
coords = theta, phi
domain.theta = [0.3, 2.8]
domain.phi = [-3, 3]
[components]
Gamma[0][1][1] = -sin(theta)*cos(theta)
Gamma[1][0][1] = cos(theta)/sin(theta)
Gamma[1][1][0] = cos(theta)/sin(theta)
)",
      with_box("[geometry]\nname = affine_with_torsion\nkind = riemann_cartan\nsignature = lorentzian\n",
               "[components]\ng[0][0] = -1\ng[1][1] = 1\ng[2][2] = 1\ng[3][3] = 1\nT[1][0,2] = 1\n"),
      with_box("[geometry]\nname = rc_teleparallel\nkind = riemann_cartan\nsignature = lorentzian\n",
               "[components]\ng[0][0] = -1\ng[1][1] = 1\ng[2][2] = exp(2*x)\ng[3][3] = 1\nGamma[2][2][1] = 1\n"),
      with_box("[geometry]\nname = weitzenbock_identity\nkind = weitzenbock\n",
               "[components]\ne[0][0] = 1\ne[1][1] = 1\ne[2][2] = 1\ne[3][3] = 1\n"),
      with_box("[geometry]\nname = weitzenbock_diag\nkind = weitzenbock\n",
               "[components]\ne[0][0] = 1\ne[1][1] = exp(x)\ne[2][2] = 1\ne[3][3] = 1\n"),
      R"([geometry]
name = finsler_minkowski
kind = finsler
coords = t, x, y, z
domain.t = [-2, 2]
domain.x = [-2, 2]
domain.y = [-2, 2]
domain.z = [-2, 2]
[components]
F = sqrt(abs(-dt^2 + dx^2 + dy^2 + dz^2))
)",
      R"([geometry]
name = finsler_randers
kind = finsler
coords = t, x, y, z
domain.t = [-2, 2]
domain.x = [-2, 2]
domain.y = [-2, 2]
domain.z = [-2, 2]
[components]
F = sqrt(dt^2 + dx^2 + dy^2 + dz^2) + 0.3*dx
)",
  };
  return sources;
}

std::string vec(std::string_view name, std::string_view coords, std::string_view comps) {
  std::string s = "[vector]\nname = ";
  s += name;
  s += "\ncoords = ";
  s += coords;
  s += "\n[components]\n";
  s += comps;
  return s;
}

constexpr std::string_view kTXYZ = "t, x, y, z";
constexpr std::string_view kSch = "t, r, theta, phi";
constexpr std::string_view kSph = "theta, phi";
constexpr std::string_view kXY = "x, y";
constexpr std::string_view kPolar = "r, phi";

const std::vector<std::string>& vector_sources() {
  static const std::vector<std::string> sources = {
      vec("trans_t", kTXYZ, "xi[0] = 1\n"),
      vec("trans_x", kTXYZ, "xi[1] = 1\n"),
      vec("trans_y", kTXYZ, "xi[2] = 1\n"),
      vec("trans_z", kTXYZ, "xi[3] = 1\n"),
      vec("rot_xy", kTXYZ, "xi[1] = -y\nxi[2] = x\n"),
      vec("rot_yz", kTXYZ, "xi[2] = -z\nxi[3] = y\n"),
      vec("rot_zx", kTXYZ, "xi[3] = -x\nxi[1] = z\n"),
      vec("boost_tx", kTXYZ, "xi[0] = x\nxi[1] = t\n"),
      vec("boost_ty", kTXYZ, "xi[0] = y\nxi[2] = t\n"),
      vec("boost_tz", kTXYZ, "xi[0] = z\nxi[3] = t\n"),
      vec("dilation", kTXYZ, "xi[1] = x\n"),
      vec("quad_x", kTXYZ, "xi[1] = x^2\n"),
      vec("desitter_time", kTXYZ, "xi[0] = 1\nxi[1] = -x\nxi[2] = -y\nxi[3] = -z\n"),
      vec("sch_time", kSch, "xi[0] = 1\n"),
      vec("sch_rot_z", kSch, "xi[3] = 1\n"),
      vec("sch_rot_x", kSch, "xi[2] = sin(phi)\nxi[3] = cos(theta)/sin(theta)*cos(phi)\n"),
      vec("sch_rot_y", kSch, "xi[2] = -cos(phi)\nxi[3] = cos(theta)/sin(theta)*sin(phi)\n"),
      vec("sch_trans_x", kSch,
          "xi[1] = sin(theta)*cos(phi)\nxi[2] = cos(theta)*cos(phi)/r\nxi[3] = -sin(phi)/(r*sin(theta))\n"),
      vec("sch_boost_x", kSch,
          "xi[0] = r*sin(theta)*cos(phi)\nxi[1] = t*sin(theta)*cos(phi)\nxi[2] = t*cos(theta)*cos(phi)/r\n"
          "xi[3] = -t*sin(phi)/(r*sin(theta))\n"),
      vec("sph_rot_z", kSph, "xi[1] = 1\n"),
      vec("sph_rot_x", kSph, "xi[0] = sin(phi)\nxi[1] = cos(theta)/sin(theta)*cos(phi)\n"),
      vec("sph_rot_y", kSph, "xi[0] = -cos(phi)\nxi[1] = cos(theta)/sin(theta)*sin(phi)\n"),
      vec("sph_shift_theta", kSph, "xi[0] = 1\n"),
      vec("e2_trans_x", kXY, "xi[0] = 1\n"),
      vec("e2_trans_y", kXY, "xi[1] = 1\n"),
      vec("e2_rot", kXY, "xi[0] = -y\nxi[1] = x\n"),
      vec("e2_dilation", kXY, "xi[0] = x\nxi[1] = y\n"),
      vec("e2_quad", kXY, "xi[0] = x^2\n"),
      vec("polar_rot", kPolar, "xi[1] = 1\n"),
      vec("polar_trans_x", kPolar, "xi[0] = cos(phi)\nxi[1] = -sin(phi)/r\n"),
      vec("polar_dilation", kPolar, "xi[0] = r\n"),
  };
  return sources;
}

constexpr std::string_view kGeometrySummaries[] = {
    "flat spacetime, Cartesian",
    "Euclidean plane, Cartesian",
    "Euclidean plane, polar",
    "round unit sphere",
    "Schwarzschild exterior, M = 1",
    "spatially flat FLRW, a(t) = t^(2/3)",
    "de Sitter, flat slicing, H = 1",
    "flat affine space, Gamma = 0",
    "Levi-Civita connection of the sphere as affine data",
    "flat metric with constant torsion T^x_{ty} = 1",
    "metric compatible connection given by components, with torsion",
    "trivial tetrad",
    "tetrad diag(1, exp(x), 1, 1)",
    "Finsler function of the Minkowski metric",
    "Randers-type Finsler function",
};

constexpr std::string_view kVectorSummaries[] = {
    "time translation", "x translation", "y translation", "z translation",
    "rotation in the xy plane", "rotation in the yz plane", "rotation in the zx plane",
    "boost along x", "boost along y", "boost along z",
    "dilation of x", "x^2 d_x", "de Sitter time translation",
    "static time translation", "rotation about z", "rotation about x", "rotation about y",
    "flat-space x translation", "flat-space x boost",
    "rotation about z", "rotation about x", "rotation about y", "shift of theta",
    "x translation", "y translation", "rotation", "dilation", "x^2 d_x",
    "rotation", "x translation", "radial dilation",
};

struct Parsed {
  std::vector<GeometrySpec> geometries;
  std::vector<VectorFieldSpec> vectors;
  std::vector<CatalogItem> geometry_items;
  std::vector<CatalogItem> vector_items;
};

const Parsed& parsed() {
  static const Parsed p = [] {
    Parsed out;
    const auto& gs = geometry_sources();
    for (std::size_t i = 0; i < gs.size(); ++i) {
      out.geometries.push_back(parse_geometry(gs[i], "catalog"));
    }
    const auto& vs = vector_sources();
    for (std::size_t i = 0; i < vs.size(); ++i) out.vectors.push_back(parse_vector(vs[i], "catalog"));
    for (std::size_t i = 0; i < gs.size(); ++i)
      out.geometry_items.push_back({out.geometries[i].name, kGeometrySummaries[i], gs[i]});
    for (std::size_t i = 0; i < vs.size(); ++i)
      out.vector_items.push_back({out.vectors[i].name, kVectorSummaries[i], vs[i]});
    return out;
  }();
  return p;
}

}  // namespace

const std::vector<CatalogItem>& catalog_geometry_items() { return parsed().geometry_items; }
const std::vector<CatalogItem>& catalog_vector_items() { return parsed().vector_items; }

const GeometrySpec* catalog_geometry(std::string_view name) {
  for (const auto& g : parsed().geometries)
    if (g.name == name) return &g;
  return nullptr;
}

const VectorFieldSpec* catalog_vector(std::string_view name) {
  for (const auto& v : parsed().vectors)
    if (v.name == name) return &v;
  return nullptr;
}

GeometrySpec resolve_geometry(std::string_view name_or_path) {
  if (const auto* g = catalog_geometry(name_or_path)) return *g;
  const std::filesystem::path p{std::string(name_or_path)};
  if (!std::filesystem::exists(p))
    throw IoError("'" + std::string(name_or_path) + "' is neither a catalog geometry nor a readable file");
  return load_geometry_file(p);
}

VectorFieldSpec resolve_vector(std::string_view name_or_path) {
  if (const auto* v = catalog_vector(name_or_path)) return *v;
  const std::filesystem::path p{std::string(name_or_path)};
  if (!std::filesystem::exists(p))
    throw IoError("'" + std::string(name_or_path) + "' is neither a catalog vector field nor a readable file");
  return load_vector_file(p);
}

std::vector<const VectorFieldSpec*> catalog_vectors_for(const Chart& chart) {
  std::vector<const VectorFieldSpec*> out;
  for (const auto& v : parsed().vectors)
    if (v.chart.same_coordinates(chart)) out.push_back(&v);
  return out;
}

bool has_cartan_model(GeometryKind kind) {
  return kind == GeometryKind::Affine || kind == GeometryKind::Riemannian || kind == GeometryKind::RiemannCartan;
}

std::vector<CatalogPair> catalog_cartan_pairs() {
  std::vector<CatalogPair> out;
  for (const auto& g : parsed().geometries) {
    if (!has_cartan_model(g.kind)) continue;
    for (const auto* v : catalog_vectors_for(g.chart())) out.push_back({&g, v});
  }
  return out;
}

std::vector<NamedPair> catalog_oracle_pairs() {
  return {
      {"minkowski4", "dilation"},
      {"flrw_flat", "trans_t"},
      {"schwarzschild", "sch_trans_x"},
      {"sphere2", "sph_shift_theta"},
      {"euclidean2_polar", "polar_dilation"},
  };
}

}  // namespace cartansym
