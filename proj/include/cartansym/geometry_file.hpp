#pragma once

// Line-oriented definition files for geometries and vector fields.
//
//   # comment
//   [geometry]
//   name      = schwarzschild
//   kind      = riemannian          affine | riemannian | riemann_cartan | weitzenbock | finsler
//   coords    = t, r, theta, phi
//   signature = lorentzian          riemannian / riemann_cartan only
//   const.M   = 1                   named constant (constant expression)
//   domain.r  = [3, 10]             sampling interval, one per coordinate
//   exclude   = r < 2*M + 0.1       excluded region, repeatable
//
//   [components]
//   g[0][0] = -(1 - 2*M/r)
//
// Component keys: g[m][n], Gamma[l][m][n], T[l][m,n] (m < n), e[a][m],
// F (velocities named d<coord>), xi[m] in vector files. Absent components
// are zero. See docs/file_format.md for complete examples.

#include <filesystem>
#include <string>
#include <string_view>

#include "cartansym/tensor.hpp"

namespace cartansym {

/// Parse and fully validate a geometry definition. `origin` prefixes error
/// messages. Throws ParseError or ValidationError.
GeometrySpec parse_geometry(std::string_view text, std::string_view origin = "<text>");
VectorFieldSpec parse_vector(std::string_view text, std::string_view origin = "<text>");

GeometrySpec load_geometry_file(const std::filesystem::path& path);
VectorFieldSpec load_vector_file(const std::filesystem::path& path);

/// Load-time checks, also run by parse_geometry: metric signature at seeded
/// points, tetrad invertibility, Finsler homogeneity, metricity of a given
/// Riemann-Cartan connection.
void validate_geometry(const GeometrySpec& geom);

}  // namespace cartansym
