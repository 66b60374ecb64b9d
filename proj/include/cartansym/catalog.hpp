#pragma once

// Builtin geometries and vector fields, stored as definition-file text and
// parsed once on first use.

#include <string>
#include <string_view>
#include <vector>

#include "cartansym/tensor.hpp"

namespace cartansym {

struct CatalogItem {
  std::string_view name;
  std::string_view summary;
  std::string_view source;  // definition-file text
};

const std::vector<CatalogItem>& catalog_geometry_items();
const std::vector<CatalogItem>& catalog_vector_items();

/// nullptr when the name is not in the catalog.
const GeometrySpec* catalog_geometry(std::string_view name);
const VectorFieldSpec* catalog_vector(std::string_view name);

/// Catalog name first, then a file path. Throws IoError when neither exists.
GeometrySpec resolve_geometry(std::string_view name_or_path);
VectorFieldSpec resolve_vector(std::string_view name_or_path);

/// Catalog vector fields written in the chart's coordinates.
std::vector<const VectorFieldSpec*> catalog_vectors_for(const Chart& chart);

/// Whether the frame-bundle check applies (affine, riemannian, riemann_cartan).
bool has_cartan_model(GeometryKind kind);

struct CatalogPair {
  const GeometrySpec* geometry;
  const VectorFieldSpec* vector;
};

/// Every compatible (geometry, vector) pair with a Cartan model, in catalog order.
std::vector<CatalogPair> catalog_cartan_pairs();

struct NamedPair {
  std::string_view geometry;
  std::string_view vector;
};

/// Non-Killing metric pairs used by the flow-oracle convergence table.
std::vector<NamedPair> catalog_oracle_pairs();

}  // namespace cartansym
