#pragma once

// Text and JSON renderings. JSON numbers use %.17g so that values round-trip
// exactly; non-finite numbers become null.

#include <string>
#include <vector>

#include "cartansym/symmetry.hpp"

namespace cartansym {

inline constexpr std::string_view kReportSchema = "cartansym.report/1";

/// Every residual name a report can carry. JSON output lists all of them,
/// null when not applicable to the check.
inline constexpr std::string_view kResidualNames[] = {
    "lie_Gamma", "lie_g", "lie_T", "lambda_constancy", "lambda_antisymmetry", "finsler_lift", "tangency", "lie_A",
};

std::string format_number(double v);
std::string json_quote(std::string_view s);

std::string report_json(const CheckReport& r);
std::string report_text(const CheckReport& r);
std::string report_json(const EquivalenceResult& r);
std::string report_text(const EquivalenceResult& r);

/// Combined verdict string of a two-mode run: the shared verdict, or
/// "inconclusive" / "disagreement".
std::string_view combined_verdict(const EquivalenceResult& r);

struct MatrixRow {
  std::string geometry;
  std::string vector;
  EquivalenceResult result;
};
std::string matrix_json(const std::vector<MatrixRow>& rows, const CheckConfig& cfg);
std::string matrix_text(const std::vector<MatrixRow>& rows, const CheckConfig& cfg);

struct OracleRow {
  std::string geometry;
  std::string vector;
  OracleStudy study;
};
std::string oracle_json(const std::vector<OracleRow>& rows);
std::string oracle_text(const std::vector<OracleRow>& rows);

std::string catalog_json();
std::string catalog_text();

}  // namespace cartansym
