#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dualweight/appendix.hpp"
#include "dualweight/divergence.hpp"
#include "dualweight/parabolic.hpp"
#include "dualweight/root_system.hpp"
#include "dualweight/suites.hpp"

namespace dw {

/// Fractions are written as "p/q" strings (integers as "p").
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const QVector& v);
nlohmann::json to_json(const QMatrix& m);
nlohmann::json to_json(const Subspace& s);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const CoefficientExpansion& e);
nlohmann::json to_json(const ParabolicDatum& d);
/// Gramm matrix, components, positive roots and the weight table.
nlohmann::json system_report(const RootSystem& rs);

/// Throws FormatError on anything that is not a fraction string.
Rational rational_from_json(const nlohmann::json& j);
QVector vector_from_json(const nlohmann::json& j);

/// Trace export: system, 1-based selection, horizon, seed, n0, the cone rays
/// and the integer ray weights, plus the derived per-level components.
nlohmann::json trace_to_json(const SimTrace& t);
/// Rebuilds the plan from the system and selection and replays the weights.
/// Throws FormatError if the stored rays, n0 or components disagree.
SimTrace trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerifyRow& r);
nlohmann::json to_json(const SimRow& r);

/// {"schema": 1, "command": ..., "rows": [...]}; the simulate report also
/// echoes its configuration.
nlohmann::json verify_report(const std::vector<VerifyRow>& rows);
nlohmann::json simulate_report(const std::vector<SimRow>& rows, const nlohmann::json& config);

std::string verify_csv(const std::vector<VerifyRow>& rows);
std::string simulate_csv(const std::vector<SimRow>& rows);
/// One line per simple root: root, d, coupling row, weighted row.
std::string system_csv(const RootSystem& rs);

}  // namespace dw
