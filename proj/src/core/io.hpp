#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/density.hpp"
#include "core/discrete.hpp"
#include "core/inequalities.hpp"
#include "core/semigroup.hpp"

namespace lsilab {

using Json = nlohmann::json;

// Density spec schema:
//   {"type":"gaussian","mean":[...],"cov":[[...]]}
//   {"type":"mixture","weights":[...],"components":[{"mean":[...],"cov":[[...]]},...]}
//   {"type":"grid","lo":[...],"hi":[...],"shape":[...],"values":[...]}
Json density_to_json(const Density& d);
// Throws ParseError on schema problems; value-level validation errors keep
// their own codes.
Density density_from_json(const Json& j);
Density density_from_string(const std::string& text);

Json report_to_json(const InequalityReport& r);

Json trace_to_json(const SemigroupTrace& trace);
// Header: s,integrand,reversed_integrand,forward_integrand
std::string trace_to_csv(const SemigroupTrace& trace);

// Header: n,discrete_ent,discrete_grad_sq,gaussian_ent,gaussian_grad_sq,deficit_gap
std::string clt_to_csv(const std::vector<CltRow>& rows);

// 17 significant digits, '.' decimal separator, no grouping.
std::string format_csv_number(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lsilab
