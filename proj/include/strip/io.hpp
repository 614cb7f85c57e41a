#pragma once

#include <json.hpp>

#include "strip/homology.hpp"
#include "strip/potential.hpp"

namespace strip::io {

using json = nlohmann::json;

json to_json(cplx z);
json to_json(const CVec& v);
json to_json(const CMat& m);
json to_json(const Tolerances& t);
json to_json(const SpectralPolynomial& d);
json to_json(const AdmissibilityReport& r);
json to_json(const PeriodData& pd);
json to_json(const Potential& xi);
json to_json(const Divisor& d);
json cycles_to_json(const CycleBasis& b, int samples_per_segment = 16);

// Parsing throws Error("invalid input") on malformed documents.
cplx complex_from(const json& j);
CVec vector_from(const json& j);
// {genus, coeffs} or {seeds}; seeds are expanded through the root quadruples.
SpectralPolynomial curve_from(const json& j, const Tolerances& tol = {});
Potential potential_from(const json& j);
// Overrides the named fields; unknown names throw.
void apply_tolerance(Tolerances& t, const std::string& name, double value);
Tolerances tolerances_from(const json& j, Tolerances base = {});

json read_file(const std::string& path);

}  // namespace strip::io
