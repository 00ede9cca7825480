#pragma once

#include <json.hpp>

#include "siegel/generate.hpp"
#include "siegel/laurent.hpp"

namespace siegel {

using nlohmann::json;

// All numeric payloads are canonical-grammar strings, never JSON numbers.

json field_spec_to_json(const FieldPtr& f);
FieldPtr field_spec_from_json(const json& j);

/// Shorthands for the CLI: "rationals"/"q", "qt" (rationals with theta),
/// "f5"/"q5", "f5t"/"q5t", "f9" (= F_3^2), "f9t", or an inline JSON spec.
FieldPtr parse_field_shorthand(const std::string& text);

json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j, const FieldPtr& field, int rows, int cols);

json siegel_to_json(const SiegelObject& S, const std::string& type = "siegel");
SiegelObject siegel_from_json(const json& j);

json ptable_to_json(const PTable& P);

json instance_to_json(const LatticeInstance& L);
LatticeInstance instance_from_json(const json& j);

json laurent_to_json(const LaurentSeries& s);

}  // namespace siegel
