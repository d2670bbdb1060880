#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "locirr/constants.hpp"
#include "locirr/dcs.hpp"
#include "locirr/graph.hpp"
#include "locirr/pipeline.hpp"
#include "locirr/rounding.hpp"

namespace locirr {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

json to_json(const ConstantProfile& p);
// Missing fields keep the default values; input_error on unknown keys or bad
// types.
ConstantProfile profile_from_json(const json& j);

json to_json(const DerivedQuantities& q);
json to_json(const FeasibilityReport& r);
json to_json(const RunReport& r);
json to_json(const RoundingCheck& c);
json to_json(const DcsCertificate& c);

// {"parts": [[...]], "verdicts": [...]}; ascending canonical indices.
json decomposition_json(const Decomposition& d);

// Reads "parts" into edge sets over g; input_error on bad indices.
std::vector<EdgeSet> parts_from_json(const Graph& g, const json& j);

// DCS instance file {"lambda": [...] or n, "t": [...]}.
DcsInstance dcs_instance_from_json(const Graph& g, const json& j);

json read_json_file(const std::string& path);

} // namespace locirr
