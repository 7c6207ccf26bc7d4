#pragma once

// Instance documents (JSON) and report serialization.
//
// Document sections: "name" (optional), "group", "complex", "voltage",
// "covering" (optional; absent means the index-1 cover). Every validation
// failure is an InputError carrying a JSON-pointer location.

#include <string>
#include <vector>

#include <json.hpp>

#include "flatcover/theorems.hpp"

namespace flatcover {

using Json = nlohmann::ordered_json;

/// A catalog name or {degree, generators, labels}.
GroupTable parse_group(const Json& j, const std::string& where = "/group");

/// Validated complex; relator strings may use the declared aliases.
BaseComplex parse_complex(const Json& j, const std::string& where = "/complex");

/// [{edge, element}], one entry per edge. Edges are ids or aliases,
/// elements are indices or labels.
Voltage parse_voltage(const Json& j, const BaseComplex& c, const GroupTable& g, const std::string& where = "/voltage");

/// Full document. Non-flat voltages are rejected with every violated relator
/// and its product listed.
InstanceData parse_instance(const Json& doc);
InstanceData load_instance(const std::string& path);

/// Inverse of parse_instance, up to formatting; words coverings are written
/// with generator names.
Json instance_to_json(const InstanceData& data);

Json report_to_json(const VerificationReport& r);

}  // namespace flatcover
