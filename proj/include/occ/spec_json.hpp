#pragma once
#include <json.hpp>
#include <string>

#include "occ/symbolic.hpp"

namespace occ {

inline constexpr const char* kSpecSchema = "occ.codespec/1";

// {"variant": ..., "N": k, "base": {...}, ...}; field names fixed by schema/codespec.schema.json.
nlohmann::json spec_to_json(const CodeSpec& spec);
// SchemaError with the JSON pointer of the offending field.
CodeSpec spec_from_json(const nlohmann::json& j);
// ParseError carries line and column.
CodeSpec parse_spec(const std::string& text);
CodeSpec validate_spec_file(const std::string& path);

}  // namespace occ
