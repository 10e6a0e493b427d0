#pragma once

#include <string>
#include <string_view>

#include "flowca/rules.hpp"

namespace flowca {

// {"neighborhood": ..., "omega": ..., "lambda": [{"direction", "shifted", "condition"}]}
// Unknown fields are rejected with errc::bad_format.
RuleSpec parse_spec_json(std::string_view text);
std::string spec_to_json(const RuleSpec& spec, int indent = 2);

} // namespace flowca
