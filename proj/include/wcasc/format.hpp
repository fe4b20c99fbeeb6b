#pragma once

#include <string>
#include <string_view>

#include "wcasc/model.hpp"
#include "wcasc/policy.hpp"

namespace wcasc {

// Parses the v1 instance format (line-oriented, '#' comments, declarations
// before use). Throws ParseError with a line number and a distinct diagnostic
// code per failure class.
Instance parse_instance(std::string_view text);

// Canonical serialization: items, states, realizations and utility entries
// sorted by id, rationals in lowest terms, fixed single-space separators.
// parse_instance(serialize_instance(x)) == x, and structurally equal instances
// serialize to identical bytes.
std::string serialize_instance(const Instance& instance);

// Compact one-line policy rendering: "stop" or "item(state:subtree ...)".
std::string render_tree(const Instance& instance, const PolicyTree& tree);

// Indented multi-line rendering for text reports.
std::string render_tree_indented(const Instance& instance, const PolicyTree& tree);

// "{}" or "{item=state ...}" in selection order.
std::string render_observations(const Instance& instance, const PartialRealization& psi);

}  // namespace wcasc
