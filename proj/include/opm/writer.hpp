#pragma once

#include <string>
#include <string_view>

#include "opm/model.hpp"

namespace opm {

/// Double-quotes a name, escaping backslash and double-quote.
std::string quote_name(std::string_view name);

/// Renders the model as a canonical .opm document: one statement per line,
/// diagram sections in tree preorder separated by blank lines, declarations
/// sorted by name, links sorted by source name, destination name, kind. The
/// output reparses to a structurally equal model and is byte-stable.
/// Fails with InvalidModel when the validator reports errors.
Result<std::string> generate(const Model& model);

} // namespace opm
