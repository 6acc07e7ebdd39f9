#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "opm/diagnostics.hpp"
#include "opm/model.hpp"

namespace opm {

/// Outcome of parse(): either a model (diagnostics then hold warnings only)
/// or error diagnostics and no model; never a partial model.
struct ParseResult {
    std::optional<Model> model;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Parses a .opm document. Statements are period-terminated; names are
/// double-quoted ("\"" and "\\\\" are the only escapes); "//" starts a line
/// comment; newlines are insignificant. A missing header yields a model named
/// "untitled".
///
/// Diagnostic codes:
///   P001 unexpected character or unknown statement keyword
///   P002 unterminated string
///   P003 invalid escape sequence
///   P004 expected token (period, comma, name, verb, ...)
///   P101 reference to an undeclared name
///   P102 duplicate declaration
///   P103 ambiguous state reference
///   P104 name empty after canonicalization
///   P105 misplaced header
///   P106 state list on a process
///   P107 duplicate state name
///   P201 illegal link endpoints (validator table R)
///   P202 self-link
///   P203 in-zoom anchor or member is not a process
///   P204 entity already refined
///   P205 refinement member names the anchor itself
ParseResult parse(std::string_view text);

} // namespace opm
