#pragma once

#include <string>
#include <vector>

#include "opm/diagnostics.hpp"
#include "opm/model.hpp"

namespace opm {

/// Behavioral decomposition: creates a child diagram anchored at `process`
/// and populates it with the named subprocesses (created, or adopted when a
/// process of that name already exists). Every parent-diagram link incident
/// to the anchor is copied into the child together with its endpoints, so the
/// new level keeps its context. The child becomes the current diagram.
/// Returns the new diagram label.
Result<std::string> in_zoom(Model& model, const EntityId& process,
                            const std::vector<std::string>& subprocess_names);

/// Structural expansion: creates a child diagram anchored at `anchor` whose
/// members are the named constituents. Fresh names are created with
/// `member_kind`; existing entities are adopted with their own kind. Each
/// member of the anchor's kind is linked to the anchor by Aggregation (table
/// R permits only same-kind structural links); other members are placed
/// without an automatic link. Inherited context and the current-diagram
/// switch behave as for in_zoom.
Result<std::string> unfold(Model& model, const EntityId& anchor,
                           const std::vector<std::string>& member_names, NodeKind member_kind);

/// Cross-level checks:
///   C1  child diagram lacks a parent link incident to its anchor
///   C2  anchor is not a member of the parent diagram
///   C3  gap in a diagram's child numbering
std::vector<Diagnostic> check_consistency(const Model& model);

} // namespace opm
