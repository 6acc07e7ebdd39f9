#pragma once

#include <string>
#include <vector>

#include "opm/diagnostics.hpp"
#include "opm/model.hpp"

namespace opm {

/// One derived function of an enabling system: a process the system enables,
/// the enabling variant, and the diagram the link lives in.
struct RequirementFunction {
    EntityId process;
    LinkVariant via = LinkVariant::Instrument;
    std::string diagram;
};

/// Requirements specification for one enabling system, gathered across every
/// diagram. Functions are deduplicated and ordered by diagram preorder, then
/// process name.
struct Requirement {
    EntityId system;
    std::vector<RequirementFunction> functions;
    std::vector<std::string> source_diagrams;
};

/// Objects that enable the process through Agent/Instrument links (a linked
/// state counts for its owner), ordered by name.
Result<std::vector<EntityId>> enabling_systems(const Model& model, const EntityId& process);

Result<Requirement> derive_requirements(const Model& model, const EntityId& system);

/// A1 for every process with no enabler, A2 for every object that enables
/// nothing; deterministic order.
std::vector<Diagnostic> dangling_report(const Model& model);

/// Plain-text block:
///   SYSTEM <name>
///     - <function> (<variant>, <diagram>)
std::string render_requirement(const Model& model, const Requirement& requirement);

/// Structured (JSON) rendering mirroring the Requirement fields.
std::string requirement_to_json(const Model& model, const Requirement& requirement);

} // namespace opm
