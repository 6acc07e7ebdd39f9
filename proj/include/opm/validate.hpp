#pragma once

#include <vector>

#include "opm/diagnostics.hpp"
#include "opm/model.hpp"

namespace opm {

/// True iff the (kind, source-kind, destination-kind) triple is in table R:
///
///   Aggregation/Exhibition/Generalization/Instantiation:
///       Object->Object, Process->Process
///   Consumption:        Object->Process, State->Process
///   Result:             Process->Object, Process->State
///   Effect:             Object->Process, Process->Object
///   Agent, Instrument:  Object->Process, State->Process
///
/// Everything else is illegal; states never touch structural links.
bool legality(LinkVariant kind, NodeKind source_kind, NodeKind destination_kind);

/// Rule catalog:
///   R1  structural link with illegal endpoint kinds
///   R2  procedural link with illegal endpoint kinds
///   R3  self-link
///   R4  dangling or mis-resolved link endpoint
///   R5  duplicate canonical name (entities model-wide, states per owner)
///   R6  state owned by a process or by a missing entity
///   R7  diagram member id that resolves to nothing
///   R8  malformed diagram tree (root shape, parentage, labels, cycles)
///   R9  refinement anchor missing or absent from the parent diagram
///   W1  isolated entity (no link touches it or its states)
///   W2  process with no enabler and no transforming link
///   W3  state never used as a link endpoint
///   W4  entity shared by diagrams outside one refinement chain
struct Rule {
    const char* code;
    Severity severity;
    const char* description;
};

const std::vector<Rule>& rule_table();

/// Deterministic: diagnostics sorted by rule code, then subject name. Accepts
/// any structurally loadable model; an empty result means every Error rule
/// holds.
std::vector<Diagnostic> validate(const Model& model);

} // namespace opm
