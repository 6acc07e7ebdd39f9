#pragma once

#include <string>
#include <vector>

#include "opm/model.hpp"

namespace opm {

struct GraphNode {
    std::string id;
    std::string kind; // "object" | "process" | "state"
    std::string label;
    std::vector<std::string> diagrams;

    bool operator==(const GraphNode&) const = default;
};

struct GraphEdge {
    std::string source;
    std::string target;
    std::string kind; // one of the nine link tags or "has-state"

    bool operator==(const GraphEdge&) const = default;
};

/// Flat node/edge interchange form of a model. Node count equals entities
/// plus states; edge count equals links plus one "has-state" edge per state.
struct GraphDoc {
    std::string model;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;

    bool operator==(const GraphDoc&) const = default;
};

/// Deterministic: nodes in diagram preorder then name (states follow their
/// owner), edges likewise. Fails with InvalidModel when the validator
/// reports errors.
Result<GraphDoc> to_graph(const Model& model);

/// DOT digraph: shape=box for objects, shape=ellipse for processes,
/// shape=Mrecord for states; edges labeled with the kind tag.
std::string to_dot(const GraphDoc& graph);

/// Node-link JSON: {"model", "nodes": [{"id","kind","label","diagrams"}],
/// "edges": [{"source","target","kind"}]}.
std::string to_json_graph(const GraphDoc& graph);

} // namespace opm
