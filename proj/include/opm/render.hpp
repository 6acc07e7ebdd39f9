#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opm/model.hpp"

namespace opm {

/// Axis-aligned bounds of one drawn entity or state. For processes the
/// ellipse is inscribed in the box.
struct Placement {
    EntityId id;
    NodeKind kind = NodeKind::Object;
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(const Placement& other) const;
    bool overlaps(const Placement& other) const;
};

struct Route {
    EntityId link;
    std::vector<std::pair<int, int>> points;
};

struct Layout {
    int width = 0;
    int height = 0;
    std::vector<Placement> placements;
    std::vector<Route> routes;

    const Placement* placement(const EntityId& id) const;
};

/// Greedy word wrap used for shape sizing and SVG labels.
std::vector<std::string> wrap_label(std::string_view text, std::size_t max_chars = 18);

/// Deterministic layered placement for one diagram: objects on the outer
/// columns, processes in the middle, the anchor (when present) as an
/// enclosing shape containing the refined members, states nested inside
/// their owner. Fails with UnknownDiagram / InvalidModel.
Result<Layout> layout(const Model& model, std::string_view diagram_label);

/// SVG 1.1 document: one rect per object, one ellipse per process, one
/// rounded rect per state, routes drawn with kind-specific terminator
/// markers (see docs/notation.md). Byte-deterministic.
std::string to_svg(const Layout& layout, const Model& model);

} // namespace opm
