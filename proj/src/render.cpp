#include "opm/render.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "opm/validate.hpp"

namespace opm {

namespace {

// Geometry constants, in abstract units (also used as SVG pixels). Frozen:
// golden outputs depend on them.
constexpr int kCharWidth = 8;
constexpr int kLineHeight = 16;
constexpr int kBoxPadX = 12;
constexpr int kBoxPadY = 10;
constexpr int kEllipseSlackX = 28;
constexpr int kEllipseSlackY = 14;
constexpr int kStateInset = 10;
constexpr int kStateGap = 6;
constexpr int kMinBoxWidth = 64;
constexpr int kMargin = 30;
constexpr int kColumnGap = 90;
constexpr int kRowGap = 36;
constexpr int kAnchorPadX = 50;
constexpr int kAnchorPadY = 34;

struct Box {
    int w = 0;
    int h = 0;
};

int text_width(const std::vector<std::string>& lines) {
    std::size_t widest = 0;
    for (const std::string& line : lines)
        widest = std::max(widest, line.size());
    return static_cast<int>(widest) * kCharWidth;
}

Box state_box(const StateDef& s) {
    auto lines = wrap_label(s.name);
    return Box{text_width(lines) + 2 * kBoxPadX,
               static_cast<int>(lines.size()) * kLineHeight + 8};
}

Box entity_box(const Entity& e) {
    auto lines = wrap_label(e.name);
    Box box{std::max(text_width(lines) + 2 * kBoxPadX, kMinBoxWidth),
            static_cast<int>(lines.size()) * kLineHeight + 2 * kBoxPadY};
    if (e.is_process()) {
        box.w += kEllipseSlackX;
        box.h += kEllipseSlackY;
    }
    for (const StateDef& s : e.states) {
        Box sb = state_box(s);
        box.w = std::max(box.w, sb.w + 2 * kStateInset);
        box.h += sb.h + kStateGap;
    }
    if (!e.states.empty())
        box.h += kStateGap;
    return box;
}

struct Clip {
    double x;
    double y;
};

// Intersection of the segment from this shape's center towards (tx, ty)
// with the shape border.
Clip clip_to_shape(const Placement& p, double tx, double ty) {
    double cx = p.x + p.w / 2.0;
    double cy = p.y + p.h / 2.0;
    double dx = tx - cx;
    double dy = ty - cy;
    if (dx == 0 && dy == 0)
        return Clip{cx, cy};
    double t;
    if (p.kind == NodeKind::Process) {
        double rx = p.w / 2.0;
        double ry = p.h / 2.0;
        t = 1.0 / std::sqrt((dx * dx) / (rx * rx) + (dy * dy) / (ry * ry));
    } else {
        t = 2.0; // beyond the far corner
        if (dx != 0)
            t = std::min(t, (p.w / 2.0) / std::abs(dx));
        if (dy != 0)
            t = std::min(t, (p.h / 2.0) / std::abs(dy));
    }
    t = std::min(t, 1.0);
    return Clip{cx + dx * t, cy + dy * t};
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

const char* marker_for(LinkVariant kind) {
    switch (kind) {
    case LinkVariant::Aggregation: return "m-aggregation";
    case LinkVariant::Exhibition: return "m-exhibition";
    case LinkVariant::Generalization: return "m-generalization";
    case LinkVariant::Instantiation: return "m-instantiation";
    case LinkVariant::Consumption: return "m-arrow";
    case LinkVariant::Result: return "m-arrow";
    case LinkVariant::Effect: return "m-arrow";
    case LinkVariant::Agent: return "m-agent";
    case LinkVariant::Instrument: return "m-instrument";
    }
    return "m-arrow";
}

void emit_label(std::string& svg, std::string_view text, int cx, int top) {
    auto lines = wrap_label(text);
    int y = top + kLineHeight - 3;
    for (const std::string& line : lines) {
        svg += "  <text x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(y) +
               "\" text-anchor=\"middle\">" + xml_escape(line) + "</text>\n";
        y += kLineHeight;
    }
}

} // namespace

bool Placement::contains(const Placement& other) const {
    return other.x >= x && other.y >= y && other.x + other.w <= x + w &&
           other.y + other.h <= y + h;
}

bool Placement::overlaps(const Placement& other) const {
    return x < other.x + other.w && other.x < x + w && y < other.y + other.h &&
           other.y < y + h;
}

const Placement* Layout::placement(const EntityId& id) const {
    for (const Placement& p : placements)
        if (p.id == id)
            return &p;
    return nullptr;
}

std::vector<std::string> wrap_label(std::string_view text, std::size_t max_chars) {
    std::vector<std::string> lines;
    std::string word;
    std::string line;
    auto flush_word = [&] {
        if (word.empty())
            return;
        while (word.size() > max_chars) { // hard split for very long words
            if (!line.empty()) {
                lines.push_back(line);
                line.clear();
            }
            lines.push_back(word.substr(0, max_chars));
            word.erase(0, max_chars);
        }
        if (line.empty())
            line = word;
        else if (line.size() + 1 + word.size() <= max_chars)
            line += " " + word;
        else {
            lines.push_back(line);
            line = word;
        }
        word.clear();
    };
    for (char c : text) {
        if (c == ' ')
            flush_word();
        else
            word.push_back(c);
    }
    flush_word();
    if (!line.empty())
        lines.push_back(line);
    if (lines.empty())
        lines.push_back("");
    return lines;
}

Result<Layout> layout(const Model& m, std::string_view diagram_label) {
    const Diagram* d = m.diagram(diagram_label);
    if (!d)
        return Error{Errc::UnknownDiagram,
                     "no diagram labeled '" + std::string(diagram_label) + "'"};
    if (has_errors(validate(m)))
        return Error{Errc::InvalidModel, "model has validation errors"};

    // Classify members: refined go inside the anchor shape, objects split to
    // the outer columns, remaining processes stack in the middle.
    const Entity* anchor = d->anchor ? m.entity(*d->anchor) : nullptr;
    std::set<EntityId> refined_set;
    std::vector<const Entity*> refined;
    if (anchor) { // without an anchor there is nothing to nest into
        for (const EntityId& id : d->refined) {
            if (const Entity* e = m.entity(id))
                if (refined_set.insert(id).second && e != anchor)
                    refined.push_back(e);
        }
    }

    std::vector<const Entity*> left, right, middle;
    std::size_t object_index = 0;
    for (const EntityId& id : d->entities) {
        const Entity* e = m.entity(id);
        if (!e || refined_set.count(id) || (anchor && e == anchor))
            continue;
        if (e->is_object())
            (object_index++ % 2 == 0 ? left : right).push_back(e);
        else
            middle.push_back(e);
    }

    Layout out;

    // Measure the middle column: anchor block first, context processes below.
    Box anchor_block{};
    std::vector<Box> refined_boxes;
    int anchor_header_h = 0; // label plus the anchor's own state stack
    if (anchor) {
        int inner_w = 0;
        int inner_h = 0;
        for (const Entity* e : refined) {
            Box b = entity_box(*e);
            refined_boxes.push_back(b);
            inner_w = std::max(inner_w, b.w);
            inner_h += b.h;
        }
        if (!refined.empty())
            inner_h += static_cast<int>(refined.size() - 1) * kRowGap;
        auto anchor_lines = wrap_label(anchor->name);
        anchor_header_h = static_cast<int>(anchor_lines.size()) * kLineHeight;
        for (const StateDef& s : anchor->states)
            anchor_header_h += state_box(s).h + kStateGap;
        Box own = entity_box(*anchor);
        anchor_block.w = std::max(inner_w + 2 * kAnchorPadX, own.w);
        anchor_block.h = anchor_header_h + inner_h + 2 * kAnchorPadY;
        if (refined.empty())
            anchor_block = own;
    }

    auto column_width = [&](const std::vector<const Entity*>& col) {
        int w = 0;
        for (const Entity* e : col)
            w = std::max(w, entity_box(*e).w);
        return w;
    };
    int left_w = column_width(left);
    int mid_w = std::max(column_width(middle), anchor ? anchor_block.w : 0);
    int right_w = column_width(right);

    int x = kMargin;
    int left_x = x;
    if (left_w)
        x += left_w + kColumnGap;
    int mid_x = x;
    if (mid_w)
        x += mid_w + kColumnGap;
    int right_x = x;
    if (right_w)
        x += right_w + kColumnGap;
    out.width = (x > kMargin ? x - kColumnGap : x) + kMargin;

    auto place_column = [&](const std::vector<const Entity*>& col, int col_x, int col_w) {
        int y = kMargin;
        for (const Entity* e : col) {
            Box b = entity_box(*e);
            out.placements.push_back(Placement{e->id, e->kind, col_x + (col_w - b.w) / 2, y,
                                               b.w, b.h});
            y += b.h + kRowGap;
        }
        return y;
    };

    int left_bottom = place_column(left, left_x, left_w);

    int mid_bottom = kMargin;
    if (anchor) {
        int bx = mid_x + (mid_w - anchor_block.w) / 2;
        out.placements.push_back(
            Placement{anchor->id, anchor->kind, bx, kMargin, anchor_block.w, anchor_block.h});
        int yy = kMargin + kAnchorPadY + anchor_header_h;
        for (std::size_t i = 0; i < refined.size(); ++i) {
            const Box& b = refined_boxes[i];
            out.placements.push_back(Placement{refined[i]->id, refined[i]->kind,
                                               bx + (anchor_block.w - b.w) / 2, yy, b.w, b.h});
            yy += b.h + kRowGap;
        }
        mid_bottom = kMargin + anchor_block.h + kRowGap;
    }
    {
        int y = mid_bottom;
        for (const Entity* e : middle) {
            Box b = entity_box(*e);
            out.placements.push_back(
                Placement{e->id, e->kind, mid_x + (mid_w - b.w) / 2, y, b.w, b.h});
            y += b.h + kRowGap;
        }
        mid_bottom = y;
    }

    int right_bottom = place_column(right, right_x, right_w);

    out.height = std::max({left_bottom, mid_bottom, right_bottom, kMargin + kRowGap}) -
                 kRowGap + kMargin;

    // States nest inside their owner, below the label block.
    std::vector<Placement> state_placements;
    for (const Placement& p : out.placements) {
        const Entity* e = m.entity(p.id);
        if (!e || e->states.empty())
            continue;
        auto lines = wrap_label(e->name);
        int y = p.y + static_cast<int>(lines.size()) * kLineHeight + 2 * kBoxPadY - 4;
        for (const StateDef& s : e->states) {
            Box b = state_box(s);
            state_placements.push_back(
                Placement{s.id, NodeKind::State, p.x + (p.w - b.w) / 2, y, b.w, b.h});
            y += b.h + kStateGap;
        }
    }
    out.placements.insert(out.placements.end(), state_placements.begin(),
                          state_placements.end());

    // Routes: straight segments clipped to the shape borders. Links whose
    // endpoints are not placed in this diagram are skipped.
    for (const EntityId& id : d->links) {
        const Link* l = m.link(id);
        if (!l)
            continue;
        const Placement* src = out.placement(l->source.target);
        const Placement* dst = out.placement(l->destination.target);
        if (!src || !dst)
            continue;
        double scx = src->x + src->w / 2.0;
        double scy = src->y + src->h / 2.0;
        double dcx = dst->x + dst->w / 2.0;
        double dcy = dst->y + dst->h / 2.0;
        if (scx == dcx && scy == dcy)
            continue;
        Clip a = clip_to_shape(*src, dcx, dcy);
        Clip b = clip_to_shape(*dst, scx, scy);
        Route r;
        r.link = id;
        r.points.emplace_back(static_cast<int>(std::lround(a.x)),
                              static_cast<int>(std::lround(a.y)));
        r.points.emplace_back(static_cast<int>(std::lround(b.x)),
                              static_cast<int>(std::lround(b.y)));
        out.routes.push_back(std::move(r));
    }
    return out;
}

std::string to_svg(const Layout& layout, const Model& m) {
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(layout.width) + "\" height=\"" + std::to_string(layout.height) +
           "\" viewBox=\"0 0 " + std::to_string(layout.width) + " " +
           std::to_string(layout.height) +
           "\" font-family=\"monospace\" font-size=\"13\">\n";
    svg += "  <defs>\n"
           "    <marker id=\"m-aggregation\" markerWidth=\"14\" markerHeight=\"12\" refX=\"13\""
           " refY=\"6\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<path d=\"M1,1 L13,6 L1,11 Z\" fill=\"black\"/></marker>\n"
           "    <marker id=\"m-exhibition\" markerWidth=\"14\" markerHeight=\"12\" refX=\"13\""
           " refY=\"6\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<path d=\"M1,1 L13,6 L1,11 Z\" fill=\"white\" stroke=\"black\"/>"
           "<path d=\"M4,3.5 L10,6 L4,8.5 Z\" fill=\"black\"/></marker>\n"
           "    <marker id=\"m-generalization\" markerWidth=\"14\" markerHeight=\"12\""
           " refX=\"13\" refY=\"6\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<path d=\"M1,1 L13,6 L1,11 Z\" fill=\"white\" stroke=\"black\"/></marker>\n"
           "    <marker id=\"m-instantiation\" markerWidth=\"14\" markerHeight=\"12\""
           " refX=\"13\" refY=\"6\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<path d=\"M1,1 L13,6 L1,11 Z\" fill=\"white\" stroke=\"black\"/>"
           "<circle cx=\"5\" cy=\"6\" r=\"1.6\" fill=\"black\"/></marker>\n"
           "    <marker id=\"m-arrow\" markerWidth=\"14\" markerHeight=\"12\" refX=\"13\""
           " refY=\"6\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<path d=\"M1,1 L13,6 L1,11 L4.5,6 Z\" fill=\"black\"/></marker>\n"
           "    <marker id=\"m-arrow-back\" markerWidth=\"14\" markerHeight=\"12\" refX=\"1\""
           " refY=\"6\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<path d=\"M13,1 L1,6 L13,11 L9.5,6 Z\" fill=\"black\"/></marker>\n"
           "    <marker id=\"m-agent\" markerWidth=\"14\" markerHeight=\"14\" refX=\"12\""
           " refY=\"7\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<circle cx=\"7\" cy=\"7\" r=\"5\" fill=\"black\"/></marker>\n"
           "    <marker id=\"m-instrument\" markerWidth=\"14\" markerHeight=\"14\" refX=\"12\""
           " refY=\"7\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">"
           "<circle cx=\"7\" cy=\"7\" r=\"5\" fill=\"white\" stroke=\"black\"/></marker>\n"
           "  </defs>\n";

    for (const Placement& p : layout.placements) {
        std::string name = m.display_name(p.id);
        switch (p.kind) {
        case NodeKind::Object:
            svg += "  <rect x=\"" + std::to_string(p.x) + "\" y=\"" + std::to_string(p.y) +
                   "\" width=\"" + std::to_string(p.w) + "\" height=\"" + std::to_string(p.h) +
                   "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
            break;
        case NodeKind::Process:
            svg += "  <ellipse cx=\"" + std::to_string(p.x + p.w / 2) + "\" cy=\"" +
                   std::to_string(p.y + p.h / 2) + "\" rx=\"" + std::to_string(p.w / 2) +
                   "\" ry=\"" + std::to_string(p.h / 2) +
                   "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
            break;
        case NodeKind::State:
            svg += "  <rect rx=\"8\" ry=\"8\" x=\"" + std::to_string(p.x) + "\" y=\"" +
                   std::to_string(p.y) + "\" width=\"" + std::to_string(p.w) + "\" height=\"" +
                   std::to_string(p.h) + "\" fill=\"white\" stroke=\"black\"/>\n";
            break;
        }
        // Shapes that contain other shapes (anchors, stateful objects) carry
        // their label at the top; plain shapes center it.
        bool container = false;
        for (const Placement& q : layout.placements) {
            if (&q != &p && p.contains(q)) {
                container = true;
                break;
            }
        }
        auto lines = wrap_label(name);
        int label_top;
        if (container)
            label_top = p.y + (p.kind == NodeKind::Process ? kBoxPadY + 4 : kBoxPadY - 2);
        else
            label_top =
                p.y + (p.h - static_cast<int>(lines.size()) * kLineHeight) / 2;
        emit_label(svg, name, p.x + p.w / 2, label_top);
    }

    for (const Route& r : layout.routes) {
        const Link* l = m.link(r.link);
        if (!l || r.points.size() < 2)
            continue;
        std::string points;
        for (std::size_t i = 0; i < r.points.size(); ++i) {
            if (i)
                points += " ";
            points += std::to_string(r.points[i].first) + "," +
                      std::to_string(r.points[i].second);
        }
        svg += "  <polyline points=\"" + points +
               "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" marker-end=\"url(#" +
               marker_for(l->kind) + ")\"";
        if (l->kind == LinkVariant::Effect)
            svg += " marker-start=\"url(#m-arrow-back)\"";
        svg += "/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace opm
