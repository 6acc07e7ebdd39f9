#include "opm/graph.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "opm/validate.hpp"

namespace opm {

namespace {

std::string dot_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

Result<GraphDoc> to_graph(const Model& m) {
    if (has_errors(validate(m)))
        return Error{Errc::InvalidModel, "model has validation errors"};

    std::vector<const Diagram*> order = m.preorder();
    std::map<EntityId, int> home_rank;
    std::map<EntityId, int> link_rank;
    std::map<EntityId, std::vector<std::string>> memberships;
    int rank = 0;
    for (const Diagram* d : order) {
        for (const EntityId& id : d->entities) {
            home_rank.emplace(id, rank);
            memberships[id].push_back(d->label);
        }
        for (const EntityId& id : d->links)
            link_rank.emplace(id, rank);
        ++rank;
    }
    auto entity_rank = [&](const EntityId& id) {
        auto it = home_rank.find(id);
        return it == home_rank.end() ? rank : it->second;
    };

    std::vector<const Entity*> ordered;
    for (const Entity& e : m.entities)
        ordered.push_back(&e);
    std::sort(ordered.begin(), ordered.end(), [&](const Entity* a, const Entity* b) {
        int ra = entity_rank(a->id);
        int rb = entity_rank(b->id);
        if (ra != rb)
            return ra < rb;
        return a->name < b->name;
    });

    GraphDoc doc;
    doc.model = m.name;
    for (const Entity* e : ordered) {
        doc.nodes.push_back(
            GraphNode{e->id.value, to_string(e->kind), e->name, memberships[e->id]});
        for (const StateDef& s : e->states)
            doc.nodes.push_back(GraphNode{s.id.value, "state", s.name, memberships[e->id]});
    }

    std::vector<const Link*> links;
    for (const Link& l : m.links)
        links.push_back(&l);
    auto edge_rank = [&](const EntityId& id) {
        auto it = link_rank.find(id);
        return it == link_rank.end() ? rank : it->second;
    };
    std::stable_sort(links.begin(), links.end(), [&](const Link* a, const Link* b) {
        int ra = edge_rank(a->id);
        int rb = edge_rank(b->id);
        if (ra != rb)
            return ra < rb;
        std::string as = m.display_name(a->source.target);
        std::string bs = m.display_name(b->source.target);
        if (as != bs)
            return as < bs;
        std::string ad = m.display_name(a->destination.target);
        std::string bd = m.display_name(b->destination.target);
        if (ad != bd)
            return ad < bd;
        return static_cast<int>(a->kind) < static_cast<int>(b->kind);
    });
    for (const Link* l : links)
        doc.edges.push_back(
            GraphEdge{l->source.target.value, l->destination.target.value, to_string(l->kind)});
    for (const Entity* e : ordered)
        for (const StateDef& s : e->states)
            doc.edges.push_back(GraphEdge{e->id.value, s.id.value, "has-state"});
    return doc;
}

std::string to_dot(const GraphDoc& graph) {
    std::string out = "digraph \"" + dot_escape(graph.model) + "\" {\n";
    out += "  rankdir=TB;\n";
    for (const GraphNode& n : graph.nodes) {
        const char* shape = "box";
        if (n.kind == "process")
            shape = "ellipse";
        else if (n.kind == "state")
            shape = "Mrecord";
        out += "  \"" + dot_escape(n.id) + "\" [shape=" + shape + ", label=\"" +
               dot_escape(n.label) + "\", diagrams=\"" + dot_escape(join(n.diagrams, ",")) +
               "\"];\n";
    }
    for (const GraphEdge& e : graph.edges)
        out += "  \"" + dot_escape(e.source) + "\" -> \"" + dot_escape(e.target) +
               "\" [label=\"" + dot_escape(e.kind) + "\"];\n";
    out += "}\n";
    return out;
}

std::string to_json_graph(const GraphDoc& graph) {
    nlohmann::ordered_json doc;
    doc["model"] = graph.model;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const GraphNode& n : graph.nodes) {
        nlohmann::ordered_json node;
        node["id"] = n.id;
        node["kind"] = n.kind;
        node["label"] = n.label;
        node["diagrams"] = n.diagrams;
        doc["nodes"].push_back(std::move(node));
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const GraphEdge& e : graph.edges) {
        nlohmann::ordered_json edge;
        edge["source"] = e.source;
        edge["target"] = e.target;
        edge["kind"] = e.kind;
        doc["edges"].push_back(std::move(edge));
    }
    return doc.dump(2) + "\n";
}

} // namespace opm
