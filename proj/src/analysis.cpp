#include "opm/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace opm {

namespace {

// The object an enabling link emanates from (states enable on behalf of
// their owner).
const Entity* enabler_of(const Model& m, const Endpoint& source) {
    if (const Entity* e = m.entity(source.target))
        return e;
    return m.state_owner(source.target);
}

std::map<std::string, int> preorder_index(const Model& m) {
    std::map<std::string, int> index;
    int i = 0;
    for (const Diagram* d : m.preorder())
        index.emplace(d->label, i++);
    return index;
}

} // namespace

Result<std::vector<EntityId>> enabling_systems(const Model& m, const EntityId& process) {
    const Entity* p = m.entity(process);
    if (!p)
        return Error{Errc::UnknownEntity, "no entity with id '" + process.value + "'"};
    if (!p->is_process())
        return Error{Errc::NotAProcess, "\"" + p->name + "\" is not a process"};

    std::set<EntityId> seen;
    std::vector<const Entity*> systems;
    for (const Link& l : m.links) {
        if (group_of(l.kind) != ProceduralGroup::Enabling || l.destination.target != process)
            continue;
        if (const Entity* e = enabler_of(m, l.source))
            if (seen.insert(e->id).second)
                systems.push_back(e);
    }
    std::sort(systems.begin(), systems.end(),
              [](const Entity* a, const Entity* b) { return a->name < b->name; });
    std::vector<EntityId> out;
    for (const Entity* e : systems)
        out.push_back(e->id);
    return out;
}

Result<Requirement> derive_requirements(const Model& m, const EntityId& system) {
    const Entity* s = m.entity(system);
    if (!s)
        return Error{Errc::UnknownEntity, "no entity with id '" + system.value + "'"};
    if (!s->is_object())
        return Error{Errc::NotAnObject, "\"" + s->name + "\" is not an object"};

    std::map<std::string, int> order = preorder_index(m);
    auto diagram_rank = [&](const std::string& label) {
        auto it = order.find(label);
        return it == order.end() ? static_cast<int>(order.size()) : it->second;
    };

    struct Hit {
        RequirementFunction fn;
        int rank;
        std::string process_name;
    };
    std::vector<Hit> hits;
    std::set<std::pair<EntityId, int>> seen;
    for (const Link& l : m.links) {
        if (group_of(l.kind) != ProceduralGroup::Enabling)
            continue;
        const Entity* enabler = enabler_of(m, l.source);
        if (!enabler || enabler->id != system)
            continue;
        const Entity* p = m.entity(l.destination.target);
        if (!p)
            continue;
        if (!seen.insert({p->id, static_cast<int>(l.kind)}).second)
            continue;
        const Diagram* home = m.home_of_link(l.id);
        std::string label = home ? home->label : "";
        hits.push_back(Hit{RequirementFunction{p->id, l.kind, label}, diagram_rank(label),
                           p->name});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.rank != b.rank)
            return a.rank < b.rank;
        if (a.process_name != b.process_name)
            return a.process_name < b.process_name;
        return static_cast<int>(a.fn.via) < static_cast<int>(b.fn.via);
    });

    Requirement req;
    req.system = system;
    std::set<std::string> diagram_seen;
    std::vector<std::pair<int, std::string>> diagram_order;
    for (Hit& h : hits) {
        if (!h.fn.diagram.empty() && diagram_seen.insert(h.fn.diagram).second)
            diagram_order.emplace_back(h.rank, h.fn.diagram);
        req.functions.push_back(std::move(h.fn));
    }
    std::sort(diagram_order.begin(), diagram_order.end());
    for (auto& [rank, label] : diagram_order)
        req.source_diagrams.push_back(label);
    return req;
}

std::vector<Diagnostic> dangling_report(const Model& m) {
    std::vector<Diagnostic> out;

    std::set<EntityId> enabled_processes;
    std::set<EntityId> enabling_objects;
    for (const Link& l : m.links) {
        if (group_of(l.kind) != ProceduralGroup::Enabling)
            continue;
        enabled_processes.insert(l.destination.target);
        if (const Entity* e = enabler_of(m, l.source))
            enabling_objects.insert(e->id);
    }

    for (const Entity& e : m.entities) {
        if (e.is_process() && !enabled_processes.count(e.id))
            out.push_back(Diagnostic{"A1", Severity::Warning, "\"" + e.name + "\"",
                                     "process has no enabling system", {}});
        if (e.is_object() && !enabling_objects.count(e.id))
            out.push_back(Diagnostic{"A2", Severity::Warning, "\"" + e.name + "\"",
                                     "object enables no process", {}});
    }
    std::sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.code != b.code)
            return a.code < b.code;
        return a.subject < b.subject;
    });
    return out;
}

std::string render_requirement(const Model& m, const Requirement& req) {
    std::string out = "SYSTEM " + m.display_name(req.system) + "\n";
    for (const RequirementFunction& fn : req.functions) {
        out += "  - " + m.display_name(fn.process) + " (" + to_string(fn.via);
        if (!fn.diagram.empty())
            out += ", " + fn.diagram;
        out += ")\n";
    }
    return out;
}

std::string requirement_to_json(const Model& m, const Requirement& req) {
    nlohmann::ordered_json doc;
    doc["system"] = m.display_name(req.system);
    doc["functions"] = nlohmann::ordered_json::array();
    for (const RequirementFunction& fn : req.functions) {
        nlohmann::ordered_json f;
        f["process"] = m.display_name(fn.process);
        f["via"] = to_string(fn.via);
        f["diagram"] = fn.diagram;
        doc["functions"].push_back(std::move(f));
    }
    doc["source_diagrams"] = req.source_diagrams;
    return doc.dump(2) + "\n";
}

} // namespace opm
