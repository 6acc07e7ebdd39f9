#include "opm/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace opm {

bool legality(LinkVariant kind, NodeKind source_kind, NodeKind destination_kind) {
    using NK = NodeKind;
    const NK s = source_kind;
    const NK d = destination_kind;
    switch (kind) {
    case LinkVariant::Aggregation:
    case LinkVariant::Exhibition:
    case LinkVariant::Generalization:
    case LinkVariant::Instantiation:
        return s == d && s != NK::State;
    case LinkVariant::Consumption:
        return (s == NK::Object || s == NK::State) && d == NK::Process;
    case LinkVariant::Result:
        return s == NK::Process && (d == NK::Object || d == NK::State);
    case LinkVariant::Effect:
        return (s == NK::Object && d == NK::Process) || (s == NK::Process && d == NK::Object);
    case LinkVariant::Agent:
    case LinkVariant::Instrument:
        return (s == NK::Object || s == NK::State) && d == NK::Process;
    }
    return false;
}

const std::vector<Rule>& rule_table() {
    static const std::vector<Rule> rules = {
        {"R1", Severity::Error, "structural link with illegal endpoint kinds"},
        {"R2", Severity::Error, "procedural link with illegal endpoint kinds"},
        {"R3", Severity::Error, "self-link"},
        {"R4", Severity::Error, "dangling or mis-resolved link endpoint"},
        {"R5", Severity::Error, "duplicate canonical name or identifier"},
        {"R6", Severity::Error, "state owned by a process or by a missing entity"},
        {"R7", Severity::Error, "diagram member id that resolves to nothing"},
        {"R8", Severity::Error, "malformed diagram tree"},
        {"R9", Severity::Error, "refinement anchor missing or absent from parent"},
        {"W1", Severity::Warning, "isolated entity"},
        {"W2", Severity::Warning, "process with no enabler and no transforming link"},
        {"W3", Severity::Warning, "state never used as a link endpoint"},
        {"W4", Severity::Warning, "entity shared by diagrams outside one refinement chain"},
    };
    return rules;
}

namespace {

std::string endpoint_name(const Model& m, const Endpoint& ep) {
    std::string name = m.display_name(ep.target);
    return name.empty() ? ep.target.value : name;
}

std::string link_subject(const Model& m, const Link& l) {
    return "\"" + endpoint_name(m, l.source) + "\"->\"" + endpoint_name(m, l.destination) + "\"";
}

bool is_ancestor(const Model& m, const std::string& ancestor, const std::string& label) {
    const Diagram* d = m.diagram(label);
    std::size_t guard = m.diagrams.size() + 1;
    while (d && guard--) {
        if (d->label == ancestor)
            return true;
        d = d->parent ? m.diagram(*d->parent) : nullptr;
    }
    return false;
}

} // namespace

std::vector<Diagnostic> validate(const Model& m) {
    std::vector<Diagnostic> out;
    auto report = [&](const char* code, Severity sev, std::string subject, std::string message) {
        out.push_back(Diagnostic{code, sev, std::move(subject), std::move(message), {}});
    };

    // R4/R3/R1/R2: link endpoint integrity and legality.
    for (const Link& l : m.links) {
        bool resolved = true;
        for (const Endpoint* ep : {&l.source, &l.destination}) {
            auto actual = m.resolve(ep->target);
            if (!actual) {
                report("R4", Severity::Error, link_subject(m, l),
                       "endpoint '" + ep->target.value + "' does not resolve");
                resolved = false;
            } else if (*actual != ep->kind) {
                report("R4", Severity::Error, link_subject(m, l),
                       "endpoint '" + ep->target.value + "' recorded as " +
                           to_string(ep->kind) + " but resolves to " + to_string(*actual));
                resolved = false;
            }
        }
        if (!resolved)
            continue;
        if (l.source.target == l.destination.target) {
            report("R3", Severity::Error, link_subject(m, l), "entity linked to itself");
            continue;
        }
        if (!legality(l.kind, l.source.kind, l.destination.kind)) {
            const char* code = family_of(l.kind) == LinkFamily::Structural ? "R1" : "R2";
            report(code, Severity::Error, link_subject(m, l),
                   std::string(to_string(l.kind)) + " link cannot join " +
                       to_string(l.source.kind) + " and " + to_string(l.destination.kind));
        }
    }

    // R5: name and id uniqueness.
    {
        std::map<std::string, int> names;
        for (const Entity& e : m.entities)
            ++names[e.name];
        for (const auto& [name, count] : names)
            if (count > 1)
                report("R5", Severity::Error, "\"" + name + "\"",
                       "canonical name used by " + std::to_string(count) + " entities");
        for (const Entity& e : m.entities) {
            std::map<std::string, int> state_names;
            for (const StateDef& s : e.states)
                ++state_names[s.name];
            for (const auto& [name, count] : state_names)
                if (count > 1)
                    report("R5", Severity::Error, "\"" + e.name + "\"",
                           "state name \"" + name + "\" repeated within one owner");
        }
        std::map<EntityId, int> ids;
        for (const Entity& e : m.entities) {
            ++ids[e.id];
            for (const StateDef& s : e.states)
                ++ids[s.id];
        }
        for (const Link& l : m.links)
            ++ids[l.id];
        for (const auto& [id, count] : ids)
            if (count > 1)
                report("R5", Severity::Error, id.value,
                       "id used " + std::to_string(count) + " times");
    }

    // R6: state ownership.
    for (const Entity& e : m.entities) {
        for (const StateDef& s : e.states) {
            if (s.owner != e.id)
                report("R6", Severity::Error, "\"" + s.name + "\"",
                       "state stored under \"" + e.name + "\" but owned by '" + s.owner.value +
                           "'");
            else if (!e.is_object())
                report("R6", Severity::Error, "\"" + s.name + "\"",
                       "state owned by process \"" + e.name + "\"");
        }
    }

    // R7: diagram membership integrity.
    for (const Diagram& d : m.diagrams) {
        for (const EntityId& id : d.entities)
            if (!m.entity(id))
                report("R7", Severity::Error, d.label,
                       "entity member '" + id.value + "' does not resolve to an entity");
        for (const EntityId& id : d.links)
            if (!m.link(id))
                report("R7", Severity::Error, d.label,
                       "link member '" + id.value + "' does not resolve to a link");
        for (const EntityId& id : d.refined)
            if (!d.has_entity(id))
                report("R7", Severity::Error, d.label,
                       "refined member '" + id.value + "' is not a member of the diagram");
    }

    // R8: diagram tree shape.
    {
        if (!m.diagram("SD"))
            report("R8", Severity::Error, "SD", "root diagram \"SD\" is missing");
        std::map<std::string, int> labels;
        for (const Diagram& d : m.diagrams)
            ++labels[d.label];
        for (const auto& [label, count] : labels)
            if (count > 1)
                report("R8", Severity::Error, label,
                       "label used by " + std::to_string(count) + " diagrams");
        for (const Diagram& d : m.diagrams) {
            if (d.label == "SD") {
                if (d.parent)
                    report("R8", Severity::Error, d.label, "root diagram has a parent");
                if (d.anchor)
                    report("R8", Severity::Error, d.label, "root diagram has an anchor");
                continue;
            }
            if (!d.parent) {
                report("R8", Severity::Error, d.label, "non-root diagram has no parent");
                continue;
            }
            if (!m.diagram(*d.parent)) {
                report("R8", Severity::Error, d.label,
                       "parent diagram '" + *d.parent + "' does not exist");
                continue;
            }
            if (!label_ordinal(*d.parent, d.label))
                report("R8", Severity::Error, d.label,
                       "label is not '" + *d.parent + "' plus an ordinal");
            if (!is_ancestor(m, "SD", d.label))
                report("R8", Severity::Error, d.label,
                       "diagram is not reachable from the root");
        }
    }

    // R9: anchor integrity.
    for (const Diagram& d : m.diagrams) {
        if (d.label == "SD")
            continue;
        if (!d.anchor) {
            report("R9", Severity::Error, d.label, "non-root diagram has no anchor");
            continue;
        }
        const Entity* anchor = m.entity(*d.anchor);
        if (!anchor) {
            report("R9", Severity::Error, d.label,
                   "anchor '" + d.anchor->value + "' does not resolve to an entity");
            continue;
        }
        if (d.parent) {
            const Diagram* parent = m.diagram(*d.parent);
            if (parent && !parent->has_entity(*d.anchor))
                report("R9", Severity::Error, d.label,
                       "anchor \"" + anchor->name + "\" is not a member of " + parent->label);
        }
    }

    // Incidence index for the warning rules.
    std::set<EntityId> linked;
    for (const Link& l : m.links) {
        linked.insert(l.source.target);
        linked.insert(l.destination.target);
    }

    // W1: isolated entities.
    for (const Entity& e : m.entities) {
        bool touched = linked.count(e.id) != 0;
        for (const StateDef& s : e.states)
            touched = touched || linked.count(s.id) != 0;
        if (!touched)
            report("W1", Severity::Warning, "\"" + e.name + "\"", "no link touches this entity");
    }

    // W2: inert processes.
    for (const Entity& e : m.entities) {
        if (!e.is_process())
            continue;
        bool enabled = false;
        bool transforms = false;
        for (const Link& l : m.links) {
            bool incident = l.source.target == e.id || l.destination.target == e.id;
            if (!incident)
                continue;
            auto group = group_of(l.kind);
            if (group == ProceduralGroup::Enabling && l.destination.target == e.id)
                enabled = true;
            if (group == ProceduralGroup::Transforming)
                transforms = true;
        }
        if (!enabled && !transforms)
            report("W2", Severity::Warning, "\"" + e.name + "\"",
                   "process has no enabler and no transforming link");
    }

    // W3: unused states.
    for (const Entity& e : m.entities)
        for (const StateDef& s : e.states)
            if (!linked.count(s.id))
                report("W3", Severity::Warning, "\"" + s.name + "\"",
                       "state of \"" + e.name + "\" is never used as a link endpoint");

    // W4: membership outside one refinement chain.
    for (const Entity& e : m.entities) {
        std::vector<const Diagram*> homes;
        for (const Diagram& d : m.diagrams)
            if (d.has_entity(e.id))
                homes.push_back(&d);
        bool unrelated = false;
        for (std::size_t i = 0; i < homes.size() && !unrelated; ++i)
            for (std::size_t j = i + 1; j < homes.size() && !unrelated; ++j)
                if (!is_ancestor(m, homes[i]->label, homes[j]->label) &&
                    !is_ancestor(m, homes[j]->label, homes[i]->label))
                    unrelated = true;
        if (unrelated)
            report("W4", Severity::Warning, "\"" + e.name + "\"",
                   "entity appears in diagrams outside one refinement chain");
    }

    std::sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.code != b.code)
            return a.code < b.code;
        if (a.subject != b.subject)
            return a.subject < b.subject;
        return a.message < b.message;
    });
    return out;
}

} // namespace opm
