#include "opm/writer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "opm/validate.hpp"

namespace opm {

std::string quote_name(std::string_view name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '\\' || c == '"')
            out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

namespace {

// Statement surface for each link kind. Consumption is the one verb whose
// syntactic subject is the link destination ("P" consumes "O" stores O->P).
std::string link_statement(const Model& m, const Link& l) {
    std::string src = quote_name(m.display_name(l.source.target));
    std::string dst = quote_name(m.display_name(l.destination.target));
    switch (l.kind) {
    case LinkVariant::Aggregation: return src + " is part of " + dst + ".";
    case LinkVariant::Exhibition: return src + " exhibits " + dst + ".";
    case LinkVariant::Generalization: return src + " is a " + dst + ".";
    case LinkVariant::Instantiation: return src + " is instance of " + dst + ".";
    case LinkVariant::Consumption: return dst + " consumes " + src + ".";
    case LinkVariant::Result: return src + " yields " + dst + ".";
    case LinkVariant::Effect: return src + " affects " + dst + ".";
    case LinkVariant::Agent: return src + " is agent of " + dst + ".";
    case LinkVariant::Instrument: return src + " is instrument of " + dst + ".";
    }
    return {};
}

std::string name_list(const Model& m, const std::vector<EntityId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i)
            out += ", ";
        out += quote_name(m.display_name(ids[i]));
    }
    return out;
}

// Aggregation links implied by an unfold statement; the parser will recreate
// them, so the writer must not spell them out.
std::set<EntityId> implied_links(const Model& m, const Diagram& d) {
    std::set<EntityId> out;
    if (d.mode != RefineMode::Unfold || !d.anchor)
        return out;
    const Entity* anchor = m.entity(*d.anchor);
    if (!anchor)
        return out;
    for (const EntityId& member : d.refined) {
        const Entity* e = m.entity(member);
        if (!e || e->kind != anchor->kind)
            continue;
        for (const EntityId& id : d.links) {
            if (out.count(id))
                continue;
            const Link* l = m.link(id);
            if (l && l->kind == LinkVariant::Aggregation && l->source.target == member &&
                l->destination.target == *d.anchor) {
                out.insert(id);
                break; // one implied link per refined occurrence
            }
        }
    }
    return out;
}

} // namespace

Result<std::string> generate(const Model& m) {
    if (has_errors(validate(m)))
        return Error{Errc::InvalidModel, "model has validation errors"};

    std::vector<const Diagram*> order = m.preorder();
    std::map<EntityId, const Diagram*> entity_home;
    std::map<EntityId, const Diagram*> link_home;
    for (const Diagram* d : order) {
        for (const EntityId& id : d->entities)
            entity_home.emplace(id, d);
        for (const EntityId& id : d->links)
            link_home.emplace(id, d);
    }

    std::string out = "model " + quote_name(m.name) + ".\n";

    for (const Diagram* d : order) {
        std::vector<std::string> lines;

        if (d->parent && d->anchor && !d->refined.empty()) {
            const char* verb = d->mode == RefineMode::Unfold ? " unfolds to " : " zooms into ";
            lines.push_back(quote_name(m.display_name(*d->anchor)) + verb +
                            name_list(m, d->refined) + ".");
        }

        std::set<EntityId> refined_here(d->refined.begin(), d->refined.end());
        std::vector<const Entity*> declared;
        for (const Entity& e : m.entities) {
            auto home = entity_home.find(e.id);
            if (home == entity_home.end() || home->second != d)
                continue;
            if (!refined_here.count(e.id))
                declared.push_back(&e);
        }
        std::sort(declared.begin(), declared.end(),
                  [](const Entity* a, const Entity* b) { return a->name < b->name; });
        for (const Entity* e : declared)
            lines.push_back(std::string(e->is_object() ? "object " : "process ") +
                            quote_name(e->name) + ".");

        // State lists cover refined members too; they are introduced here
        // even when the refinement statement declared them.
        std::vector<const Entity*> stateful;
        for (const Entity& e : m.entities) {
            auto home = entity_home.find(e.id);
            if (home != entity_home.end() && home->second == d && !e.states.empty())
                stateful.push_back(&e);
        }
        std::sort(stateful.begin(), stateful.end(),
                  [](const Entity* a, const Entity* b) { return a->name < b->name; });
        for (const Entity* e : stateful) {
            std::string stmt = quote_name(e->name) + " can be ";
            for (std::size_t i = 0; i < e->states.size(); ++i) {
                if (i)
                    stmt += ", ";
                stmt += quote_name(e->states[i].name);
            }
            lines.push_back(stmt + ".");
        }

        std::set<EntityId> implied = implied_links(m, *d);
        std::vector<const Link*> emitted;
        for (const Link& l : m.links) {
            auto home = link_home.find(l.id);
            if (home == link_home.end() || home->second != d || implied.count(l.id))
                continue;
            emitted.push_back(&l);
        }
        std::stable_sort(emitted.begin(), emitted.end(), [&](const Link* a, const Link* b) {
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
        for (const Link* l : emitted)
            lines.push_back(link_statement(m, *l));

        if (!lines.empty()) {
            out.push_back('\n');
            for (const std::string& line : lines) {
                out += line;
                out.push_back('\n');
            }
        }
    }
    return out;
}

} // namespace opm
