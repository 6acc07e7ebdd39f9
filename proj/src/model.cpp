#include "opm/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "opm/validate.hpp"

namespace opm {

const char* to_string(Errc code) {
    switch (code) {
    case Errc::EmptyName: return "empty-name";
    case Errc::DuplicateName: return "duplicate-name";
    case Errc::UnknownEntity: return "unknown-entity";
    case Errc::NotAnObject: return "not-an-object";
    case Errc::NotAProcess: return "not-a-process";
    case Errc::DuplicateState: return "duplicate-state";
    case Errc::IllegalEndpoints: return "illegal-endpoints";
    case Errc::SelfLink: return "self-link";
    case Errc::AnchorsRefinement: return "anchors-refinement";
    case Errc::AlreadyRefined: return "already-refined";
    case Errc::EmptyList: return "empty-list";
    case Errc::InvalidModel: return "invalid-model";
    case Errc::UnknownDiagram: return "unknown-diagram";
    case Errc::AmbiguousName: return "ambiguous-name";
    case Errc::HasChildren: return "has-children";
    }
    return "unknown-error";
}

std::string canonical_name(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty())
                pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

std::string slugify(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    bool pending_dash = false;
    for (char c : name) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) {
            if (pending_dash && !out.empty())
                out.push_back('-');
            pending_dash = false;
            out.push_back(static_cast<char>(std::tolower(uc)));
        } else {
            pending_dash = true;
        }
    }
    if (out.empty())
        out = "n";
    return out;
}

const char* to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::Object: return "object";
    case NodeKind::Process: return "process";
    case NodeKind::State: return "state";
    }
    return "?";
}

LinkFamily family_of(LinkVariant kind) {
    switch (kind) {
    case LinkVariant::Aggregation:
    case LinkVariant::Exhibition:
    case LinkVariant::Generalization:
    case LinkVariant::Instantiation:
        return LinkFamily::Structural;
    default:
        return LinkFamily::Procedural;
    }
}

std::optional<ProceduralGroup> group_of(LinkVariant kind) {
    switch (kind) {
    case LinkVariant::Consumption:
    case LinkVariant::Result:
    case LinkVariant::Effect:
        return ProceduralGroup::Transforming;
    case LinkVariant::Agent:
    case LinkVariant::Instrument:
        return ProceduralGroup::Enabling;
    default:
        return std::nullopt;
    }
}

const char* to_string(LinkVariant kind) {
    switch (kind) {
    case LinkVariant::Aggregation: return "aggregation";
    case LinkVariant::Exhibition: return "exhibition";
    case LinkVariant::Generalization: return "generalization";
    case LinkVariant::Instantiation: return "instantiation";
    case LinkVariant::Consumption: return "consumption";
    case LinkVariant::Result: return "result";
    case LinkVariant::Effect: return "effect";
    case LinkVariant::Agent: return "agent";
    case LinkVariant::Instrument: return "instrument";
    }
    return "?";
}

bool Diagram::has_entity(const EntityId& id) const {
    return std::find(entities.begin(), entities.end(), id) != entities.end();
}

bool Diagram::has_link(const EntityId& id) const {
    return std::find(links.begin(), links.end(), id) != links.end();
}

void Diagram::add_entity_member(const EntityId& id) {
    if (!has_entity(id))
        entities.push_back(id);
}

void Diagram::add_link_member(const EntityId& id) {
    if (!has_link(id))
        links.push_back(id);
}

std::string child_label(const std::string& parent, int ordinal) {
    if (parent == "SD")
        return "SD" + std::to_string(ordinal);
    return parent + "." + std::to_string(ordinal);
}

std::optional<int> label_ordinal(const std::string& parent, const std::string& label) {
    std::string prefix = parent == "SD" ? parent : parent + ".";
    if (label.size() <= prefix.size() || label.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    std::string_view digits{label.data() + prefix.size(), label.size() - prefix.size()};
    if (digits.empty())
        return std::nullopt;
    int value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return std::nullopt;
        value = value * 10 + (c - '0');
    }
    return value > 0 ? std::optional<int>(value) : std::nullopt;
}

Result<Model> Model::make(std::string_view name) {
    std::string canon = canonical_name(name);
    if (canon.empty())
        return Error{Errc::EmptyName, "model name is empty"};
    Model m;
    m.name = std::move(canon);
    Diagram root;
    root.label = "SD";
    m.diagrams.push_back(std::move(root));
    m.current = "SD";
    return m;
}

const Entity* Model::entity(const EntityId& id) const {
    for (const Entity& e : entities)
        if (e.id == id)
            return &e;
    return nullptr;
}

Entity* Model::entity(const EntityId& id) {
    return const_cast<Entity*>(static_cast<const Model*>(this)->entity(id));
}

const Entity* Model::entity_by_name(std::string_view canonical) const {
    for (const Entity& e : entities)
        if (e.name == canonical)
            return &e;
    return nullptr;
}

const StateDef* Model::state(const EntityId& id) const {
    for (const Entity& e : entities)
        for (const StateDef& s : e.states)
            if (s.id == id)
                return &s;
    return nullptr;
}

const Entity* Model::state_owner(const EntityId& id) const {
    for (const Entity& e : entities)
        for (const StateDef& s : e.states)
            if (s.id == id)
                return &e;
    return nullptr;
}

const Link* Model::link(const EntityId& id) const {
    for (const Link& l : links)
        if (l.id == id)
            return &l;
    return nullptr;
}

const Diagram* Model::diagram(std::string_view label) const {
    for (const Diagram& d : diagrams)
        if (d.label == label)
            return &d;
    return nullptr;
}

Diagram* Model::diagram(std::string_view label) {
    return const_cast<Diagram*>(static_cast<const Model*>(this)->diagram(label));
}

std::optional<NodeKind> Model::resolve(const EntityId& id) const {
    if (const Entity* e = entity(id))
        return e->kind;
    if (state(id))
        return NodeKind::State;
    return std::nullopt;
}

std::string Model::display_name(const EntityId& id) const {
    if (const Entity* e = entity(id))
        return e->name;
    if (const StateDef* s = state(id))
        return s->name;
    return {};
}

std::optional<EntityId> Model::find_by_name(std::string_view raw) const {
    if (const Entity* e = entity_by_name(canonical_name(raw)))
        return e->id;
    return std::nullopt;
}

std::vector<const Diagram*> Model::preorder() const {
    std::vector<const Diagram*> out;
    std::set<const Diagram*> seen;
    auto visit = [&](auto&& self, const Diagram& d) -> void {
        if (!seen.insert(&d).second)
            return; // cycle guard for hand-edited trees
        out.push_back(&d);
        std::vector<std::pair<int, const Diagram*>> kids;
        for (const Diagram& c : diagrams) {
            if (c.parent && *c.parent == d.label) {
                auto ord = label_ordinal(d.label, c.label);
                kids.emplace_back(ord.value_or(0), &c);
            }
        }
        std::sort(kids.begin(), kids.end(),
                  [](const auto& a, const auto& b) {
                      if (a.first != b.first)
                          return a.first < b.first;
                      return a.second->label < b.second->label;
                  });
        for (auto& [ord, kid] : kids)
            self(self, *kid);
    };
    if (const Diagram* root = diagram("SD"))
        visit(visit, *root);
    for (const Diagram& d : diagrams)
        if (!seen.count(&d))
            visit(visit, d); // unreachable fragments, kept for diagnostics
    return out;
}

const Diagram* Model::home_of_entity(const EntityId& id) const {
    for (const Diagram* d : preorder())
        if (d->has_entity(id))
            return d;
    return nullptr;
}

const Diagram* Model::home_of_link(const EntityId& id) const {
    for (const Diagram* d : preorder())
        if (d->has_link(id))
            return d;
    return nullptr;
}

bool Model::id_taken(const EntityId& id) const {
    return entity(id) || state(id) || link(id);
}

EntityId Model::fresh_id(std::string_view base) const {
    EntityId id{slugify(base)};
    if (!id_taken(id))
        return id;
    for (int n = 2;; ++n) {
        EntityId candidate{id.value + "-" + std::to_string(n)};
        if (!id_taken(candidate))
            return candidate;
    }
}

Result<void> Model::select_diagram(std::string_view label) {
    if (!diagram(label))
        return Error{Errc::UnknownDiagram, "no diagram labeled '" + std::string(label) + "'"};
    current.assign(label);
    return {};
}

Diagram& Model::current_diagram() {
    if (Diagram* d = diagram(current))
        return *d;
    // Cursor can dangle only on hand-edited models; recover at the root.
    if (Diagram* root = diagram("SD"))
        return *root;
    Diagram fresh;
    fresh.label = "SD";
    diagrams.push_back(std::move(fresh));
    current = "SD";
    return diagrams.back();
}

Result<EntityId> Model::add_entity(std::string_view name, NodeKind kind) {
    std::string canon = canonical_name(name);
    if (canon.empty())
        return Error{Errc::EmptyName, "entity name is empty"};
    if (entity_by_name(canon))
        return Error{Errc::DuplicateName, "an entity named \"" + canon + "\" already exists"};
    Entity e;
    e.id = fresh_id(canon);
    e.name = std::move(canon);
    e.kind = kind;
    EntityId id = e.id;
    entities.push_back(std::move(e));
    current_diagram().add_entity_member(id);
    return id;
}

Result<EntityId> Model::add_object(std::string_view name) {
    return add_entity(name, NodeKind::Object);
}

Result<EntityId> Model::add_process(std::string_view name) {
    return add_entity(name, NodeKind::Process);
}

Result<EntityId> Model::add_state(const EntityId& owner, std::string_view name) {
    Entity* e = entity(owner);
    if (!e)
        return Error{Errc::UnknownEntity, "no entity with id '" + owner.value + "'"};
    if (!e->is_object())
        return Error{Errc::NotAnObject,
                     "\"" + e->name + "\" is a process; states belong to objects"};
    std::string canon = canonical_name(name);
    if (canon.empty())
        return Error{Errc::EmptyName, "state name is empty"};
    for (const StateDef& s : e->states)
        if (s.name == canon)
            return Error{Errc::DuplicateState,
                         "\"" + e->name + "\" already has a state \"" + canon + "\""};
    StateDef s;
    s.id = fresh_id(e->name + " " + canon);
    s.name = std::move(canon);
    s.owner = owner;
    EntityId id = s.id;
    e->states.push_back(std::move(s));
    return id;
}

Result<EntityId> Model::add_link(LinkVariant kind, const EntityId& source,
                                 const EntityId& destination) {
    auto src_kind = resolve(source);
    auto dst_kind = resolve(destination);
    if (!src_kind)
        return Error{Errc::UnknownEntity, "no entity or state with id '" + source.value + "'"};
    if (!dst_kind)
        return Error{Errc::UnknownEntity,
                     "no entity or state with id '" + destination.value + "'"};
    if (source == destination)
        return Error{Errc::SelfLink,
                     "\"" + display_name(source) + "\" cannot be linked to itself"};
    if (!legality(kind, *src_kind, *dst_kind))
        return Error{Errc::IllegalEndpoints,
                     std::string(to_string(kind)) + " link from " + to_string(*src_kind) +
                         " to " + to_string(*dst_kind) + " is not allowed"};
    Link l;
    l.kind = kind;
    l.source = Endpoint{source, *src_kind};
    l.destination = Endpoint{destination, *dst_kind};
    l.id = fresh_id(display_name(source) + " " + to_string(kind) + " " +
                    display_name(destination));
    EntityId id = l.id;
    links.push_back(std::move(l));

    Diagram& d = current_diagram();
    d.add_link_member(id);
    // Keep the diagram self-contained: a link's endpoints must be visible
    // where the link is.
    for (const EntityId& ep : {source, destination}) {
        if (entity(ep))
            d.add_entity_member(ep);
        else if (const Entity* owner = state_owner(ep))
            d.add_entity_member(owner->id);
    }
    return id;
}

Result<void> Model::remove_entity(const EntityId& id) {
    const Entity* e = entity(id);
    if (!e)
        return Error{Errc::UnknownEntity, "no entity with id '" + id.value + "'"};
    for (const Diagram& d : diagrams)
        if (d.anchor && *d.anchor == id)
            return Error{Errc::AnchorsRefinement,
                         "\"" + e->name + "\" anchors diagram " + d.label +
                             "; remove the diagram first"};

    std::set<EntityId> doomed;
    doomed.insert(id);
    for (const StateDef& s : e->states)
        doomed.insert(s.id);

    std::set<EntityId> dead_links;
    std::erase_if(links, [&](const Link& l) {
        bool touches = doomed.count(l.source.target) || doomed.count(l.destination.target);
        if (touches)
            dead_links.insert(l.id);
        return touches;
    });
    for (Diagram& d : diagrams) {
        std::erase_if(d.entities, [&](const EntityId& m) { return doomed.count(m) != 0; });
        std::erase_if(d.refined, [&](const EntityId& m) { return doomed.count(m) != 0; });
        std::erase_if(d.links, [&](const EntityId& m) { return dead_links.count(m) != 0; });
    }
    std::erase_if(entities, [&](const Entity& cand) { return cand.id == id; });
    return {};
}

Result<void> Model::remove_diagram(std::string_view label) {
    const Diagram* d = diagram(label);
    if (!d)
        return Error{Errc::UnknownDiagram, "no diagram labeled '" + std::string(label) + "'"};
    if (!d->parent)
        return Error{Errc::HasChildren, "the root diagram cannot be removed"};
    for (const Diagram& c : diagrams)
        if (c.parent && *c.parent == d->label)
            return Error{Errc::HasChildren,
                         d->label + " still has child diagram " + c.label};
    std::string parent = *d->parent;
    if (current == d->label)
        current = parent;
    std::erase_if(diagrams, [&](const Diagram& cand) { return cand.label == label; });
    return {};
}

namespace {

// Order-free fingerprints used for structural comparison.

struct LinkDesc {
    int kind;
    std::string src;
    int src_kind;
    std::string dst;
    int dst_kind;
    auto operator<=>(const LinkDesc&) const = default;
};

LinkDesc describe(const Model& m, const Link& l) {
    return LinkDesc{static_cast<int>(l.kind),
                    m.display_name(l.source.target),
                    static_cast<int>(l.source.kind),
                    m.display_name(l.destination.target),
                    static_cast<int>(l.destination.kind)};
}

std::vector<LinkDesc> describe_links(const Model& m, const std::vector<EntityId>& ids) {
    std::vector<LinkDesc> out;
    for (const EntityId& id : ids)
        if (const Link* l = m.link(id))
            out.push_back(describe(m, *l));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> names_of(const Model& m, const std::vector<EntityId>& ids,
                                  bool sorted) {
    std::vector<std::string> out;
    for (const EntityId& id : ids)
        out.push_back(m.display_name(id));
    if (sorted)
        std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool structurally_equal(const Model& a, const Model& b) {
    if (a.name != b.name)
        return false;

    auto entity_view = [](const Model& m) {
        std::vector<std::tuple<std::string, int, std::vector<std::string>>> out;
        for (const Entity& e : m.entities) {
            std::vector<std::string> states;
            for (const StateDef& s : e.states)
                states.push_back(s.name);
            out.emplace_back(e.name, static_cast<int>(e.kind), std::move(states));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    if (entity_view(a) != entity_view(b))
        return false;

    auto all_links = [](const Model& m) {
        std::vector<LinkDesc> out;
        for (const Link& l : m.links)
            out.push_back(describe(m, l));
        std::sort(out.begin(), out.end());
        return out;
    };
    if (all_links(a) != all_links(b))
        return false;

    if (a.diagrams.size() != b.diagrams.size())
        return false;
    for (const Diagram& da : a.diagrams) {
        const Diagram* db = b.diagram(da.label);
        if (!db)
            return false;
        if (da.parent != db->parent || da.mode != db->mode)
            return false;
        std::string anchor_a = da.anchor ? a.display_name(*da.anchor) : "";
        std::string anchor_b = db->anchor ? b.display_name(*db->anchor) : "";
        if (anchor_a != anchor_b)
            return false;
        if (names_of(a, da.entities, true) != names_of(b, db->entities, true))
            return false;
        if (names_of(a, da.refined, false) != names_of(b, db->refined, false))
            return false; // refined order is the statement order
        if (describe_links(a, da.links) != describe_links(b, db->links))
            return false;
    }
    return true;
}

} // namespace opm
