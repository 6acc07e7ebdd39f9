#include "opm/refine.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace opm {

namespace {

Result<void> check_not_refined(const Model& m, const EntityId& anchor) {
    for (const Diagram& d : m.diagrams)
        if (d.anchor && *d.anchor == anchor)
            return Error{Errc::AlreadyRefined,
                         "\"" + m.display_name(anchor) + "\" already anchors diagram " + d.label};
    return {};
}

int next_ordinal(const Model& m, const std::string& parent_label) {
    int next = 1;
    for (const Diagram& d : m.diagrams) {
        if (d.parent && *d.parent == parent_label)
            if (auto ord = label_ordinal(parent_label, d.label))
                next = std::max(next, *ord + 1);
    }
    return next;
}

std::set<EntityId> anchor_and_states(const Model& m, const EntityId& anchor) {
    std::set<EntityId> ids{anchor};
    if (const Entity* e = m.entity(anchor))
        for (const StateDef& s : e->states)
            ids.insert(s.id);
    return ids;
}

// Copies every parent link incident to the anchor (or to one of its states)
// into the child, along with the entities the link touches.
void inherit_context(Model& m, const std::string& parent_label, const std::string& child_label,
                     const EntityId& anchor) {
    std::set<EntityId> incident = anchor_and_states(m, anchor);
    const Diagram* parent = m.diagram(parent_label);
    if (!parent)
        return;
    std::vector<EntityId> parent_links = parent->links;
    for (const EntityId& id : parent_links) {
        const Link* l = m.link(id);
        if (!l)
            continue;
        if (!incident.count(l->source.target) && !incident.count(l->destination.target))
            continue;
        Diagram* child = m.diagram(child_label);
        child->add_link_member(id);
        for (const EntityId& ep : {l->source.target, l->destination.target}) {
            if (m.entity(ep))
                child->add_entity_member(ep);
            else if (const Entity* owner = m.state_owner(ep))
                child->add_entity_member(owner->id);
        }
    }
}

std::string open_child(Model& m, const EntityId& anchor, RefineMode mode) {
    const Diagram* home = m.home_of_entity(anchor);
    std::string parent_label = home ? home->label : m.current;
    std::string label = child_label(parent_label, next_ordinal(m, parent_label));

    Diagram child;
    child.label = label;
    child.parent = parent_label;
    child.anchor = anchor;
    child.mode = mode;
    child.entities.push_back(anchor);
    m.diagrams.push_back(std::move(child));
    if (!home)
        m.diagram(parent_label)->add_entity_member(anchor);
    m.current = label;
    return label;
}

} // namespace

Result<std::string> in_zoom(Model& m, const EntityId& process,
                            const std::vector<std::string>& subprocess_names) {
    const Entity* anchor = m.entity(process);
    if (!anchor)
        return Error{Errc::UnknownEntity, "no entity with id '" + process.value + "'"};
    if (!anchor->is_process())
        return Error{Errc::NotAProcess,
                     "\"" + anchor->name + "\" is an object; only processes are in-zoomed"};
    if (subprocess_names.empty())
        return Error{Errc::EmptyList, "in-zoom needs at least one subprocess"};
    if (auto r = check_not_refined(m, process); !r)
        return r.error();
    for (const std::string& raw : subprocess_names) {
        std::string canon = canonical_name(raw);
        if (canon.empty())
            return Error{Errc::EmptyName, "subprocess name is empty"};
        if (const Entity* e = m.entity_by_name(canon)) {
            if (e->id == process)
                return Error{Errc::SelfLink,
                             "\"" + canon + "\" cannot be a subprocess of itself"};
            if (!e->is_process())
                return Error{Errc::NotAProcess,
                             "\"" + canon + "\" exists and is not a process"};
        }
    }

    std::string parent_label = m.home_of_entity(process)
                                   ? m.home_of_entity(process)->label
                                   : m.current;
    std::string label = open_child(m, process, RefineMode::Zoom);
    for (const std::string& raw : subprocess_names) {
        std::string canon = canonical_name(raw);
        EntityId member;
        if (const Entity* e = m.entity_by_name(canon)) {
            member = e->id;
            m.diagram(label)->add_entity_member(member);
        } else {
            auto added = m.add_process(canon); // current diagram is the child
            assert(added.ok());
            member = added.value();
        }
        m.diagram(label)->refined.push_back(member);
    }
    inherit_context(m, parent_label, label, process);
    return label;
}

Result<std::string> unfold(Model& m, const EntityId& anchor,
                           const std::vector<std::string>& member_names, NodeKind member_kind) {
    const Entity* anchor_entity = m.entity(anchor);
    if (!anchor_entity)
        return Error{Errc::UnknownEntity, "no entity with id '" + anchor.value + "'"};
    if (member_names.empty())
        return Error{Errc::EmptyList, "unfold needs at least one member"};
    if (auto r = check_not_refined(m, anchor); !r)
        return r.error();
    for (const std::string& raw : member_names) {
        std::string canon = canonical_name(raw);
        if (canon.empty())
            return Error{Errc::EmptyName, "member name is empty"};
        if (const Entity* e = m.entity_by_name(canon))
            if (e->id == anchor)
                return Error{Errc::SelfLink, "\"" + canon + "\" cannot unfold into itself"};
    }

    NodeKind anchor_kind = anchor_entity->kind;
    std::string parent_label = m.home_of_entity(anchor)
                                   ? m.home_of_entity(anchor)->label
                                   : m.current;
    std::string label = open_child(m, anchor, RefineMode::Unfold);
    for (const std::string& raw : member_names) {
        std::string canon = canonical_name(raw);
        EntityId member;
        NodeKind kind;
        if (const Entity* e = m.entity_by_name(canon)) {
            member = e->id;
            kind = e->kind;
            m.diagram(label)->add_entity_member(member);
        } else {
            auto added = member_kind == NodeKind::Process ? m.add_process(canon)
                                                          : m.add_object(canon);
            assert(added.ok());
            member = added.value();
            kind = member_kind;
        }
        m.diagram(label)->refined.push_back(member);
        if (kind == anchor_kind) {
            auto linked = m.add_link(LinkVariant::Aggregation, member, anchor);
            assert(linked.ok());
            (void)linked;
        }
    }
    inherit_context(m, parent_label, label, anchor);
    return label;
}

std::vector<Diagnostic> check_consistency(const Model& m) {
    std::vector<Diagnostic> out;
    auto report = [&](const char* code, std::string subject, std::string message) {
        out.push_back(Diagnostic{code, Severity::Error, std::move(subject), std::move(message), {}});
    };

    for (const Diagram& d : m.diagrams) {
        if (!d.parent)
            continue;
        const Diagram* parent = m.diagram(*d.parent);
        if (!parent || !d.anchor)
            continue; // shape problems belong to validate()

        // C2 before C1: a missing anchor makes inheritance moot.
        if (!parent->has_entity(*d.anchor))
            report("C2", d.label,
                   "anchor \"" + m.display_name(*d.anchor) + "\" is not a member of " +
                       parent->label);

        std::set<EntityId> incident = anchor_and_states(m, *d.anchor);
        for (const EntityId& id : parent->links) {
            const Link* l = m.link(id);
            if (!l)
                continue;
            if (!incident.count(l->source.target) && !incident.count(l->destination.target))
                continue;
            if (!d.has_link(id))
                report("C1", d.label,
                       "inherited link \"" + m.display_name(l->source.target) + "\"->\"" +
                           m.display_name(l->destination.target) + "\" of the anchor is missing");
        }
    }

    // C3: contiguous child numbering per diagram.
    for (const Diagram& d : m.diagrams) {
        std::vector<int> ordinals;
        for (const Diagram& c : m.diagrams)
            if (c.parent && *c.parent == d.label)
                if (auto ord = label_ordinal(d.label, c.label))
                    ordinals.push_back(*ord);
        std::sort(ordinals.begin(), ordinals.end());
        int expected = 1;
        for (int ord : ordinals) {
            for (; expected < ord; ++expected)
                report("C3", d.label,
                       "no child diagram numbered " + std::to_string(expected) + " (found " +
                           child_label(d.label, ord) + ")");
            expected = ord + 1;
        }
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
