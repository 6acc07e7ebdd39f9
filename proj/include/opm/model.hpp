#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opm/result.hpp"

namespace opm {

/// Trims surrounding whitespace and collapses internal runs to one space.
/// Comparison of canonical names is case-sensitive.
std::string canonical_name(std::string_view raw);

/// Lowercased, hyphen-separated identifier derived from a canonical name.
std::string slugify(std::string_view name);

struct EntityId {
    std::string value;

    auto operator<=>(const EntityId&) const = default;
    bool empty() const { return value.empty(); }
};

enum class NodeKind { Object, Process, State };
const char* to_string(NodeKind kind);

enum class LinkFamily { Structural, Procedural };
enum class ProceduralGroup { Transforming, Enabling };

enum class LinkVariant {
    Aggregation,
    Exhibition,
    Generalization,
    Instantiation,
    Consumption,
    Result,
    Effect,
    Agent,
    Instrument,
};
inline constexpr int kLinkVariantCount = 9;

LinkFamily family_of(LinkVariant kind);
/// Transforming for Consumption/Result/Effect, Enabling for Agent/Instrument,
/// nullopt for structural kinds.
std::optional<ProceduralGroup> group_of(LinkVariant kind);
const char* to_string(LinkVariant kind); // lowercase tag, e.g. "aggregation"

struct StateDef {
    EntityId id;
    std::string name; // canonical
    EntityId owner;
};

struct Entity {
    EntityId id;
    std::string name; // canonical, unique across the model
    NodeKind kind = NodeKind::Object; // Object or Process, never State
    std::vector<StateDef> states; // objects only; ordered

    bool is_object() const { return kind == NodeKind::Object; }
    bool is_process() const { return kind == NodeKind::Process; }
};

struct Endpoint {
    EntityId target;
    NodeKind kind = NodeKind::Object; // resolved at creation
};

struct Link {
    EntityId id;
    LinkVariant kind = LinkVariant::Aggregation;
    Endpoint source;
    Endpoint destination;
};

enum class RefineMode { Zoom, Unfold };

/// One node of the refinement hierarchy. The root is always "SD"; children of
/// "SD" are "SD1", "SD2", ...; children of "SD1" are "SD1.1", ...
struct Diagram {
    std::string label;
    std::optional<std::string> parent;
    std::optional<EntityId> anchor;
    std::optional<RefineMode> mode;
    std::vector<EntityId> entities; // ordered member set
    std::vector<EntityId> links;    // ordered member set
    std::vector<EntityId> refined;  // members introduced by the refinement op

    bool has_entity(const EntityId& id) const;
    bool has_link(const EntityId& id) const;
    void add_entity_member(const EntityId& id);
    void add_link_member(const EntityId& id);
};

std::string child_label(const std::string& parent, int ordinal);
/// Ordinal of `label` under `parent`, or nullopt if the label does not have
/// the form parent+ordinal / parent+"."+ordinal.
std::optional<int> label_ordinal(const std::string& parent, const std::string& label);

/// The complete system description. A plain value: copy it to branch, compare
/// with structurally_equal. Mutating operations validate their inputs and
/// leave the model untouched on error. The representation is open so that
/// loaders and tests can build arbitrary (even rule-violating) models for the
/// validator to judge.
struct Model {
    std::string name;
    std::vector<Entity> entities;
    std::vector<Link> links;
    std::vector<Diagram> diagrams;
    std::string current = "SD"; // diagram receiving mutations; not model content

    static Result<Model> make(std::string_view name);

    // --- queries ---------------------------------------------------------
    const Entity* entity(const EntityId& id) const;
    Entity* entity(const EntityId& id);
    const Entity* entity_by_name(std::string_view canonical) const;
    const StateDef* state(const EntityId& id) const;
    const Entity* state_owner(const EntityId& id) const;
    const Link* link(const EntityId& id) const;
    const Diagram* diagram(std::string_view label) const;
    Diagram* diagram(std::string_view label);

    /// Object/Process for entity ids, State for state ids, nullopt otherwise.
    std::optional<NodeKind> resolve(const EntityId& id) const;
    /// Entity or state name for a resolved id; empty string otherwise.
    std::string display_name(const EntityId& id) const;
    std::optional<EntityId> find_by_name(std::string_view raw) const;
    std::size_t entity_count() const { return entities.size(); }

    /// Diagrams in tree preorder (root first, children by ordinal).
    std::vector<const Diagram*> preorder() const;
    /// First diagram in preorder of which the id is a member.
    const Diagram* home_of_entity(const EntityId& id) const;
    const Diagram* home_of_link(const EntityId& id) const;

    bool id_taken(const EntityId& id) const;
    EntityId fresh_id(std::string_view base) const;

    // --- mutations --------------------------------------------------------
    Result<void> select_diagram(std::string_view label);
    Diagram& current_diagram();

    Result<EntityId> add_object(std::string_view name);
    Result<EntityId> add_process(std::string_view name);
    Result<EntityId> add_state(const EntityId& owner, std::string_view name);
    Result<EntityId> add_link(LinkVariant kind, const EntityId& source,
                              const EntityId& destination);
    Result<void> remove_entity(const EntityId& id);
    /// Removes a leaf diagram (never the root). Member entities/links stay in
    /// the model.
    Result<void> remove_diagram(std::string_view label);

private:
    Result<EntityId> add_entity(std::string_view name, NodeKind kind);
};

/// Equality up to internal ordering: same name, same entities (by name),
/// same link multiset, same diagram tree with equal member sets and refined
/// lists. The current-diagram cursor is ignored.
bool structurally_equal(const Model& a, const Model& b);

} // namespace opm
