#include <doctest.h>

#include <set>

#include "opm/model.hpp"
#include "opm/validate.hpp"
#include "support/corpus.hpp"
#include "support/random_model.hpp"

using namespace opm;

namespace {

Model fresh(const char* name = "Test") {
    auto made = Model::make(name);
    REQUIRE(made.ok());
    return std::move(made).value();
}

} // namespace

TEST_CASE("a new model is empty with a single root diagram") {
    Model m = fresh("Unique HPC System Development");
    CHECK(m.entity_count() == 0);
    CHECK(m.links.empty());
    REQUIRE(m.diagrams.size() == 1);
    CHECK(m.diagrams[0].label == "SD");
    CHECK(m.diagrams[0].entities.empty());
    CHECK(m.diagrams[0].links.empty());
}

TEST_CASE("model names must be non-empty after trimming") {
    CHECK(Model::make("").code() == Errc::EmptyName);
    CHECK(Model::make("   \t ").code() == Errc::EmptyName);
}

TEST_CASE("adding nothing keeps the entity count at zero") {
    Model m = fresh("X");
    CHECK(m.entity_count() == 0);
}

TEST_CASE("objects store canonical names and resolve by id") {
    Model m = fresh();
    auto id = m.add_object("MicroAI");
    REQUIRE(id.ok());
    CHECK(m.entity(id.value())->name == "MicroAI");
    CHECK(m.entity(id.value())->is_object());
    CHECK(m.diagrams[0].has_entity(id.value()));

    auto padded = m.add_object("  HPC  ");
    REQUIRE(padded.ok());
    CHECK(m.entity(padded.value())->name == "HPC");

    auto spaced = m.add_object("Research   and \t Development");
    REQUIRE(spaced.ok());
    CHECK(m.entity(spaced.value())->name == "Research and Development");
}

TEST_CASE("entity names are unique across objects and processes") {
    Model m = fresh();
    REQUIRE(m.add_object("MicroAI").ok());
    CHECK(m.add_object("MicroAI").code() == Errc::DuplicateName);
    CHECK(m.add_process("MicroAI").code() == Errc::DuplicateName);
    CHECK(m.add_object(" MicroAI ").code() == Errc::DuplicateName);
    CHECK(m.add_object("").code() == Errc::EmptyName);
}

TEST_CASE("processes are stored as processes") {
    Model m = fresh();
    auto id = m.add_process("Screening");
    REQUIRE(id.ok());
    CHECK(m.entity(id.value())->is_process());
    CHECK(m.add_process("").code() == Errc::EmptyName);
}

TEST_CASE("states belong to objects only") {
    Model m = fresh();
    auto micro_ai = m.add_object("MicroAI").value();
    auto screening = m.add_process("Screening").value();

    auto s = m.add_state(micro_ai, "operational");
    REQUIRE(s.ok());
    CHECK(m.state(s.value())->name == "operational");
    CHECK(m.state_owner(s.value())->id == micro_ai);
    CHECK(m.resolve(s.value()) == NodeKind::State);

    CHECK(m.add_state(screening, "done").code() == Errc::NotAnObject);
    CHECK(m.add_state(micro_ai, "operational").code() == Errc::DuplicateState);
    CHECK(m.add_state(EntityId{"ghost"}, "x").code() == Errc::UnknownEntity);
    CHECK(m.add_state(micro_ai, " ").code() == Errc::EmptyName);
}

TEST_CASE("states are ordered within their owner") {
    Model m = fresh();
    auto id = m.add_object("Machine").value();
    m.add_state(id, "idle").value();
    m.add_state(id, "busy").value();
    const Entity* e = m.entity(id);
    REQUIRE(e->states.size() == 2);
    CHECK(e->states[0].name == "idle");
    CHECK(e->states[1].name == "busy");
}

TEST_CASE("link endpoints are checked against table R") {
    Model m = fresh();
    auto micro_ai = m.add_object("MicroAI").value();
    auto screening = m.add_process("Screening").value();

    auto l = m.add_link(LinkVariant::Instrument, micro_ai, screening);
    REQUIRE(l.ok());
    CHECK(m.link(l.value())->kind == LinkVariant::Instrument);
    CHECK(m.diagrams[0].has_link(l.value()));

    auto illegal = m.add_link(LinkVariant::Aggregation, screening, micro_ai);
    CHECK(illegal.code() == Errc::IllegalEndpoints);

    CHECK(m.add_link(LinkVariant::Instrument, micro_ai, micro_ai).code() == Errc::SelfLink);
    CHECK(m.add_link(LinkVariant::Instrument, EntityId{"ghost"}, screening).code() ==
          Errc::UnknownEntity);
}

TEST_CASE("removing a fresh object is the inverse of adding it") {
    Model m = fresh();
    m.add_object("Base").value();
    m.add_process("Work").value();
    Model before = m;

    auto id = m.add_object("Scratch").value();
    REQUIRE_FALSE(structurally_equal(before, m));
    REQUIRE(m.remove_entity(id).ok());
    CHECK(structurally_equal(before, m));
}

TEST_CASE("removing an entity cascades through links and memberships") {
    Model m = fresh();
    auto hub = m.add_object("Hub").value();
    auto other = m.add_object("Other").value();
    auto p = m.add_process("Work").value();
    m.add_link(LinkVariant::Instrument, hub, p).value();
    m.add_link(LinkVariant::Consumption, hub, p).value();
    m.add_link(LinkVariant::Instrument, other, p).value();
    REQUIRE(m.links.size() == 3);

    REQUIRE(m.remove_entity(hub).ok());
    CHECK(m.links.size() == 1);
    CHECK(m.entity(hub) == nullptr);

    // Full-scan: nothing references the removed id anymore.
    for (const Link& l : m.links) {
        CHECK(l.source.target != hub);
        CHECK(l.destination.target != hub);
    }
    for (const Diagram& d : m.diagrams)
        CHECK_FALSE(d.has_entity(hub));

    CHECK(m.remove_entity(hub).code() == Errc::UnknownEntity);
}

TEST_CASE("state links die with their owner") {
    Model m = fresh();
    auto machine = m.add_object("Machine").value();
    auto on = m.add_state(machine, "on").value();
    auto p = m.add_process("Run").value();
    m.add_link(LinkVariant::Consumption, on, p).value();

    REQUIRE(m.remove_entity(machine).ok());
    CHECK(m.links.empty());
    CHECK(m.state(on) == nullptr);
}

TEST_CASE("an entity that anchors a refinement cannot be removed") {
    Model corpus = testsupport::build_corpus();
    auto rnd = corpus.find_by_name("Research and Development");
    REQUIRE(rnd.has_value());
    CHECK(corpus.remove_entity(*rnd).code() == Errc::AnchorsRefinement);
    // Still intact afterwards.
    CHECK(corpus.entity(*rnd) != nullptr);
}

TEST_CASE("find_by_name is exact on canonical names") {
    Model corpus = testsupport::build_corpus();
    CHECK(corpus.find_by_name("MicroAI").has_value());
    CHECK(corpus.find_by_name(" MicroAI ").has_value()); // canonicalized input
    CHECK_FALSE(corpus.find_by_name("Nonexistent").has_value());
    CHECK_FALSE(corpus.find_by_name("  microai ").has_value()); // case-sensitive
}

TEST_CASE("current-diagram selection steers membership") {
    Model corpus = testsupport::build_corpus();
    REQUIRE(corpus.select_diagram("SD").ok());
    auto extra = corpus.add_object("Extra").value();
    CHECK(corpus.diagram("SD")->has_entity(extra));
    CHECK_FALSE(corpus.diagram("SD1")->has_entity(extra));
    CHECK(corpus.select_diagram("Nope").code() == Errc::UnknownDiagram);
}

TEST_CASE("entity ids are deterministic slugs with collision suffixes") {
    Model m = fresh();
    CHECK(m.add_object("HPC Development System").value().value == "hpc-development-system");
    CHECK(m.add_object("hpc development system!").value().value ==
          "hpc-development-system-2");
}

TEST_CASE("remove_diagram removes only childless non-root diagrams") {
    Model corpus = testsupport::build_corpus();
    CHECK(corpus.remove_diagram("SD").code() == Errc::HasChildren);
    CHECK(corpus.remove_diagram("SD1").code() == Errc::HasChildren);
    CHECK(corpus.remove_diagram("SD9").code() == Errc::UnknownDiagram);
    REQUIRE(corpus.remove_diagram("SD1.1").ok());
    CHECK(corpus.diagram("SD1.1") == nullptr);
    // Members survive the removed view.
    CHECK(corpus.find_by_name("Screening").has_value());
    // And the anchor can be removed now that its diagram is gone.
    auto rnd = corpus.find_by_name("Research and Development");
    CHECK(corpus.remove_entity(*rnd).ok());
}

TEST_CASE("random op sequences keep the model invariants") {
    testsupport::ModelGen gen(424242);
    for (int round = 0; round < 25; ++round) {
        Model m = gen();
        REQUIRE(m.entities.size() <= 40);
        REQUIRE(m.links.size() <= 80);

        // Referential integrity + name uniqueness + state ownership, by scan.
        std::set<std::string> names;
        for (const Entity& e : m.entities) {
            CHECK(names.insert(e.name).second);
            for (const StateDef& s : e.states) {
                CHECK(s.owner == e.id);
                CHECK(e.is_object());
            }
        }
        for (const Link& l : m.links) {
            CHECK(m.resolve(l.source.target) == l.source.kind);
            CHECK(m.resolve(l.destination.target) == l.destination.kind);
        }
        CHECK_FALSE(has_errors(validate(m)));
    }
}

TEST_CASE("cascade completeness holds for random removals") {
    testsupport::ModelGen gen(7);
    std::mt19937 rng(99);
    for (int round = 0; round < 15; ++round) {
        Model m = gen();
        if (m.entities.empty())
            continue;
        std::uniform_int_distribution<std::size_t> at(0, m.entities.size() - 1);
        EntityId victim = m.entities[at(rng)].id;
        auto removed = m.remove_entity(victim);
        if (!removed.ok()) {
            CHECK(removed.code() == Errc::AnchorsRefinement);
            continue;
        }
        for (const Link& l : m.links) {
            CHECK(l.source.target != victim);
            CHECK(l.destination.target != victim);
        }
        for (const Diagram& d : m.diagrams) {
            CHECK_FALSE(d.has_entity(victim));
            if (d.anchor)
                CHECK(*d.anchor != victim);
        }
    }
}
