#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "opm/parser.hpp"
#include "opm/validate.hpp"

using namespace opm;

namespace {

bool has_code(const std::vector<Diagnostic>& diagnostics, const std::string& code) {
    for (const Diagnostic& d : diagnostics)
        if (d.code == code)
            return true;
    return false;
}

const Diagnostic* first_with(const std::vector<Diagnostic>& diagnostics,
                             const std::string& code) {
    for (const Diagnostic& d : diagnostics)
        if (d.code == code)
            return &d;
    return nullptr;
}

} // namespace

TEST_CASE("a declaration-plus-link document builds the expected model") {
    auto r = parse("object \"MicroAI\". process \"Screening\". "
                   "\"MicroAI\" is instrument of \"Screening\".");
    REQUIRE(r.ok());
    const Model& m = *r.model;
    CHECK(m.entity_count() == 2);
    REQUIRE(m.links.size() == 1);
    const Link& l = m.links[0];
    CHECK(l.kind == LinkVariant::Instrument);
    CHECK(m.display_name(l.source.target) == "MicroAI");
    CHECK(m.display_name(l.destination.target) == "Screening");
    CHECK_FALSE(has_errors(validate(m)));
}

TEST_CASE("the empty document parses to an empty model named untitled") {
    auto r = parse("");
    REQUIRE(r.ok());
    CHECK(r.model->name == "untitled");
    CHECK(r.model->entity_count() == 0);
}

TEST_CASE("whitespace and comments are insignificant") {
    auto r = parse("// preamble\n  object // trailing\n  \"X\"\n.\nprocess \"Y\".");
    REQUIRE(r.ok());
    CHECK(r.model->entity_count() == 2);
}

TEST_CASE("the header names the model and is only legal up front") {
    auto r = parse("model \"Factory\". object \"X\".");
    REQUIRE(r.ok());
    CHECK(r.model->name == "Factory");

    auto misplaced = parse("object \"X\". model \"Late\".");
    CHECK_FALSE(misplaced.ok());
    CHECK(has_code(misplaced.diagnostics, "P105"));
}

TEST_CASE("undeclared references are P101 with an accurate span") {
    auto r = parse("\"Ghost\" is instrument of \"Screening\".");
    REQUIRE_FALSE(r.ok());
    const Diagnostic* d = first_with(r.diagnostics, "P101");
    REQUIRE(d != nullptr);
    REQUIRE(d->span.has_value());
    CHECK(d->span->line == 1);
    CHECK(d->span->column == 1);
    CHECK(d->span->length == 7); // the quoted token "Ghost"
}

TEST_CASE("escapes round through the lexer") {
    auto r = parse("object \"Say \\\"hi\\\" \\\\ now\".");
    REQUIRE(r.ok());
    CHECK(r.model->find_by_name("Say \"hi\" \\ now").has_value());

    auto bad = parse("object \"a\\n\".");
    CHECK_FALSE(bad.ok());
    CHECK(has_code(bad.diagnostics, "P003"));
}

TEST_CASE("unterminated strings are P002") {
    auto r = parse("object \"X");
    CHECK_FALSE(r.ok());
    CHECK(has_code(r.diagnostics, "P002"));
}

TEST_CASE("unknown keywords are errors, not skipped") {
    auto r = parse("widget \"X\".");
    CHECK_FALSE(r.ok());
    CHECK(has_code(r.diagnostics, "P001"));
}

TEST_CASE("duplicate declarations are P102") {
    auto r = parse("object \"X\". process \"X\".");
    CHECK_FALSE(r.ok());
    CHECK(has_code(r.diagnostics, "P102"));
}

TEST_CASE("state lists attach ordered states to objects") {
    auto r = parse("object \"Machine\". \"Machine\" can be \"idle\", \"busy\".");
    REQUIRE(r.ok());
    const Entity* e = r.model->entity_by_name("Machine");
    REQUIRE(e != nullptr);
    REQUIRE(e->states.size() == 2);
    CHECK(e->states[0].name == "idle");
    CHECK(e->states[1].name == "busy");

    CHECK(has_code(parse("process \"P\". \"P\" can be \"x\".").diagnostics, "P106"));
    CHECK(has_code(
        parse("object \"M\". \"M\" can be \"x\", \"x\".").diagnostics, "P107"));
}

TEST_CASE("states resolve as link endpoints by unique bare name") {
    auto r = parse("object \"Machine\". \"Machine\" can be \"ready\". "
                   "process \"Run\". \"Run\" consumes \"ready\".");
    REQUIRE(r.ok());
    REQUIRE(r.model->links.size() == 1);
    const Link& l = r.model->links[0];
    CHECK(l.kind == LinkVariant::Consumption);
    CHECK(l.source.kind == NodeKind::State);
    CHECK(r.model->display_name(l.source.target) == "ready");
    CHECK(r.model->display_name(l.destination.target) == "Run");
}

TEST_CASE("ambiguous state references are P103") {
    auto r = parse("object \"A\". object \"B\". \"A\" can be \"on\". \"B\" can be \"on\". "
                   "process \"Run\". \"Run\" consumes \"on\".");
    CHECK_FALSE(r.ok());
    CHECK(has_code(r.diagnostics, "P103"));
}

TEST_CASE("link legality violations surface as P201 with a span") {
    auto r = parse("object \"A\". process \"P\". \"A\" is part of \"P\".");
    REQUIRE_FALSE(r.ok());
    const Diagnostic* d = first_with(r.diagnostics, "P201");
    REQUIRE(d != nullptr);
    REQUIRE(d->span.has_value());
    CHECK(d->span->line == 1);

    CHECK(has_code(parse("object \"A\". \"A\" affects \"A\".").diagnostics, "P202"));
}

TEST_CASE("every verb maps to its documented kind and direction") {
    auto r = parse("object \"A\". object \"B\". process \"P\". process \"Q\". "
                   "\"A\" is part of \"B\". "
                   "\"A\" exhibits \"B\". "
                   "\"A\" is a \"B\". "
                   "\"A\" is instance of \"B\". "
                   "\"P\" consumes \"A\". "
                   "\"P\" yields \"A\". "
                   "\"P\" affects \"A\". "
                   "\"A\" is agent of \"P\". "
                   "\"A\" is instrument of \"P\". "
                   "\"P\" is part of \"Q\".");
    REQUIRE(r.ok());
    const Model& m = *r.model;
    REQUIRE(m.links.size() == 10);

    auto check_link = [&](std::size_t i, LinkVariant kind, const char* src, const char* dst) {
        CAPTURE(i);
        CHECK(m.links[i].kind == kind);
        CHECK(m.display_name(m.links[i].source.target) == src);
        CHECK(m.display_name(m.links[i].destination.target) == dst);
    };
    check_link(0, LinkVariant::Aggregation, "A", "B");
    check_link(1, LinkVariant::Exhibition, "A", "B");
    check_link(2, LinkVariant::Generalization, "A", "B");
    check_link(3, LinkVariant::Instantiation, "A", "B");
    check_link(4, LinkVariant::Consumption, "A", "P"); // stored consumed->process
    check_link(5, LinkVariant::Result, "P", "A");
    check_link(6, LinkVariant::Effect, "P", "A"); // stored as written
    check_link(7, LinkVariant::Agent, "A", "P");
    check_link(8, LinkVariant::Instrument, "A", "P");
    check_link(9, LinkVariant::Aggregation, "P", "Q");
}

TEST_CASE("zoom statements open a child diagram and move the cursor") {
    auto r = parse("process \"Creating\". \"Creating\" zooms into \"Make\", \"Check\". "
                   "object \"Tool\". \"Tool\" is instrument of \"Make\".");
    REQUIRE(r.ok());
    const Model& m = *r.model;
    const Diagram* sd1 = m.diagram("SD1");
    REQUIRE(sd1 != nullptr);
    CHECK(sd1->mode == RefineMode::Zoom);
    CHECK(sd1->refined.size() == 2);
    CHECK(sd1->has_entity(*m.find_by_name("Tool")));
    CHECK_FALSE(m.diagram("SD")->has_entity(*m.find_by_name("Tool")));

    CHECK(has_code(parse("object \"O\". \"O\" zooms into \"X\".").diagnostics, "P203"));
    CHECK(has_code(parse("process \"P\". \"P\" zooms into \"X\". \"P\" zooms into \"Y\".")
                       .diagnostics,
                   "P204"));
    CHECK(has_code(parse("process \"P\". \"P\" zooms into \"P\".").diagnostics, "P205"));
}

TEST_CASE("unfold statements aggregate same-kind members under the anchor") {
    auto r = parse("process \"R\". \"R\" unfolds to \"S\", \"T\".");
    REQUIRE(r.ok());
    const Model& m = *r.model;
    const Diagram* sd1 = m.diagram("SD1");
    REQUIRE(sd1 != nullptr);
    CHECK(sd1->mode == RefineMode::Unfold);
    CHECK(m.links.size() == 2);
    for (const Link& l : m.links) {
        CHECK(l.kind == LinkVariant::Aggregation);
        CHECK(m.display_name(l.destination.target) == "R");
    }
}

TEST_CASE("parse never returns a partial model") {
    auto r = parse("object \"Good\". object \"Fine\". \"Nope\" affects \"Good\".");
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.model.has_value());
    CHECK(has_errors(r.diagnostics));
}

TEST_CASE("diagnostic spans always lie inside the document") {
    const char* broken_docs[] = {
        "object \"X\". object \"X\".",
        "\"A\" is wibble of \"B\".",
        "object \"A\".\nprocess \"B\".\n\"A\" is part of \"B\".",
        "object \"A\"\nprocess",
        "model \"M\". model \"N\".",
        "object \"A\". \"A\" can be \"x\", \"x\".",
    };
    for (const char* doc : broken_docs) {
        CAPTURE(doc);
        auto r = parse(doc);
        REQUIRE_FALSE(r.ok());
        std::vector<std::string> doc_lines;
        std::istringstream stream{std::string(doc)};
        for (std::string line; std::getline(stream, line);)
            doc_lines.push_back(line);
        for (const Diagnostic& d : r.diagnostics) {
            REQUIRE(d.span.has_value());
            REQUIRE(d.span->line >= 1);
            REQUIRE(d.span->line <= static_cast<int>(doc_lines.size()));
            const std::string& line = doc_lines[static_cast<std::size_t>(d.span->line - 1)];
            CHECK(d.span->column >= 1);
            CHECK(d.span->column <= static_cast<int>(line.size()) + 1);
        }
    }
}

TEST_CASE("a successful parse yields a validator-clean model") {
    auto r = parse("model \"Clean\". object \"A\". process \"P\". "
                   "\"A\" is instrument of \"P\". \"P\" yields \"A\".");
    REQUIRE(r.ok());
    CHECK_FALSE(has_errors(validate(*r.model)));
}
