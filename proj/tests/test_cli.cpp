#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "support/oracles.hpp"
#include "support/proc.hpp"

using testsupport::run_command;
using testsupport::shell_quote;

namespace {

std::string cli() {
    const char* path = std::getenv("OPM_CLI");
    return path ? path : "";
}

std::string corpus() {
    const char* path = std::getenv("OPM_CORPUS");
    return path ? path : "";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

#define NEED_CLI()                                                                         \
    do {                                                                                   \
        if (cli().empty() || corpus().empty()) {                                          \
            MESSAGE("OPM_CLI / OPM_CORPUS not set; skipping");                            \
            return;                                                                       \
        }                                                                                  \
    } while (0)

} // namespace

TEST_CASE("validate: clean corpus exits 0, violations 1, missing files 2") {
    NEED_CLI();
    auto ok = run_command(cli() + " validate " + shell_quote(corpus()) + " 2>/dev/null");
    CHECK(ok.status == 0);

    std::string dir = testsupport::make_temp_dir();
    std::string bad = dir + "/bad.opm";
    spit(bad, "object \"A\". process \"P\". \"A\" is part of \"P\".\n");
    auto invalid = run_command(cli() + " validate " + shell_quote(bad) + " 2>/dev/null");
    CHECK(invalid.status == 1);

    auto missing = run_command(cli() + " validate /nonexistent/x.opm 2>/dev/null");
    CHECK(missing.status == 2);
}

TEST_CASE("validate: --strict promotes warnings to failure") {
    NEED_CLI();
    std::string dir = testsupport::make_temp_dir();
    std::string warn = dir + "/warn.opm";
    spit(warn, "object \"Lonely\".\n"); // W1 isolated entity, no errors
    auto relaxed = run_command(cli() + " validate " + shell_quote(warn) + " 2>/dev/null");
    CHECK(relaxed.status == 0);
    auto strict =
        run_command(cli() + " validate --strict " + shell_quote(warn) + " 2>/dev/null");
    CHECK(strict.status == 1);
}

TEST_CASE("validate: diagnostics go to stderr, not stdout") {
    NEED_CLI();
    std::string dir = testsupport::make_temp_dir();
    std::string warn = dir + "/warn.opm";
    spit(warn, "object \"Lonely\".\n");
    auto quiet = run_command(cli() + " validate " + shell_quote(warn) + " 2>/dev/null");
    CHECK(quiet.output.empty());
    auto loud = run_command(cli() + " validate " + shell_quote(warn) + " 2>&1");
    CHECK(loud.output.find("W1") != std::string::npos);
}

TEST_CASE("fmt canonicalizes once and is then a no-op") {
    NEED_CLI();
    std::string dir = testsupport::make_temp_dir();
    std::string file = dir + "/scratch.opm";
    spit(file, "// comment\nprocess \"B\".\nobject \"A\".\n\"A\" is instrument of \"B\".");

    auto first = run_command(cli() + " fmt " + shell_quote(file) + " 2>/dev/null");
    CHECK(first.status == 0);
    std::string once = slurp(file);
    CHECK(once.find("model \"untitled\".") == 0);

    auto second = run_command(cli() + " fmt " + shell_quote(file) + " 2>/dev/null");
    CHECK(second.status == 0);
    CHECK(slurp(file) == once);
}

TEST_CASE("requirements prints the derived block on stdout") {
    NEED_CLI();
    auto r = run_command(cli() + " requirements " + shell_quote(corpus()) +
                         " MicroAI 2>/dev/null");
    CHECK(r.status == 0);
    CHECK(r.output.find("SYSTEM MicroAI") == 0);
    CHECK(r.output.find("Articles Storage") != std::string::npos);

    auto unknown = run_command(cli() + " requirements " + shell_quote(corpus()) +
                               " Nobody 2>/dev/null");
    CHECK(unknown.status == 2);

    auto json = run_command(cli() + " requirements --format json " + shell_quote(corpus()) +
                            " MicroAI 2>/dev/null");
    CHECK(json.status == 0);
    CHECK(json.output.find("\"system\": \"MicroAI\"") != std::string::npos);
}

TEST_CASE("export writes DOT and JSON") {
    NEED_CLI();
    auto dot = run_command(cli() + " export --format dot " + shell_quote(corpus()) +
                           " 2>/dev/null");
    CHECK(dot.status == 0);
    CHECK(dot.output.rfind("digraph", 0) == 0);
    std::string why;
    CHECK_MESSAGE(testsupport::dot_well_formed(dot.output, &why), why);

    std::string dir = testsupport::make_temp_dir();
    std::string out = dir + "/g.json";
    auto json = run_command(cli() + " export --format json --out " + shell_quote(out) + " " +
                            shell_quote(corpus()) + " 2>/dev/null");
    CHECK(json.status == 0);
    CHECK(slurp(out).find("\"model\": \"Unique HPC System Development\"") !=
          std::string::npos);
}

TEST_CASE("render writes one SVG per requested diagram") {
    NEED_CLI();
    std::string dir = testsupport::make_temp_dir();
    auto r = run_command(cli() + " render --out " + shell_quote(dir) + " " +
                         shell_quote(corpus()) + " SD1 2>/dev/null");
    CHECK(r.status == 0);
    std::string svg = slurp(dir + "/unique-hpc-system-development-SD1.svg");
    CHECK(svg.find("<svg") != std::string::npos);

    auto bad = run_command(cli() + " render --out " + shell_quote(dir) + " " +
                           shell_quote(corpus()) + " SD9 2>/dev/null");
    CHECK(bad.status == 2);
}

TEST_CASE("example prints a readable corpus path") {
    NEED_CLI();
    auto r = run_command(cli() + " example 2>/dev/null");
    CHECK(r.status == 0);
    std::string path = r.output;
    while (!path.empty() && (path.back() == '\n' || path.back() == '\r'))
        path.pop_back();
    std::ifstream in(path);
    CHECK(in.good());
}
