#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opm/analysis.hpp"
#include "opm/graph.hpp"
#include "opm/model.hpp"
#include "opm/parser.hpp"
#include "opm/refine.hpp"
#include "opm/render.hpp"
#include "opm/validate.hpp"
#include "opm/writer.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1; // validation / parse errors
constexpr int kUsage = 2;   // usage or IO errors

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        return false;
    out << content;
    return static_cast<bool>(out);
}

void print_diagnostics(const std::vector<opm::Diagnostic>& diagnostics) {
    for (const opm::Diagnostic& d : diagnostics)
        std::cerr << opm::to_string(d) << "\n";
}

// Reads and parses; on failure prints why and reports the exit status.
struct Loaded {
    std::optional<opm::Model> model;
    int status = kOk;
};

Loaded load_model(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return {std::nullopt, kUsage};
    }
    opm::ParseResult parsed = opm::parse(*text);
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics);
        return {std::nullopt, kInvalid};
    }
    return {std::move(parsed.model), kOk};
}

int cmd_validate(const std::string& path, bool strict) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kUsage;
    }
    opm::ParseResult parsed = opm::parse(*text);
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics);
        return kInvalid;
    }
    std::vector<opm::Diagnostic> diagnostics = opm::validate(*parsed.model);
    std::vector<opm::Diagnostic> consistency = opm::check_consistency(*parsed.model);
    diagnostics.insert(diagnostics.end(), consistency.begin(), consistency.end());
    print_diagnostics(diagnostics);
    if (opm::has_errors(diagnostics))
        return kInvalid;
    if (strict && !diagnostics.empty())
        return kInvalid;
    return kOk;
}

int cmd_fmt(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kUsage;
    }
    opm::ParseResult parsed = opm::parse(*text);
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics);
        return kInvalid;
    }
    auto canonical = opm::generate(*parsed.model);
    if (!canonical) {
        std::cerr << "error: " << canonical.error().message << "\n";
        return kInvalid;
    }
    if (canonical.value() == *text)
        return kOk; // already canonical
    if (!write_file(path, canonical.value())) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return kUsage;
    }
    return kOk;
}

int cmd_export(const std::string& path, const std::string& format, const std::string& out) {
    Loaded loaded = load_model(path);
    if (!loaded.model)
        return loaded.status;
    auto graph = opm::to_graph(*loaded.model);
    if (!graph) {
        std::cerr << "error: " << graph.error().message << "\n";
        return kInvalid;
    }
    std::string text =
        format == "dot" ? opm::to_dot(graph.value()) : opm::to_json_graph(graph.value());
    if (out.empty()) {
        std::cout << text;
        return kOk;
    }
    if (!write_file(out, text)) {
        std::cerr << "error: cannot write '" << out << "'\n";
        return kUsage;
    }
    return kOk;
}

int cmd_render(const std::string& path, const std::string& diagram,
               const std::string& out_dir) {
    Loaded loaded = load_model(path);
    if (!loaded.model)
        return loaded.status;
    const opm::Model& model = *loaded.model;

    std::vector<std::string> labels;
    if (diagram.empty()) {
        for (const opm::Diagram* d : model.preorder())
            labels.push_back(d->label);
    } else {
        labels.push_back(diagram);
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    for (const std::string& label : labels) {
        auto laid = opm::layout(model, label);
        if (!laid) {
            std::cerr << "error: " << laid.error().message << "\n";
            return laid.error().code == opm::Errc::UnknownDiagram ? kUsage : kInvalid;
        }
        fs::path file = fs::path(out_dir) /
                        (opm::slugify(model.name) + "-" + label + ".svg");
        if (!write_file(file, opm::to_svg(laid.value(), model))) {
            std::cerr << "error: cannot write '" << file.string() << "'\n";
            return kUsage;
        }
    }
    return kOk;
}

int cmd_requirements(const std::string& path, const std::string& system,
                     const std::string& format) {
    Loaded loaded = load_model(path);
    if (!loaded.model)
        return loaded.status;
    const opm::Model& model = *loaded.model;
    auto id = model.find_by_name(system);
    if (!id) {
        std::cerr << "error: no entity named \"" << system << "\"\n";
        return kUsage;
    }
    auto requirement = opm::derive_requirements(model, *id);
    if (!requirement) {
        std::cerr << "error: " << requirement.error().message << "\n";
        return kUsage;
    }
    if (format == "json")
        std::cout << opm::requirement_to_json(model, requirement.value());
    else
        std::cout << opm::render_requirement(model, requirement.value());
    return kOk;
}

int cmd_example() {
    std::vector<fs::path> candidates;
    fs::path dir = fs::current_path();
    for (int i = 0; i < 5; ++i) {
        candidates.push_back(dir / "examples" / "unique-hpc.opm");
        if (!dir.has_parent_path() || dir.parent_path() == dir)
            break;
        dir = dir.parent_path();
    }
#ifdef OPM_EXAMPLE_FILE
    candidates.push_back(fs::path(OPM_EXAMPLE_FILE));
#endif
    for (const fs::path& p : candidates) {
        std::error_code ec;
        if (fs::exists(p, ec)) {
            std::cout << fs::absolute(p).lexically_normal().string() << "\n";
            return kOk;
        }
    }
    std::cerr << "error: bundled example not found\n";
    return kUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Object-process modeling toolkit"};
    app.require_subcommand(1);

    std::string path;
    std::string diagram;
    std::string system;
    std::string format = "json";
    std::string req_format = "text";
    std::string out;
    std::string out_dir = ".";
    bool strict = false;

    CLI::App* validate = app.add_subcommand("validate", "Check a model file");
    validate->add_option("file", path, "model file (.opm)")->required();
    validate->add_flag("--strict", strict, "treat warnings as errors");

    CLI::App* fmt = app.add_subcommand("fmt", "Rewrite a model file in canonical form");
    fmt->add_option("file", path, "model file (.opm)")->required();

    CLI::App* render = app.add_subcommand("render", "Render diagrams to SVG");
    render->add_option("file", path, "model file (.opm)")->required();
    render->add_option("diagram", diagram, "diagram label (default: all)");
    render->add_option("--out", out_dir, "output directory")->capture_default_str();

    CLI::App* exporter = app.add_subcommand("export", "Export the model graph");
    exporter->add_option("file", path, "model file (.opm)")->required();
    exporter->add_option("--format", format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}))
        ->capture_default_str();
    exporter->add_option("--out", out, "output file (default: stdout)");

    CLI::App* requirements =
        app.add_subcommand("requirements", "Derive the requirements of an enabling system");
    requirements->add_option("file", path, "model file (.opm)")->required();
    requirements->add_option("system", system, "enabling system name")->required();
    requirements->add_option("--format", req_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    CLI::App* example = app.add_subcommand("example", "Print the bundled example path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (validate->parsed())
        return cmd_validate(path, strict);
    if (fmt->parsed())
        return cmd_fmt(path);
    if (render->parsed())
        return cmd_render(path, diagram, out_dir);
    if (exporter->parsed())
        return cmd_export(path, format, out);
    if (requirements->parsed())
        return cmd_requirements(path, system, req_format);
    if (example->parsed())
        return cmd_example();
    return kUsage;
}
