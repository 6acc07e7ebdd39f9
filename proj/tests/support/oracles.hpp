#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "opm/graph.hpp"

namespace testsupport {

// Independent reader for the node-link JSON schema; written against the
// schema, not against to_json_graph.
inline opm::GraphDoc import_json_graph(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    opm::GraphDoc doc;
    doc.model = j.at("model").get<std::string>();
    for (const auto& n : j.at("nodes"))
        doc.nodes.push_back(opm::GraphNode{n.at("id").get<std::string>(),
                                           n.at("kind").get<std::string>(),
                                           n.at("label").get<std::string>(),
                                           n.at("diagrams").get<std::vector<std::string>>()});
    for (const auto& e : j.at("edges"))
        doc.edges.push_back(opm::GraphEdge{e.at("source").get<std::string>(),
                                           e.at("target").get<std::string>(),
                                           e.at("kind").get<std::string>()});
    return doc;
}

// Minimal DOT grammar acceptor: digraph (id|string)? { stmt* } where stmt is
// a node line, an edge line or a bare attribute assignment, each
// semicolon-terminated.
class DotChecker {
public:
    explicit DotChecker(const std::string& text) : text_(text) {}

    bool run(std::string* why = nullptr) {
        bool ok = check(why);
        return ok;
    }

private:
    bool fail(std::string* why, const std::string& message) {
        if (why)
            *why = message + " at offset " + std::to_string(pos_);
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool name(std::string* out = nullptr) {
        skip_ws();
        if (pos_ >= text_.size())
            return false;
        if (text_[pos_] == '"') {
            ++pos_;
            std::string value;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size())
                    ++pos_;
                value.push_back(text_[pos_++]);
            }
            if (pos_ >= text_.size())
                return false;
            ++pos_;
            if (out)
                *out = value;
            return true;
        }
        std::string value;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '-' || text_[pos_] == '.')) {
            if (text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')
                break;
            value.push_back(text_[pos_++]);
        }
        if (value.empty())
            return false;
        if (out)
            *out = value;
        return true;
    }

    bool attr_list(std::string* why) {
        if (!eat('['))
            return true; // optional
        while (true) {
            if (!name())
                return fail(why, "expected attribute name");
            if (!eat('='))
                return fail(why, "expected '='");
            if (!name())
                return fail(why, "expected attribute value");
            if (eat(','))
                continue;
            if (eat(']'))
                return true;
            return fail(why, "expected ',' or ']'");
        }
    }

    bool check(std::string* why) {
        std::string word;
        if (!name(&word) || word != "digraph")
            return fail(why, "expected 'digraph'");
        if (!peek('{') && !name())
            return fail(why, "expected graph name or '{'");
        if (!eat('{'))
            return fail(why, "expected '{'");
        while (!peek('}')) {
            std::string first;
            if (!name(&first))
                return fail(why, "expected a statement");
            skip_ws();
            if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
                pos_ += 2;
                if (!name())
                    return fail(why, "expected edge target");
                if (!attr_list(why))
                    return false;
            } else if (eat('=')) {
                if (!name())
                    return fail(why, "expected attribute value");
            } else {
                if (!attr_list(why))
                    return false;
            }
            if (!eat(';'))
                return fail(why, "expected ';'");
        }
        if (!eat('}'))
            return fail(why, "expected '}'");
        skip_ws();
        if (pos_ != text_.size())
            return fail(why, "trailing content");
        return true;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

inline bool dot_well_formed(const std::string& text, std::string* why = nullptr) {
    return DotChecker(text).run(why);
}

inline int count_occurrences(const std::string& hay, const std::string& needle) {
    int count = 0;
    std::size_t pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// Rect extraction for the SVG geometry checks.
struct SvgRect {
    bool rounded = false;
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};

inline std::vector<SvgRect> svg_rects(const std::string& svg) {
    std::vector<SvgRect> rects;
    std::size_t pos = 0;
    while ((pos = svg.find("<rect ", pos)) != std::string::npos) {
        std::size_t end = svg.find("/>", pos);
        std::string element = svg.substr(pos, end - pos);
        auto attr = [&](const std::string& key) -> int {
            std::size_t at = element.find(" " + key + "=\""); // boundary: rx= is not x=
            if (at == std::string::npos)
                return 0;
            return std::atoi(element.c_str() + at + key.size() + 3);
        };
        SvgRect r;
        r.rounded = element.find(" rx=\"") != std::string::npos;
        r.x = attr("x");
        r.y = attr("y");
        r.w = attr("width");
        r.h = attr("height");
        rects.push_back(r);
        pos = end;
    }
    return rects;
}

} // namespace testsupport
