#include "opm/parser.hpp"

#include <cassert>
#include <cctype>

#include "opm/refine.hpp"

namespace opm {

namespace {

struct Token {
    enum class Type { String, Word, Period, Comma, End };
    Type type = Type::End;
    std::string text; // unescaped content for String, keyword for Word
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view text, std::vector<Diagnostic>& diagnostics)
        : text_(text), diagnostics_(diagnostics) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                advance_line();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                ++col_;
                continue;
            }
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    ++pos_;
                    ++col_;
                }
                continue;
            }
            if (c == '"') {
                tokens.push_back(lex_string());
                continue;
            }
            if (c == '.') {
                tokens.push_back(Token{Token::Type::Period, ".", here(1)});
                ++pos_;
                ++col_;
                continue;
            }
            if (c == ',') {
                tokens.push_back(Token{Token::Type::Comma, ",", here(1)});
                ++pos_;
                ++col_;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                tokens.push_back(lex_word());
                continue;
            }
            error("P001", here(1), std::string("unexpected character '") + c + "'");
            ++pos_;
            ++col_;
        }
        tokens.push_back(Token{Token::Type::End, "", here(1)});
        return tokens;
    }

private:
    SourceSpan here(int length) const { return SourceSpan{line_, col_, length}; }

    void advance_line() {
        ++pos_;
        ++line_;
        col_ = 1;
    }

    void error(const char* code, SourceSpan span, std::string message) {
        diagnostics_.push_back(
            Diagnostic{code, Severity::Error, "", std::move(message), span});
    }

    Token lex_string() {
        SourceSpan start = here(1);
        ++pos_;
        ++col_;
        std::string value;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                ++pos_;
                ++col_;
                start.length = col_ - start.column;
                if (start.line != line_)
                    start.length = static_cast<int>(value.size()) + 2;
                return Token{Token::Type::String, std::move(value), start};
            }
            if (c == '\\') {
                if (pos_ + 1 >= text_.size()) {
                    ++pos_;
                    ++col_;
                    break;
                }
                char next = text_[pos_ + 1];
                if (next == '"' || next == '\\') {
                    value.push_back(next);
                } else {
                    error("P003", here(2),
                          std::string("invalid escape '\\") + next + "' (only \\\" and \\\\)");
                    value.push_back(next);
                }
                pos_ += 2;
                col_ += 2;
                continue;
            }
            value.push_back(c);
            if (c == '\n')
                advance_line();
            else {
                ++pos_;
                ++col_;
            }
        }
        error("P002", start, "unterminated string");
        return Token{Token::Type::String, std::move(value), start};
    }

    Token lex_word() {
        SourceSpan start = here(0);
        std::string word;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            word.push_back(text_[pos_]);
            ++pos_;
            ++col_;
        }
        start.length = static_cast<int>(word.size());
        return Token{Token::Type::Word, std::move(word), start};
    }

    std::string_view text_;
    std::vector<Diagnostic>& diagnostics_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) {
        tokens_ = Lexer(text, diagnostics_).run();
    }

    ParseResult run() {
        auto made = Model::make("untitled");
        assert(made.ok());
        model_ = std::move(made).value();

        bool first = true;
        while (!at(Token::Type::End)) {
            if (at(Token::Type::Word) && peek().text == "model") {
                if (first)
                    parse_header();
                else {
                    error("P105", peek().span, "header is only allowed at the start");
                    recover();
                }
                first = false;
                continue;
            }
            first = false;
            parse_statement();
        }

        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        if (!has_errors(result.diagnostics))
            result.model = std::move(model_);
        return result;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = index_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(Token::Type type) const { return peek().type == type; }
    const Token& take() {
        const Token& t = peek();
        if (index_ + 1 < tokens_.size())
            ++index_;
        return t;
    }

    void error(const char* code, SourceSpan span, std::string message,
               std::string subject = {}) {
        diagnostics_.push_back(
            Diagnostic{code, Severity::Error, std::move(subject), std::move(message), span});
    }

    // Skip to just past the next period so one bad statement costs one
    // diagnostic, not a cascade.
    void recover() {
        while (!at(Token::Type::End)) {
            if (take().type == Token::Type::Period)
                return;
        }
    }

    bool expect_period() {
        if (at(Token::Type::Period)) {
            take();
            return true;
        }
        error("P004", peek().span, "expected '.' to end the statement");
        recover();
        return false;
    }

    std::optional<Token> expect_string(const char* what) {
        if (at(Token::Type::String))
            return take();
        error("P004", peek().span, std::string("expected ") + what);
        recover();
        return std::nullopt;
    }

    bool expect_word(const char* word) {
        if (at(Token::Type::Word) && peek().text == word) {
            take();
            return true;
        }
        error("P004", peek().span, std::string("expected '") + word + "'");
        recover();
        return false;
    }

    // name (", " name)* "."
    std::optional<std::vector<Token>> name_list() {
        std::vector<Token> names;
        auto first = expect_string("a quoted name");
        if (!first)
            return std::nullopt;
        names.push_back(*first);
        while (at(Token::Type::Comma)) {
            take();
            auto next = expect_string("a quoted name after ','");
            if (!next)
                return std::nullopt;
            names.push_back(*next);
        }
        if (!expect_period())
            return std::nullopt;
        return names;
    }

    void parse_header() {
        take(); // "model"
        auto name = expect_string("the model name");
        if (!name)
            return;
        if (!expect_period())
            return;
        std::string canon = canonical_name(name->text);
        if (canon.empty()) {
            error("P104", name->span, "model name is empty");
            return;
        }
        model_.name = canon;
    }

    void parse_statement() {
        if (at(Token::Type::Word)) {
            const std::string& kw = peek().text;
            if (kw == "object" || kw == "process") {
                parse_decl();
                return;
            }
            error("P001", peek().span, "unknown statement keyword '" + kw + "'");
            recover();
            return;
        }
        if (at(Token::Type::String)) {
            parse_subject_statement();
            return;
        }
        error("P001", peek().span, "expected a statement");
        recover();
    }

    void parse_decl() {
        Token kw = take();
        auto name = expect_string("the declared name");
        if (!name)
            return;
        if (!expect_period())
            return;
        auto added = kw.text == "object" ? model_.add_object(name->text)
                                         : model_.add_process(name->text);
        if (!added)
            report_op_error(added.error(), name->span);
    }

    void parse_subject_statement() {
        Token subject = take();
        if (!at(Token::Type::Word)) {
            error("P004", peek().span, "expected a verb after the name");
            recover();
            return;
        }
        std::string verb = take().text;
        if (verb == "can") {
            if (!expect_word("be"))
                return;
            parse_statelist(subject);
        } else if (verb == "zooms") {
            if (!expect_word("into"))
                return;
            parse_zoom(subject);
        } else if (verb == "unfolds") {
            if (!expect_word("to"))
                return;
            parse_unfold(subject);
        } else if (verb == "exhibits") {
            parse_link(subject, LinkVariant::Exhibition);
        } else if (verb == "consumes") {
            parse_link(subject, LinkVariant::Consumption);
        } else if (verb == "yields") {
            parse_link(subject, LinkVariant::Result);
        } else if (verb == "affects") {
            parse_link(subject, LinkVariant::Effect);
        } else if (verb == "is") {
            if (!at(Token::Type::Word)) {
                error("P004", peek().span,
                      "expected 'part', 'a', 'instance', 'agent' or 'instrument'");
                recover();
                return;
            }
            std::string qualifier = take().text;
            if (qualifier == "a") {
                parse_link(subject, LinkVariant::Generalization);
            } else if (qualifier == "part") {
                if (expect_word("of"))
                    parse_link(subject, LinkVariant::Aggregation);
            } else if (qualifier == "instance") {
                if (expect_word("of"))
                    parse_link(subject, LinkVariant::Instantiation);
            } else if (qualifier == "agent") {
                if (expect_word("of"))
                    parse_link(subject, LinkVariant::Agent);
            } else if (qualifier == "instrument") {
                if (expect_word("of"))
                    parse_link(subject, LinkVariant::Instrument);
            } else {
                error("P004", peek().span,
                      "expected 'part', 'a', 'instance', 'agent' or 'instrument', got '" +
                          qualifier + "'");
                recover();
            }
        } else {
            error("P004", subject.span, "'" + verb + "' is not a link verb");
            recover();
        }
    }

    void parse_statelist(const Token& owner_token) {
        auto names = name_list();
        if (!names)
            return;
        auto owner = resolve_entity(owner_token);
        if (!owner)
            return;
        const Entity* e = model_.entity(*owner);
        if (!e->is_object()) {
            error("P106", owner_token.span,
                  "\"" + e->name + "\" is a process; states belong to objects");
            return;
        }
        for (const Token& name : *names) {
            auto added = model_.add_state(*owner, name.text);
            if (!added)
                report_op_error(added.error(), name.span);
        }
    }

    void parse_link(const Token& subject, LinkVariant kind) {
        auto object = expect_string("the second name of the link");
        if (!object)
            return;
        if (!expect_period())
            return;
        // "P consumes O" reads destination-first; every other verb reads
        // source-first.
        const Token& source_token = kind == LinkVariant::Consumption ? *object : subject;
        const Token& dest_token = kind == LinkVariant::Consumption ? subject : *object;
        auto source = resolve_endpoint(source_token);
        auto destination = resolve_endpoint(dest_token);
        if (!source || !destination)
            return;
        auto added = model_.add_link(kind, *source, *destination);
        if (!added)
            report_op_error(added.error(), subject.span);
    }

    void parse_zoom(const Token& anchor_token) {
        auto names = name_list();
        if (!names)
            return;
        auto anchor = resolve_entity(anchor_token);
        if (!anchor)
            return;
        std::vector<std::string> raw;
        for (const Token& t : *names)
            raw.push_back(t.text);
        auto refined = in_zoom(model_, *anchor, raw);
        if (!refined)
            report_op_error(refined.error(), anchor_token.span, /*refinement=*/true);
    }

    void parse_unfold(const Token& anchor_token) {
        auto names = name_list();
        if (!names)
            return;
        auto anchor = resolve_entity(anchor_token);
        if (!anchor)
            return;
        std::vector<std::string> raw;
        for (const Token& t : *names)
            raw.push_back(t.text);
        // The textual form carries no member kind; constituents share the
        // anchor's kind unless they already exist.
        NodeKind kind = model_.entity(*anchor)->kind;
        auto refined = unfold(model_, *anchor, raw, kind);
        if (!refined)
            report_op_error(refined.error(), anchor_token.span, /*refinement=*/true);
    }

    std::optional<EntityId> resolve_entity(const Token& token) {
        std::string canon = canonical_name(token.text);
        if (canon.empty()) {
            error("P104", token.span, "name is empty");
            return std::nullopt;
        }
        if (const Entity* e = model_.entity_by_name(canon))
            return e->id;
        error("P101", token.span, "\"" + canon + "\" has not been declared",
              "\"" + canon + "\"");
        return std::nullopt;
    }

    // Entity name first; otherwise a state name, which must be unique
    // model-wide to be usable here.
    std::optional<EntityId> resolve_endpoint(const Token& token) {
        std::string canon = canonical_name(token.text);
        if (canon.empty()) {
            error("P104", token.span, "name is empty");
            return std::nullopt;
        }
        if (const Entity* e = model_.entity_by_name(canon))
            return e->id;
        std::vector<EntityId> matches;
        for (const Entity& e : model_.entities)
            for (const StateDef& s : e.states)
                if (s.name == canon)
                    matches.push_back(s.id);
        if (matches.size() == 1)
            return matches.front();
        if (matches.size() > 1) {
            error("P103", token.span,
                  "state name \"" + canon + "\" is ambiguous (" +
                      std::to_string(matches.size()) + " owners)");
            return std::nullopt;
        }
        error("P101", token.span, "\"" + canon + "\" has not been declared",
              "\"" + canon + "\"");
        return std::nullopt;
    }

    void report_op_error(const Error& err, SourceSpan span, bool refinement = false) {
        const char* code = "P201";
        switch (err.code) {
        case Errc::EmptyName: code = "P104"; break;
        case Errc::DuplicateName: code = "P102"; break;
        case Errc::UnknownEntity: code = "P101"; break;
        case Errc::NotAnObject: code = "P106"; break;
        case Errc::DuplicateState: code = "P107"; break;
        case Errc::IllegalEndpoints: code = "P201"; break;
        case Errc::SelfLink: code = refinement ? "P205" : "P202"; break;
        case Errc::NotAProcess: code = "P203"; break;
        case Errc::AlreadyRefined: code = "P204"; break;
        default: break;
        }
        error(code, span, err.message);
    }

    std::vector<Diagnostic> diagnostics_;
    std::vector<Token> tokens_;
    std::size_t index_ = 0;
    Model model_{};
};

} // namespace

ParseResult parse(std::string_view text) {
    return Parser(text).run();
}

} // namespace opm
