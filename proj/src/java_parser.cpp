// Declaration-level Java parser. Only headers are interpreted; everything
// between braces of a method, initializer, enum or annotation type is
// skipped by brace matching.

#include "ifacemetrics/errors.hpp"
#include "ifacemetrics/java_frontend.hpp"

#include <cctype>
#include <set>

namespace ifacemetrics::java {
namespace {

enum class Tok { Ident, Punct, Literal, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Lexer {
public:
    Lexer(std::string_view src, std::string path) : src_(src), path_(std::move(path)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            const auto c = static_cast<unsigned char>(src_[pos_]);
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else if (starts("//")) {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (starts("/*")) {
                const int start = line_;
                pos_ += 2;
                while (pos_ < src_.size() && !starts("*/")) advance();
                if (pos_ >= src_.size()) throw ParseError(path_, start, "unterminated comment");
                pos_ += 2;
            } else if (starts("\"\"\"")) {
                const int start = line_;
                pos_ += 3;
                while (pos_ < src_.size() && !starts("\"\"\"")) {
                    if (src_[pos_] == '\\') advance();
                    advance();
                }
                if (pos_ >= src_.size()) throw ParseError(path_, start, "unterminated text block");
                pos_ += 3;
                out.push_back({Tok::Literal, "\"\"\"", start});
            } else if (c == '"' || c == '\'') {
                const int start = line_;
                ++pos_;
                while (pos_ < src_.size() && src_[pos_] != static_cast<char>(c) && src_[pos_] != '\n') {
                    if (src_[pos_] == '\\') ++pos_;
                    ++pos_;
                }
                if (pos_ >= src_.size() || src_[pos_] == '\n')
                    throw ParseError(path_, start, "unterminated literal");
                ++pos_;
                out.push_back({Tok::Literal, std::string(1, static_cast<char>(c)), start});
            } else if (ident_start(c)) {
                const std::size_t begin = pos_;
                while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
                out.push_back({Tok::Ident, std::string(src_.substr(begin, pos_ - begin)), line_});
            } else if (std::isdigit(c) || (c == '.' && pos_ + 1 < src_.size() &&
                                           std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                const std::size_t begin = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
                        src_[pos_] == '_'))
                    ++pos_;
                out.push_back({Tok::Literal, std::string(src_.substr(begin, pos_ - begin)), line_});
            } else if (starts("...")) {
                out.push_back({Tok::Punct, "...", line_});
                pos_ += 3;
            } else {
                out.push_back({Tok::Punct, std::string(1, static_cast<char>(c)), line_});
                ++pos_;
            }
        }
        out.push_back({Tok::End, {}, line_});
        return out;
    }

private:
    bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
    void advance() {
        if (pos_ < src_.size() && src_[pos_] == '\n') ++line_;
        ++pos_;
    }

    std::string_view src_;
    std::string path_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

const std::set<std::string, std::less<>> kModifiers = {
    "public", "protected", "private",  "static",   "final",    "abstract", "native",
    "synchronized", "transient", "volatile", "strictfp", "default", "sealed"};

struct Modifiers {
    bool is_static = false;
    bool is_default = false;
    bool is_private = false;
};

class Parser {
public:
    Parser(std::vector<Token> toks, std::filesystem::path path)
        : toks_(std::move(toks)), path_(std::move(path)) {}

    SourceUnit run() {
        SourceUnit unit;
        unit.path = path_;
        skip_annotations();
        if (is_ident("package")) {
            take();
            unit.package_name = qualified_name();
            expect(";");
        }
        while (is_ident("import")) {
            take();
            if (is_ident("static")) take();
            Import imp;
            imp.target = qualified_name();
            if (is_punct(".") && peek(1).text == "*") {
                take();
                take();
                imp.wildcard = true;
            }
            expect(";");
            unit.imports.push_back(std::move(imp));
        }
        while (!at_end()) {
            if (is_punct(";")) {
                take();
                continue;
            }
            type_declaration(unit, unit.package_name, {});
        }
        return unit;
    }

private:
    // --- token helpers -------------------------------------------------
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Tok::End; }
    bool is_punct(std::string_view p, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
    }
    bool is_ident(std::string_view w, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
    }
    [[noreturn]] void error(const std::string& what) const {
        throw ParseError(path_.string(), peek().line, what);
    }
    void expect(std::string_view p) {
        if (!is_punct(p)) error("expected '" + std::string(p) + "' but found '" + peek().text + "'");
        take();
    }
    std::string identifier() {
        if (peek().kind != Tok::Ident) error("expected identifier but found '" + peek().text + "'");
        return take().text;
    }
    std::string qualified_name() {
        std::string name = identifier();
        while (is_punct(".") && peek(1).kind == Tok::Ident) {
            take();
            name += "." + take().text;
        }
        return name;
    }

    /// Skips a balanced group starting at the current open token.
    void skip_group(std::string_view open, std::string_view close) {
        const int start = peek().line;
        int depth = 0;
        do {
            if (at_end()) throw ParseError(path_.string(), start, "unbalanced '" + std::string(open) + "'");
            if (is_punct(open)) ++depth;
            else if (is_punct(close)) --depth;
            take();
        } while (depth > 0);
    }

    /// Skips `{ ... }` including nested parentheses and brackets.
    void skip_block() { skip_group("{", "}"); }

    bool at_annotation() const { return is_punct("@") && !is_ident("interface", 1); }

    void skip_annotations() {
        while (at_annotation()) {
            take();
            qualified_name();
            if (is_punct("(")) skip_group("(", ")");
        }
    }

    Modifiers modifiers() {
        Modifiers m;
        for (;;) {
            if (at_annotation()) {
                skip_annotations();
            } else if (peek().kind == Tok::Ident && kModifiers.count(peek().text)) {
                const std::string& w = take().text;
                m.is_static |= w == "static";
                m.is_default |= w == "default";
                m.is_private |= w == "private";
            } else if (is_ident("non") && is_punct("-", 1) && is_ident("sealed", 2)) {
                take();
                take();
                take();
            } else {
                return m;
            }
        }
    }

    bool at_type_keyword() const {
        if (is_ident("class") || is_ident("interface") || is_ident("enum")) return true;
        if (is_punct("@") && is_ident("interface", 1)) return true;
        // `record` is contextual: `record Name(` or `record Name<`.
        return is_ident("record") && peek(1).kind == Tok::Ident && (is_punct("(", 2) || is_punct("<", 2));
    }

    /// Reference list of an extends/implements/permits clause.
    std::vector<std::string> type_list() {
        std::vector<std::string> out;
        for (;;) {
            skip_annotations();
            std::string name = identifier();
            for (;;) {
                if (is_punct("<")) skip_group("<", ">");
                if (is_punct(".") && peek(1).kind == Tok::Ident) {
                    take();
                    name += "." + take().text;
                    continue;
                }
                break;
            }
            out.push_back(std::move(name));
            if (!is_punct(",")) return out;
            take();
        }
    }

    void type_declaration(SourceUnit& unit, const std::string& scope, std::vector<std::string> enclosing) {
        modifiers();
        if (!at_type_keyword()) error("expected a type declaration but found '" + peek().text + "'");
        const int line = peek().line;
        bool ignored = false;
        TypeKind kind = TypeKind::Class;
        if (is_punct("@")) {
            take();
            take();
            ignored = true;
        } else {
            const std::string kw = take().text;
            ignored = kw == "enum";
            kind = kw == "interface" ? TypeKind::Interface : TypeKind::Class;
        }
        const std::string name = identifier();
        const std::string qualified = scope.empty() ? name : scope + "." + name;

        RawTypeDecl decl;
        decl.kind = kind;
        decl.qualified = qualified;
        decl.enclosing = enclosing;
        decl.line = line;

        if (is_punct("<")) skip_group("<", ">");
        if (is_punct("(")) skip_group("(", ")");  // record components
        while (!is_punct("{")) {
            if (at_end()) error("truncated declaration of '" + name + "'");
            if (is_ident("extends") || is_ident("implements")) {
                take();
                for (auto& ref : type_list()) decl.supertypes.push_back(std::move(ref));
            } else if (is_ident("permits")) {
                take();
                type_list();
            } else {
                error("unexpected '" + peek().text + "' in header of '" + name + "'");
            }
        }

        if (ignored) {
            skip_block();
            return;
        }

        const std::size_t slot = unit.declarations.size();
        unit.declarations.push_back(std::move(decl));
        enclosing.push_back(qualified);
        type_body(unit, slot, enclosing);
    }

    void type_body(SourceUnit& unit, std::size_t slot, const std::vector<std::string>& enclosing) {
        const int open_line = peek().line;
        expect("{");
        for (;;) {
            if (at_end()) throw ParseError(path_.string(), open_line, "unbalanced '{'");
            if (is_punct("}")) {
                take();
                return;
            }
            if (is_punct(";")) {
                take();
                continue;
            }
            member(unit, slot, enclosing);
        }
    }

    void member(SourceUnit& unit, std::size_t slot, const std::vector<std::string>& enclosing) {
        const std::size_t start = pos_;
        const Modifiers mods = modifiers();
        if (at_type_keyword()) {
            pos_ = start;
            type_declaration(unit, unit.declarations[slot].qualified, enclosing);
            return;
        }
        if (is_punct("{")) {  // initializer block
            skip_block();
            return;
        }

        // Header runs up to '(' for methods, or to '=' / ';' for fields.
        const int line = peek().line;
        std::vector<const Token*> head;
        int angle = 0;
        for (;;) {
            if (at_end()) error("truncated member declaration");
            if (angle == 0 && (is_punct("(") || is_punct("=") || is_punct(";") || is_punct("{"))) break;
            if (is_punct("}")) error("unexpected '}' in member declaration");
            if (is_punct("<")) ++angle;
            if (is_punct(">")) --angle;
            if (at_annotation()) {
                skip_annotations();
                continue;
            }
            head.push_back(&take());
        }

        if (is_punct("{")) {  // record compact constructor
            skip_block();
            return;
        }
        if (!is_punct("(")) {
            skip_field_rest();
            return;
        }

        RawMethod method;
        method.is_static = mods.is_static;
        method.is_default = mods.is_default;
        method.is_private = mods.is_private;
        method.line = line;
        if (head.empty() || head.back()->kind != Tok::Ident) error("malformed method header");
        method.name = head.back()->text;
        head.pop_back();

        std::size_t i = 0;
        if (!head.empty() && head.front()->text == "<") {  // method type parameters
            int depth = 0;
            for (; i < head.size(); ++i) {
                if (head[i]->text == "<") ++depth;
                if (head[i]->text == ">" && --depth == 0) {
                    ++i;
                    break;
                }
            }
        }
        for (; i < head.size(); ++i) {
            if (!method.return_text.empty()) method.return_text += ' ';
            method.return_text += head[i]->text;
        }

        method.param_texts = parameters();
        while (is_punct("[")) {  // legacy `int f()[]`
            take();
            expect("]");
            method.return_text += "[]";
        }
        if (is_ident("throws")) {
            take();
            type_list();
        }
        if (is_ident("default")) {  // annotation element default
            take();
            skip_field_rest();
        } else if (is_punct("{")) {
            skip_block();
        } else {
            expect(";");
        }

        // Constructors have no return type.
        if (!method.return_text.empty()) unit.declarations[slot].methods.push_back(std::move(method));
    }

    std::vector<std::string> parameters() {
        const int start = peek().line;
        expect("(");
        std::vector<std::string> params;
        std::string current;
        int depth = 0;
        for (;;) {
            if (at_end()) throw ParseError(path_.string(), start, "unbalanced '('");
            const Token& t = peek();
            if (t.kind == Tok::Punct) {
                if (t.text == "(" || t.text == "<" || t.text == "[") ++depth;
                if (t.text == ")" || t.text == ">" || t.text == "]") {
                    if (depth == 0 && t.text == ")") {
                        take();
                        break;
                    }
                    --depth;
                }
                if (depth == 0 && t.text == ",") {
                    take();
                    params.push_back(std::move(current));
                    current.clear();
                    continue;
                }
            }
            if (!current.empty()) current += ' ';
            current += t.kind == Tok::Literal ? "\"\"" : t.text;
            take();
        }
        if (!current.empty() || !params.empty()) params.push_back(std::move(current));
        return params;
    }

    /// Skips to the terminating ';' of a field, stepping over initializer
    /// groups (array literals, anonymous classes, lambdas).
    void skip_field_rest() {
        for (;;) {
            if (at_end()) error("truncated field declaration");
            if (is_punct(";")) {
                take();
                return;
            }
            if (is_punct("{")) skip_block();
            else if (is_punct("(")) skip_group("(", ")");
            else if (is_punct("}")) error("unexpected '}'");
            else take();
        }
    }

    std::vector<Token> toks_;
    std::filesystem::path path_;
    std::size_t pos_ = 0;
};

}  // namespace

SourceUnit parse_source(std::string_view text, const std::filesystem::path& path) {
    Lexer lexer(text, path.string());
    Parser parser(lexer.run(), path);
    return parser.run();
}

}  // namespace ifacemetrics::java
