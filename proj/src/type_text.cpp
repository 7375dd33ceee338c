// Normalization of Java type expressions and method headers.

#include "ifacemetrics/code_model.hpp"
#include "ifacemetrics/errors.hpp"

#include <cctype>
#include <optional>

namespace ifacemetrics {
namespace {

enum class Tok { Ident, Punct, Ellipsis, Literal, End };

struct Token {
    Tok kind;
    std::string text;
};

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return is_ident_start(c) || std::isdigit(c);
}

[[noreturn]] void fail(std::string_view text, const std::string& why) {
    throw NormalizationError("cannot normalize '" + std::string(text) + "': " + why);
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (is_ident_start(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && is_ident_part(static_cast<unsigned char>(text[j]))) ++j;
            std::string word(text.substr(i, j - i));
            i = j;
            // Normalized wildcards read `?extendsT` / `?superT`; split the
            // bound keyword back off so normalization is idempotent.
            if (!out.empty() && out.back().kind == Tok::Punct && out.back().text == "?") {
                for (std::string_view kw : {"extends", "super"}) {
                    if (word.size() > kw.size() && word.compare(0, kw.size(), kw) == 0) {
                        out.push_back({Tok::Ident, std::string(kw)});
                        word.erase(0, kw.size());
                        break;
                    }
                }
            }
            out.push_back({Tok::Ident, std::move(word)});
        } else if (text.substr(i, 3) == "...") {
            out.push_back({Tok::Ellipsis, "..."});
            i += 3;
        } else if (c == '"' || c == '\'') {
            // Only legal inside annotation arguments; kept opaque.
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != static_cast<char>(c)) j += (text[j] == '\\') ? 2 : 1;
            if (j >= text.size()) fail(text, "unterminated literal");
            out.push_back({Tok::Literal, std::string(text.substr(i, j + 1 - i))});
            i = j + 1;
        } else if (std::isdigit(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
                                       text[j] == '_'))
                ++j;
            out.push_back({Tok::Literal, std::string(text.substr(i, j - i))});
            i = j;
        } else if (std::ispunct(c)) {
            out.push_back({Tok::Punct, std::string(1, static_cast<char>(c))});
            ++i;
        } else {
            fail(text, "unexpected character");
        }
    }
    out.push_back({Tok::End, {}});
    return out;
}

bool is_modifier(const std::string& word) {
    return word == "final";
}

class TypeParser {
public:
    explicit TypeParser(std::string_view text) : text_(text), toks_(tokenize(text)) {}

    /// type := annotations segment ('.' annotations segment)* dims
    std::string parse_type() {
        skip_annotations();
        if (!at(Tok::Ident)) fail(text_, "expected a type name");
        std::string last;
        for (;;) {
            last = take().text;
            if (is_punct("<")) last += parse_type_args();
            if (is_punct(".") && peek(1).kind == Tok::Ident) {
                take();
                skip_annotations();
                continue;
            }
            break;
        }
        return last + parse_dims();
    }

    /// Array suffixes, including annotated dims. Varargs only when allowed.
    std::string parse_dims(bool allow_varargs = true) {
        std::string dims;
        for (;;) {
            const std::size_t save = pos_;
            skip_annotations();
            if (is_punct("[")) {
                take();
                expect("]");
                dims += "[]";
            } else if (allow_varargs && at(Tok::Ellipsis)) {
                take();
                dims += "[]";
                varargs_ = true;
                break;
            } else {
                pos_ = save;
                break;
            }
        }
        return dims;
    }

    void skip_modifiers_and_annotations() {
        for (;;) {
            skip_annotations();
            if (at(Tok::Ident) && is_modifier(peek().text)) {
                take();
                continue;
            }
            break;
        }
    }

    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_end() const { return at(Tok::End); }
    bool varargs() const { return varargs_; }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    std::string_view text() const { return text_; }

private:
    bool is_punct(std::string_view p, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
    }

    void expect(std::string_view p) {
        if (!is_punct(p)) fail(text_, "expected '" + std::string(p) + "'");
        take();
    }

    void skip_annotations() {
        while (is_punct("@") && peek(1).kind == Tok::Ident && peek(1).text != "interface") {
            take();
            take();
            while (is_punct(".") && peek(1).kind == Tok::Ident) {
                take();
                take();
            }
            if (is_punct("(")) {
                int depth = 0;
                do {
                    if (at_end()) fail(text_, "unbalanced annotation arguments");
                    if (is_punct("(")) ++depth;
                    if (is_punct(")")) --depth;
                    take();
                } while (depth > 0);
            }
        }
    }

    std::string parse_type_args() {
        expect("<");
        std::string out = "<";
        if (is_punct(">")) {
            take();
            return out + ">";
        }
        for (;;) {
            out += parse_type_arg();
            if (is_punct(",")) {
                take();
                out += ",";
                continue;
            }
            expect(">");
            return out + ">";
        }
    }

    std::string parse_type_arg() {
        skip_annotations();
        if (is_punct("?")) {
            take();
            if (at(Tok::Ident) && (peek().text == "extends" || peek().text == "super")) {
                std::string bound = "?" + take().text;
                return bound + parse_type();
            }
            return "?";
        }
        return parse_type();
    }

    std::string_view text_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool varargs_ = false;
};

bool valid_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(static_cast<unsigned char>(s.front()))) return false;
    for (char c : s)
        if (!is_ident_part(static_cast<unsigned char>(c))) return false;
    return true;
}

/// Parameter text -> normalized type, or nullopt for a receiver parameter.
std::optional<std::string> normalize_param(std::string_view text) {
    TypeParser p(text);
    p.skip_modifiers_and_annotations();
    std::string type = p.parse_type();
    if (p.at(Tok::Ident)) {
        const std::string name = p.take().text;
        const bool qualified_this = p.at(Tok::Punct) && p.peek().text == "." &&
                                    p.peek(1).kind == Tok::Ident && p.peek(1).text == "this";
        if (name == "this" || qualified_this) {
            // Receiver parameter, not part of the signature.
            return std::nullopt;
        }
        // C-style `int x[]`
        type += p.parse_dims(false);
    }
    if (!p.at_end()) fail(text, "trailing tokens");
    return type;
}

}  // namespace

bool is_valid_identifier(std::string_view s) { return valid_identifier(s); }

std::string normalize_type(std::string_view text) {
    TypeParser p(text);
    p.skip_modifiers_and_annotations();
    std::string type = p.parse_type();
    if (!p.at_end()) fail(text, "trailing tokens");
    return type;
}

MethodSignature normalize_signature(std::string_view raw_name, std::string_view raw_return,
                                    const std::vector<std::string>& raw_params) {
    if (!valid_identifier(raw_name)) fail(raw_name, "not a method name");
    MethodSignature sig;
    sig.name = std::string(raw_name);
    sig.return_type = normalize_type(raw_return);
    sig.param_types.reserve(raw_params.size());
    for (const auto& param : raw_params) {
        if (auto t = normalize_param(param)) sig.param_types.push_back(std::move(*t));
    }
    return sig;
}

std::string signature_key(const MethodSignature& sig) {
    std::string key = sig.return_type;
    key += ' ';
    key += sig.name;
    key += '(';
    for (std::size_t i = 0; i < sig.param_types.size(); ++i) {
        if (i) key += ',';
        key += sig.param_types[i];
    }
    key += ')';
    return key;
}

}  // namespace ifacemetrics
