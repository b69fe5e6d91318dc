#include "kgmdl/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace kgmdl {

Term Term::iri(std::string v) {
    Term t;
    t.kind = TermKind::Iri;
    t.value = std::move(v);
    return t;
}

Term Term::blank(std::string label) {
    Term t;
    t.kind = TermKind::BlankNode;
    t.value = std::move(label);
    return t;
}

Term Term::literal(std::string lexical, std::string datatype, std::string lang) {
    Term t;
    t.kind = TermKind::Literal;
    t.value = std::move(lexical);
    t.lang = std::move(lang);
    t.datatype = t.lang.empty() ? std::move(datatype) : std::string(rdf_lang_string_iri);
    return t;
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char advance() {
        char c = text[pos++];
        if (c == '\n')
            ++line;
        return c;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, msg); }

    void skip_trivia() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    std::uint32_t parse_uchar() {
        const char kind = advance(); // 'u' or 'U'
        const int digits = kind == 'u' ? 4 : 8;
        std::uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (eof())
                fail("truncated \\" + std::string(1, kind) + " escape");
            const char c = advance();
            cp <<= 4;
            if (c >= '0' && c <= '9')
                cp |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f')
                cp |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                cp |= static_cast<std::uint32_t>(c - 'A' + 10);
            else
                fail("bad hex digit in \\" + std::string(1, kind) + " escape");
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            fail("escape is not a Unicode scalar value");
        return cp;
    }

    std::string parse_iriref() {
        advance(); // '<'
        std::string out;
        while (true) {
            if (eof())
                fail("unterminated IRI");
            const char c = advance();
            if (c == '>')
                return out;
            const auto u = static_cast<unsigned char>(c);
            if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`')
                fail("character not allowed in IRI");
            if (c == '\\') {
                if (eof() || (peek() != 'u' && peek() != 'U'))
                    fail("only \\u/\\U escapes are allowed in IRIs");
                append_utf8(out, parse_uchar());
            } else {
                out += c;
            }
        }
    }

    std::string parse_blank_label() {
        advance(); // '_'
        if (eof() || peek() != ':')
            fail("expected ':' after '_' in blank node");
        advance();
        std::string out;
        auto is_body = [](unsigned char c) {
            return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80;
        };
        if (eof() || !(is_body(static_cast<unsigned char>(peek())) &&
                       (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                        static_cast<unsigned char>(peek()) >= 0x80)))
            fail("blank node label must start with a letter, digit or '_'");
        out += advance();
        while (!eof() && (is_body(static_cast<unsigned char>(peek())) || peek() == '.'))
            out += advance();
        while (!out.empty() && out.back() == '.') { // trailing dots terminate the triple
            out.pop_back();
            --pos;
        }
        return out;
    }

    Term parse_literal() {
        advance(); // '"'
        std::string lexical;
        while (true) {
            if (eof())
                fail("unterminated literal");
            const char c = advance();
            if (c == '"')
                break;
            if (c == '\n' || c == '\r')
                fail("raw line break inside literal");
            if (c == '\\') {
                if (eof())
                    fail("truncated escape in literal");
                const char e = peek();
                switch (e) {
                case 't': lexical += '\t'; advance(); break;
                case 'b': lexical += '\b'; advance(); break;
                case 'n': lexical += '\n'; advance(); break;
                case 'r': lexical += '\r'; advance(); break;
                case 'f': lexical += '\f'; advance(); break;
                case '"': lexical += '"'; advance(); break;
                case '\'': lexical += '\''; advance(); break;
                case '\\': lexical += '\\'; advance(); break;
                case 'u':
                case 'U': append_utf8(lexical, parse_uchar()); break;
                default: fail(std::string("unknown escape '\\") + e + "' in literal");
                }
            } else {
                lexical += c;
            }
        }
        if (!eof() && peek() == '@') {
            advance();
            std::string lang;
            while (!eof() && std::isalpha(static_cast<unsigned char>(peek())))
                lang += advance();
            if (lang.empty())
                fail("empty language tag");
            while (!eof() && peek() == '-') {
                lang += advance();
                std::string part;
                while (!eof() && std::isalnum(static_cast<unsigned char>(peek())))
                    part += advance();
                if (part.empty())
                    fail("empty language subtag");
                lang += part;
            }
            return Term::literal(std::move(lexical), std::string(rdf_lang_string_iri),
                                 std::move(lang));
        }
        if (!eof() && peek() == '^') {
            advance();
            if (eof() || peek() != '^')
                fail("expected '^^' before datatype IRI");
            advance();
            if (eof() || peek() != '<')
                fail("expected IRI after '^^'");
            return Term::literal(std::move(lexical), parse_iriref());
        }
        return Term::literal(std::move(lexical));
    }

    Term parse_subject() {
        if (eof())
            fail("expected subject");
        if (peek() == '<')
            return Term::iri(parse_iriref());
        if (peek() == '_')
            return Term::blank(parse_blank_label());
        if (peek() == '"')
            fail("literal is not allowed as subject");
        fail("expected IRI or blank node as subject");
    }

    Term parse_predicate() {
        if (eof())
            fail("expected predicate");
        if (peek() == '<')
            return Term::iri(parse_iriref());
        fail("expected IRI as predicate");
    }

    Term parse_object() {
        if (eof())
            fail("expected object");
        if (peek() == '<')
            return Term::iri(parse_iriref());
        if (peek() == '_')
            return Term::blank(parse_blank_label());
        if (peek() == '"')
            return parse_literal();
        fail("expected IRI, blank node or literal as object");
    }
};

void escape_literal_into(std::string& out, const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    for (char c : s) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20 || c == '\x7F') {
                out += "\\u00";
                out += hex[(c >> 4) & 0xF];
                out += hex[c & 0xF];
            } else {
                out += c;
            }
        }
    }
}

void escape_iri_into(std::string& out, const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
            c == '^' || c == '`' || c == '\\' || c == '\x7F') {
            out += "\\u00";
            out += hex[(u >> 4) & 0xF];
            out += hex[u & 0xF];
        } else {
            out += c;
        }
    }
}

} // namespace

std::vector<Triple> parse_ntriples(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);
    Lexer lex{text};
    std::vector<Triple> triples;
    lex.skip_trivia();
    while (!lex.eof()) {
        Triple t;
        t.subject = lex.parse_subject();
        lex.skip_trivia();
        t.predicate = lex.parse_predicate();
        lex.skip_trivia();
        t.object = lex.parse_object();
        lex.skip_trivia();
        if (lex.eof() || lex.peek() != '.')
            lex.fail("expected '.' after object");
        lex.advance();
        triples.push_back(std::move(t));
        lex.skip_trivia();
    }
    return triples;
}

std::vector<Triple> parse_ntriples_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ntriples(buf.str());
}

std::string serialize_term(const Term& t) {
    std::string out;
    switch (t.kind) {
    case TermKind::Iri:
        out += '<';
        escape_iri_into(out, t.value);
        out += '>';
        break;
    case TermKind::BlankNode:
        out += "_:";
        out += t.value;
        break;
    case TermKind::Literal:
        out += '"';
        escape_literal_into(out, t.value);
        out += '"';
        if (!t.lang.empty()) {
            out += '@';
            out += t.lang;
        } else if (t.datatype != xsd_string_iri) {
            out += "^^<";
            escape_iri_into(out, t.datatype);
            out += '>';
        }
        break;
    }
    return out;
}

std::string serialize_triple(const Triple& t) {
    return serialize_term(t.subject) + " " + serialize_term(t.predicate) + " " +
           serialize_term(t.object) + " .";
}

std::string serialize_ntriples(const std::vector<Triple>& triples) {
    std::string out;
    for (const auto& t : triples) {
        out += serialize_triple(t);
        out += '\n';
    }
    return out;
}

std::string canonical_ntriples(std::vector<Triple> triples) {
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    return serialize_ntriples(triples);
}

} // namespace kgmdl
