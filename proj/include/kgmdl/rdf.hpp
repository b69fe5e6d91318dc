#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgmdl {

inline constexpr std::string_view xsd_string_iri = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view rdf_lang_string_iri =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view rdf_type_iri =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view rdf_nil_iri =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";

/** N-Triples syntax error, annotated with the 1-based input line. */
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class TermKind : std::uint8_t { Iri, BlankNode, Literal };

/**
 * An RDF term. For literals, value holds the lexical form; a nonempty lang
 * implies datatype rdf:langString, and a plain literal gets xsd:string.
 */
struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;
    std::string datatype;
    std::string lang;

    auto operator<=>(const Term&) const = default;

    static Term iri(std::string v);
    static Term blank(std::string label);
    static Term literal(std::string lexical, std::string datatype = std::string(xsd_string_iri),
                        std::string lang = "");
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;
    auto operator<=>(const Triple&) const = default;
};

/** Parses an N-Triples document. Throws ParseError on malformed input. */
std::vector<Triple> parse_ntriples(std::string_view text);
std::vector<Triple> parse_ntriples_file(const std::string& path);

/** Canonical serialization: xsd:string omitted, minimal escapes, one triple per line. */
std::string serialize_term(const Term& t);
std::string serialize_triple(const Triple& t);
std::string serialize_ntriples(const std::vector<Triple>& triples);

/** Sorted, deduplicated canonical document; line set is independent of input order. */
std::string canonical_ntriples(std::vector<Triple> triples);

} // namespace kgmdl
