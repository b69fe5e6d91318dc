#include <doctest.h>

#include "kgmdl/rdf.hpp"

using namespace kgmdl;

TEST_CASE("parses IRIs, blank nodes and literals") {
    const auto triples = parse_ntriples(
        "<http://ex/s> <http://ex/p> <http://ex/o> . # trailing comment\n"
        "# whole-line comment\n"
        "_:b1 <http://ex/p> \"plain\" .\n"
        "<http://ex/s> <http://ex/q> \"42\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
        "<http://ex/s> <http://ex/r> \"bonjour\"@fr-CA .\n");
    REQUIRE(triples.size() == 4);
    CHECK(triples[0].subject == Term::iri("http://ex/s"));
    CHECK(triples[0].object.kind == TermKind::Iri);
    CHECK(triples[1].subject == Term::blank("b1"));
    CHECK(triples[1].object == Term::literal("plain"));
    CHECK(triples[1].object.datatype == xsd_string_iri);
    CHECK(triples[2].object.value == "42");
    CHECK(triples[2].object.datatype == "http://www.w3.org/2001/XMLSchema#integer");
    CHECK(triples[3].object.lang == "fr-CA");
    CHECK(triples[3].object.datatype == rdf_lang_string_iri);
}

TEST_CASE("decodes ECHAR and UCHAR escapes") {
    const auto triples = parse_ntriples(
        "<http://ex/s> <http://ex/p> \"a\\tb\\n\\\"q\\\"\\\\\\u0041\\U0001F600\" .\n");
    REQUIRE(triples.size() == 1);
    CHECK(triples[0].object.value == "a\tb\n\"q\"\\A\xF0\x9F\x98\x80");
}

TEST_CASE("blank node label keeps inner dots but not the terminator") {
    const auto triples = parse_ntriples("_:a.b <http://ex/p> _:c.\n");
    REQUIRE(triples.size() == 1);
    CHECK(triples[0].subject.value == "a.b");
    CHECK(triples[0].object.value == "c");
}

TEST_CASE("reports parse errors with line numbers") {
    auto line_of = [](const char* doc) {
        try {
            parse_ntriples(doc);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("<http://ex/s> <http://ex/p> <http://ex/o>\n") == 2);
    CHECK(line_of("<http://ex/a> <http://ex/p> <http://ex/b> .\n\"lit\" <http://ex/p> "
                  "<http://ex/o> .\n") == 2);
    CHECK(line_of("<http://ex/s> <http://ex/p> \"bad\\q\" .\n") == 1);
    CHECK(line_of("<http://ex/s> <http://ex/p .\n") == 1);
    CHECK(line_of("<http://ex/s> <http://ex/p> \"x\"^^<http://ex/t> extra .\n") == 1);
}

TEST_CASE("canonical serialization normalizes escapes and drops xsd:string") {
    const char* doc = "<http://ex/s> <http://ex/p> \"A\\u0042\"^^"
                      "<http://www.w3.org/2001/XMLSchema#string> .\n";
    const auto triples = parse_ntriples(doc);
    CHECK(serialize_ntriples(triples) == "<http://ex/s> <http://ex/p> \"AB\" .\n");
    CHECK(serialize_term(Term::literal("x\ny\t\"z\"\\", "http://ex/dt")) ==
          "\"x\\ny\\t\\\"z\\\"\\\\\"^^<http://ex/dt>");
    CHECK(serialize_term(Term::literal("hi", "", "en")) == "\"hi\"@en");
}

TEST_CASE("serialization round-trips") {
    const char* doc =
        "<http://ex/s> <http://ex/p> \"a\\tb \\u00e9 \\U0001F600\"@en .\n"
        "_:x <http://ex/p> \"3.14\"^^<http://www.w3.org/2001/XMLSchema#decimal> .\n"
        "<http://ex/s> <http://ex/loop> <http://ex/s> .\n";
    const auto first = parse_ntriples(doc);
    const auto second = parse_ntriples(serialize_ntriples(first));
    CHECK(first == second);
}

TEST_CASE("canonical document sorts and deduplicates") {
    const auto triples = parse_ntriples("<http://ex/b> <http://ex/p> <http://ex/o> .\n"
                                        "<http://ex/a> <http://ex/p> <http://ex/o> .\n"
                                        "<http://ex/b> <http://ex/p> <http://ex/o> .\n");
    CHECK(canonical_ntriples(triples) == "<http://ex/a> <http://ex/p> <http://ex/o> .\n"
                                         "<http://ex/b> <http://ex/p> <http://ex/o> .\n");
}

TEST_CASE("empty and comment-only documents parse to nothing") {
    CHECK(parse_ntriples("").empty());
    CHECK(parse_ntriples("# nothing here\n\n  \n").empty());
}
