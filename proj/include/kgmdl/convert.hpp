#pragma once

#include "kgmdl/graph.hpp"
#include "kgmdl/rdf.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace kgmdl {

enum class LiteralMode : std::uint8_t {
    Full,        // literal labels carry datatype + lexical value (+ language)
    DatatypeOnly // literal labels carry the datatype only
};

struct ConversionOptions {
    std::vector<std::string> type_predicates{std::string(rdf_type_iri)};
    LiteralMode literal_mode = LiteralMode::Full;
};

/** Raised by graph_to_kg when a graph cannot be mapped back to triples. */
class InversionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Everything needed to invert a conversion: the symbol table, the original
 * term behind every vertex, and which predicate produced each class label.
 */
struct ConversionMap {
    std::shared_ptr<SymbolTable> symbols;
    std::vector<Term> vertex_terms;
    std::map<std::pair<VertexId, SymbolId>, std::string> class_predicates;
    ConversionOptions options;
};

struct ConvertedGraph {
    LabeledMultigraph graph;
    ConversionMap map;
};

/**
 * Converts a triple set to a labeled directed multigraph. Duplicate triples
 * collapse first. Type-predicate triples with IRI objects become class labels
 * on the subject's vertex; literal objects become fresh per-triple vertices
 * labeled by the literal; every rdf:nil occurrence becomes its own fresh
 * vertex labeled nil; all remaining triples become labeled edges.
 */
ConvertedGraph kg_to_graph(const std::vector<Triple>& triples,
                           const ConversionOptions& options = {});

/** Inverts kg_to_graph exactly. Throws InversionError if provenance is missing. */
std::vector<Triple> graph_to_kg(const LabeledMultigraph& graph, const ConversionMap& map);

} // namespace kgmdl
