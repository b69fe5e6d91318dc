#include "kgmdl/convert.hpp"

#include <algorithm>
#include <set>

namespace kgmdl {

namespace {

bool is_nil(const Term& t) {
    return t.kind == TermKind::Iri && t.value == rdf_nil_iri;
}

Symbol literal_symbol(const Term& lit, LiteralMode mode) {
    if (mode == LiteralMode::Full)
        return Symbol::literal(lit.datatype, lit.value, lit.lang);
    return Symbol::literal(lit.datatype, std::nullopt);
}

} // namespace

ConvertedGraph kg_to_graph(const std::vector<Triple>& triples, const ConversionOptions& options) {
    if (options.type_predicates.empty())
        throw std::invalid_argument("kg_to_graph: need at least one type predicate");

    ConvertedGraph result;
    result.map.symbols = std::make_shared<SymbolTable>();
    result.map.options = options;
    auto& symbols = *result.map.symbols;
    auto& graph = result.graph;
    auto& terms = result.map.vertex_terms;

    auto is_type_predicate = [&](const Term& p) {
        return std::find(options.type_predicates.begin(), options.type_predicates.end(),
                         p.value) != options.type_predicates.end();
    };

    std::map<Term, VertexId> shared_vertices; // IRIs and blank nodes, except rdf:nil
    auto shared_vertex = [&](const Term& t) {
        if (auto it = shared_vertices.find(t); it != shared_vertices.end())
            return it->second;
        const VertexId v = graph.add_vertex();
        shared_vertices.emplace(t, v);
        terms.push_back(t);
        return v;
    };
    auto fresh_nil_vertex = [&] {
        const VertexId v = graph.add_vertex();
        graph.add_vertex_label(v, symbols.intern(Symbol::nil()));
        terms.push_back(Term::iri(std::string(rdf_nil_iri)));
        return v;
    };
    auto subject_vertex = [&](const Term& t) {
        return is_nil(t) ? fresh_nil_vertex() : shared_vertex(t);
    };

    std::set<Triple> seen;
    for (const auto& triple : triples) {
        if (!seen.insert(triple).second)
            continue;

        if (is_type_predicate(triple.predicate) && triple.object.kind == TermKind::Iri) {
            const VertexId v = subject_vertex(triple.subject);
            const SymbolId label = symbols.intern(Symbol::cls(triple.object.value));
            graph.add_vertex_label(v, label);
            result.map.class_predicates.emplace(std::make_pair(v, label),
                                                triple.predicate.value);
            continue;
        }

        const VertexId src = subject_vertex(triple.subject);
        VertexId dst;
        if (triple.object.kind == TermKind::Literal) {
            dst = graph.add_vertex();
            graph.add_vertex_label(
                dst, symbols.intern(literal_symbol(triple.object, options.literal_mode)));
            terms.push_back(triple.object);
        } else if (is_nil(triple.object)) {
            dst = fresh_nil_vertex();
        } else {
            dst = shared_vertex(triple.object);
        }
        graph.add_edge(src, dst, symbols.intern(Symbol::relation(triple.predicate.value)));
    }

    graph.finalize();
    return result;
}

std::vector<Triple> graph_to_kg(const LabeledMultigraph& graph, const ConversionMap& map) {
    if (!map.symbols)
        throw InversionError("conversion map has no symbol table");
    if (map.vertex_terms.size() < graph.vertex_count())
        throw InversionError("conversion map lacks terms for some vertices");
    const auto& symbols = *map.symbols;

    std::vector<Triple> out;
    for (const auto& vl : graph.vertex_labels()) {
        const Symbol& sym = symbols.symbol(vl.label);
        switch (sym.kind) {
        case SymbolKind::Class: {
            std::string predicate;
            if (auto it = map.class_predicates.find({vl.vertex, vl.label});
                it != map.class_predicates.end())
                predicate = it->second;
            else if (map.options.type_predicates.size() == 1)
                predicate = map.options.type_predicates.front();
            else
                throw InversionError("class label " + sym.iri +
                                     " has no recorded type predicate");
            out.push_back(
                {map.vertex_terms[vl.vertex], Term::iri(predicate), Term::iri(sym.iri)});
            break;
        }
        case SymbolKind::LiteralValue:
        case SymbolKind::Nil:
            break; // reconstructed through the incident edge
        case SymbolKind::Relation:
            throw InversionError("relation symbol used as a vertex label");
        }
    }

    for (const auto& e : graph.edges()) {
        const Symbol& sym = symbols.symbol(e.label);
        if (sym.kind != SymbolKind::Relation)
            throw InversionError("non-relation symbol used as an edge label");
        const Term& subject = map.vertex_terms[e.src];
        if (subject.kind == TermKind::Literal)
            throw InversionError("literal vertex used as edge source");
        out.push_back({subject, Term::iri(sym.iri), map.vertex_terms[e.dst]});
    }
    return out;
}

} // namespace kgmdl
