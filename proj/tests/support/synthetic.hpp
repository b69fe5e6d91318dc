#pragma once

// Synthetic knowledge graphs with a known planted structure: many stamped
// copies of a fixed 5-vertex motif buried in random noise triples.

#include "kgmdl/pattern.hpp"
#include "kgmdl/rdf.hpp"

#include <random>
#include <string>
#include <vector>

namespace kgmdl::testing {

/**
 * The motif uses 5 vertices and 6 labels: classes A on v1 and B on v2, and
 * edges v1-p->v2, v1-q->v3, v2-r->v4, v3-s->v5.
 */
inline std::vector<Triple> planted_motif_kg(std::mt19937_64& rng, std::size_t copies,
                                            std::size_t noise_triples) {
    auto iri = [](const std::string& local) { return Term::iri("http://ex/" + local); };
    const Term rdf_type = Term::iri(std::string(rdf_type_iri));
    std::vector<Triple> triples;

    for (std::size_t k = 0; k < copies; ++k) {
        auto v = [&](int i) { return iri("m" + std::to_string(k) + "v" + std::to_string(i)); };
        triples.push_back({v(1), rdf_type, iri("A")});
        triples.push_back({v(2), rdf_type, iri("B")});
        triples.push_back({v(1), iri("p"), v(2)});
        triples.push_back({v(1), iri("q"), v(3)});
        triples.push_back({v(2), iri("r"), v(4)});
        triples.push_back({v(3), iri("s"), v(5)});
    }

    std::vector<Term> pool;
    for (int i = 0; i < 80; ++i)
        pool.push_back(iri("n" + std::to_string(i)));
    std::vector<Term> predicates;
    for (int i = 0; i < 6; ++i)
        predicates.push_back(iri("x" + std::to_string(i)));
    std::vector<Term> classes{iri("C"), iri("D"), iri("E")};

    std::uniform_int_distribution<std::size_t> pick_pool(0, pool.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_pred(0, predicates.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_class(0, classes.size() - 1);
    std::uniform_int_distribution<int> coin(0, 9);
    for (std::size_t i = 0; i < noise_triples; ++i) {
        const Term& s = pool[pick_pool(rng)];
        if (coin(rng) < 2) {
            triples.push_back({s, rdf_type, classes[pick_class(rng)]});
        } else {
            triples.push_back({s, predicates[pick_pred(rng)], pool[pick_pool(rng)]});
        }
    }
    return triples;
}

/** The planted motif as a pattern over `symbols`; interns what it needs. */
inline PatternGraph planted_motif_pattern(SymbolTable& symbols) {
    auto cls = [&](const std::string& local) {
        return symbols.intern(Symbol::cls("http://ex/" + local));
    };
    auto rel = [&](const std::string& local) {
        return symbols.intern(Symbol::relation("http://ex/" + local));
    };
    LabeledMultigraph g;
    g.add_vertex(5);
    g.add_vertex_label(0, cls("A"));
    g.add_vertex_label(1, cls("B"));
    g.add_edge(0, 1, rel("p"));
    g.add_edge(0, 2, rel("q"));
    g.add_edge(1, 3, rel("r"));
    g.add_edge(2, 4, rel("s"));
    return PatternGraph::from_graph(std::move(g), symbols);
}

} // namespace kgmdl::testing
