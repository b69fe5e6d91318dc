#pragma once

#include "kgmdl/graph.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kgmdl {

class PatternError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A connected labeled graph with at least one label unit, used as a code
 * table pattern. Immutable; construction computes and caches the canonical
 * code, a process-independent string that is equal exactly for isomorphic
 * patterns (same vertex labels, edge labels and directions).
 */
class PatternGraph {
public:
    /** Validates connectivity and non-emptiness; finalizes g if needed. */
    static PatternGraph from_graph(LabeledMultigraph g, const SymbolTable& symbols);

    static PatternGraph vertex_singleton(SymbolId label, const SymbolTable& symbols);
    static PatternGraph edge_singleton(SymbolId label, const SymbolTable& symbols);
    /** Single vertex with a self-loop; covers data self-loops. */
    static PatternGraph loop_singleton(SymbolId label, const SymbolTable& symbols);

    const LabeledMultigraph& graph() const { return g_; }
    const std::string& canonical_code() const { return canon_; }
    std::size_t vertex_count() const { return g_.vertex_count(); }
    std::size_t label_count() const { return g_.label_unit_count(); }

private:
    LabeledMultigraph g_;
    std::string canon_;
};

/** Canonical code of a finalized graph; exposed for tests. */
std::string canonical_code(const LabeledMultigraph& g, const SymbolTable& symbols);

/**
 * Merges two patterns into one by identifying vertices: each (a, b) pair in
 * the correspondence maps vertex b of `right` onto vertex a of `left`.
 * The correspondence must be non-empty and one-to-one on both sides.
 */
PatternGraph merge_patterns(const PatternGraph& left, const PatternGraph& right,
                            const std::vector<std::pair<VertexId, VertexId>>& correspondence,
                            const SymbolTable& symbols);

} // namespace kgmdl
