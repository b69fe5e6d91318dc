#pragma once

#include "kgmdl/convert.hpp"
#include "kgmdl/pattern.hpp"

namespace kgmdl {

/** Raised when a pattern has no SPARQL rendering. */
class ExportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SparqlExportOptions {
    /**
     * Emit FILTER(?xi != ?xj) for variable pairs whose vertices carry the same
     * label set, approximating isomorphism semantics on top of SPARQL's
     * homomorphic matching.
     */
    bool strict_isomorphism_filter = true;
};

/**
 * Renders a pattern as a SELECT query. Query variables are ?x<i+1> for pattern
 * vertex i; the SELECT clause lists the ports, or every vertex when no ports
 * are given. Class labels become `?xi a <IRI>` (or the converting type
 * predicate), edges become `?xi <pred> ?xj`, and a vertex holding only a
 * valued literal label appears as the typed literal itself where possible,
 * otherwise as a variable constrained by a FILTER.
 */
std::string pattern_to_sparql(const PatternGraph& pattern, const std::vector<VertexId>& ports,
                              const ConversionMap& map, const SparqlExportOptions& options = {});

} // namespace kgmdl
