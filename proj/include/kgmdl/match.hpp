#pragma once

#include "kgmdl/pattern.hpp"

#include <atomic>
#include <chrono>
#include <compare>
#include <functional>
#include <optional>
#include <vector>

namespace kgmdl {

/** Injective map from pattern vertices to data vertices, indexed by pattern vertex. */
struct Embedding {
    std::vector<VertexId> map;
    auto operator<=>(const Embedding&) const = default;
};

struct EnumerationBudget {
    std::optional<std::size_t> max_count;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    const std::atomic<bool>* cancel = nullptr;
};

struct EnumerationOutcome {
    std::size_t count = 0;
    /** False when the budget or the visitor stopped enumeration early. */
    bool complete = true;
};

/**
 * Streams every occurrence (label- and direction-preserving injective
 * homomorphism) of the pattern in the data graph, in a deterministic order.
 * The visitor returns false to stop early.
 */
EnumerationOutcome
enumerate_occurrences(const PatternGraph& pattern, const LabeledMultigraph& data,
                      const EnumerationBudget& budget,
                      const std::function<bool(const Embedding&)>& visit);

std::vector<Embedding> all_occurrences(const PatternGraph& pattern,
                                       const LabeledMultigraph& data);

/** Checks one candidate map: size, injectivity, vertex labels, edges. */
bool is_occurrence(const PatternGraph& pattern, const LabeledMultigraph& data,
                   const Embedding& m);

} // namespace kgmdl
