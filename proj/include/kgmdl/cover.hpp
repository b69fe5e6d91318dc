#pragma once

#include "kgmdl/code_table.hpp"
#include "kgmdl/match.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace kgmdl {

/** One selected occurrence: a vertex of the rewritten graph. */
struct EmbeddingVertex {
    RowId row = 0;
    Embedding embedding;
};

/** Connects an embedding vertex to a shared data vertex through a pattern port. */
struct PortEdge {
    std::uint32_t embedding_index = 0;
    VertexId pattern_vertex = 0;
    VertexId data_vertex = 0;
};

struct RewrittenGraph {
    std::vector<EmbeddingVertex> embeddings; // in selection order
    std::vector<VertexId> ports;             // sorted data vertex ids
    std::vector<PortEdge> port_edges;
};

struct CoverOptions {
    /** Budget per pattern row's enumeration; singleton rows always complete. */
    std::chrono::steady_clock::duration row_timeout =
        std::chrono::steady_clock::duration::max();
    std::optional<std::chrono::steady_clock::time_point> deadline;
    const std::atomic<bool>* cancel = nullptr;
};

struct RowCoverInfo {
    std::uint64_t usage = 0;
    std::uint64_t labels_attributed = 0; // label units first described by this row
    bool truncated = false;              // row timeout cut enumeration short
};

inline constexpr std::uint32_t no_attribution = std::numeric_limits<std::uint32_t>::max();

struct CoverResult {
    RewrittenGraph rewritten;
    std::vector<RowCoverInfo> per_row; // indexed by RowId
    /** Per data vertex-label index / edge id: the describing embedding. */
    std::vector<std::uint32_t> vertex_label_attribution;
    std::vector<std::uint32_t> edge_attribution;
    bool fully_covered = false;
    bool interrupted = false; // global deadline or cancel fired mid-cover
};

/**
 * Greedy cover: rows in cover_order(); within a row, occurrences stream in
 * matcher order and an occurrence is selected iff all its edges are fresh
 * (for edgeless patterns: iff it describes at least one new vertex label).
 * Updates each row's usage and ports in place.
 */
CoverResult compute_cover(const LabeledMultigraph& data, CodeTable& ct,
                          const CoverOptions& options = {});

struct RewrittenLengthBreakdown {
    Bits embedding_count = 0;    // how many embedding vertices
    Bits data_vertex_bound = 0;  // upper bound for port destination names
    Bits embedding_labels = 0;   // which row each embedding instantiates
    Bits port_counts = 0;        // per embedding, how many ports it exposes
    Bits port_labels = 0;        // which pattern vertex each port edge leaves
    Bits port_destinations = 0;  // which data vertex each port edge reaches

    Bits total() const {
        return embedding_count + data_vertex_bound + embedding_labels + port_counts +
               port_labels + port_destinations;
    }
};

/** L(G^R | CT): encoded length of the rewritten graph. */
RewrittenLengthBreakdown rewritten_length(const RewrittenGraph& rewritten, const CodeTable& ct,
                                          const LabeledMultigraph& data);

struct TotalLength {
    Bits model = 0; // L(CT)
    Bits data = 0;  // L(G^R | CT)
    RewrittenLengthBreakdown breakdown;
    CoverResult cover;

    Bits total() const { return model + data; }
};

/** Covers the data with the table and reports L(CT) + L(G^R | CT). */
TotalLength total_length(const LabeledMultigraph& data, CodeTable& ct, const LabelStats& stats,
                         const CoverOptions& options = {});

} // namespace kgmdl
