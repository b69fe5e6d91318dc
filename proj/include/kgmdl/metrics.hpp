#pragma once

#include "kgmdl/search.hpp"

namespace kgmdl {

/** Summary figures for a finished (or interrupted) mining run. */
struct Metrics {
    std::size_t n_patterns = 0; // non-singleton rows in the final table
    /** Fraction of data labels (vertex labels + edges) described by rows
     *  whose pattern carries at least 2 / at least 10 labels. In [0, 1]. */
    double pct_labels_ge2 = 0;
    double pct_labels_ge10 = 0;
    double compression_ratio = 1.0; // final bits / baseline bits
    double elapsed_s = 0;           // caller-supplied wall clock
    std::vector<IterationRecord> dl_trace;

    Bits baseline_bits = 0;
    Bits final_bits = 0;
    std::size_t data_label_units = 0;      // |V_L| + |E|
    std::size_t described_label_units = 0; // equals the above for a lossless cover
    std::size_t n_embeddings = 0;
    std::size_t n_ports = 0;
    std::size_t n_port_edges = 0;
};

/**
 * Derives the coverage figures by replaying the cover's attribution over the
 * rewritten graph: every mapped pattern edge belongs to its embedding's row,
 * every vertex label to the first embedding that describes it. elapsed_s and
 * dl_trace are left for the caller to fill in.
 */
Metrics compute_metrics(const RewrittenGraph& rewritten, const CodeTable& ct,
                        const LabeledMultigraph& data, Bits baseline_bits, Bits final_bits);

} // namespace kgmdl
