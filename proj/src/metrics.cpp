#include "kgmdl/metrics.hpp"

#include <vector>

namespace kgmdl {

Metrics compute_metrics(const RewrittenGraph& rewritten, const CodeTable& ct,
                        const LabeledMultigraph& data, Bits baseline_bits, Bits final_bits) {
    Metrics m;
    m.baseline_bits = baseline_bits;
    m.final_bits = final_bits;
    m.compression_ratio = baseline_bits > 0 ? final_bits / baseline_bits : 1.0;
    m.n_patterns = ct.pattern_row_count();
    m.data_label_units = data.label_unit_count();
    m.n_embeddings = rewritten.embeddings.size();
    m.n_ports = rewritten.ports.size();
    m.n_port_edges = rewritten.port_edges.size();

    // Replay attribution in embedding selection order: edges are exclusive to
    // their embedding, vertex labels go to the first embedding carrying them.
    std::vector<bool> edge_done(data.edges().size(), false);
    std::vector<bool> vlabel_done(data.vertex_label_count(), false);
    std::vector<std::size_t> described_by_row(ct.row_count(), 0);
    for (const auto& emb : rewritten.embeddings) {
        const auto& pattern = ct.row(emb.row).pattern.graph();
        auto& described = described_by_row[emb.row];
        for (const auto& pe : pattern.edges()) {
            auto eid = data.find_edge(emb.embedding.map[pe.src], emb.embedding.map[pe.dst],
                                      pe.label);
            if (eid && !edge_done[*eid]) {
                edge_done[*eid] = true;
                ++described;
            }
        }
        for (const auto& pl : pattern.vertex_labels()) {
            auto idx = data.vertex_label_index(emb.embedding.map[pl.vertex], pl.label);
            if (idx && !vlabel_done[*idx]) {
                vlabel_done[*idx] = true;
                ++described;
            }
        }
    }

    std::size_t ge2 = 0, ge10 = 0;
    for (RowId r = 0; r < ct.row_count(); ++r) {
        m.described_label_units += described_by_row[r];
        std::size_t labels = ct.row(r).pattern.label_count();
        if (labels >= 2)
            ge2 += described_by_row[r];
        if (labels >= 10)
            ge10 += described_by_row[r];
    }
    if (m.data_label_units > 0) {
        m.pct_labels_ge2 = static_cast<double>(ge2) / m.data_label_units;
        m.pct_labels_ge10 = static_cast<double>(ge10) / m.data_label_units;
    }
    return m;
}

} // namespace kgmdl
