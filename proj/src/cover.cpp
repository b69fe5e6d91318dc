#include "kgmdl/cover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kgmdl {

CoverResult compute_cover(const LabeledMultigraph& data, CodeTable& ct,
                          const CoverOptions& options) {
    const auto order = ct.cover_order(); // captures previous usages before the reset

    CoverResult result;
    result.per_row.resize(ct.row_count());
    result.vertex_label_attribution.assign(data.vertex_label_count(), no_attribution);
    result.edge_attribution.assign(data.edge_count(), no_attribution);

    auto& embeddings = result.rewritten.embeddings;

    auto interrupted = [&options] {
        if (options.cancel && options.cancel->load(std::memory_order_relaxed))
            return true;
        return options.deadline && std::chrono::steady_clock::now() >= *options.deadline;
    };

    for (RowId rid : order) {
        if (interrupted()) {
            result.interrupted = true;
            break;
        }
        auto& row = ct.row(rid);
        auto& info = result.per_row[rid];
        const auto& pattern_edges = row.pattern.graph().edges();
        const auto& pattern_vlabels = row.pattern.graph().vertex_labels();

        EnumerationBudget budget;
        budget.cancel = options.cancel;
        if (!row.is_singleton() &&
            options.row_timeout != std::chrono::steady_clock::duration::max())
            budget.deadline = std::chrono::steady_clock::now() + options.row_timeout;
        if (options.deadline)
            budget.deadline = budget.deadline ? std::min(*budget.deadline, *options.deadline)
                                              : *options.deadline;

        std::vector<EdgeId> edge_ids(pattern_edges.size());
        const auto outcome = enumerate_occurrences(
            row.pattern, data, budget, [&](const Embedding& emb) {
                bool fresh = true;
                for (std::size_t i = 0; i < pattern_edges.size(); ++i) {
                    const auto& pe = pattern_edges[i];
                    const auto de =
                        data.find_edge(emb.map[pe.src], emb.map[pe.dst], pe.label);
                    if (!de || result.edge_attribution[*de] != no_attribution) {
                        fresh = false;
                        break;
                    }
                    edge_ids[i] = *de;
                }
                if (fresh && pattern_edges.empty()) {
                    fresh = false;
                    for (const auto& vl : pattern_vlabels) {
                        const auto idx = data.vertex_label_index(emb.map[vl.vertex], vl.label);
                        if (idx && result.vertex_label_attribution[*idx] == no_attribution) {
                            fresh = true;
                            break;
                        }
                    }
                }
                if (!fresh)
                    return true;

                const auto emb_index = static_cast<std::uint32_t>(embeddings.size());
                for (EdgeId de : edge_ids) {
                    result.edge_attribution[de] = emb_index;
                    ++info.labels_attributed;
                }
                for (const auto& vl : pattern_vlabels) {
                    const auto idx = data.vertex_label_index(emb.map[vl.vertex], vl.label);
                    if (idx && result.vertex_label_attribution[*idx] == no_attribution) {
                        result.vertex_label_attribution[*idx] = emb_index;
                        ++info.labels_attributed;
                    }
                }
                embeddings.push_back({rid, emb});
                ++info.usage;
                return true;
            });

        if (!outcome.complete) {
            if (interrupted()) {
                result.interrupted = true;
                break;
            }
            info.truncated = true;
        }
    }

    // ports: data vertices appearing in at least two selected embeddings
    std::vector<std::uint32_t> incidence(data.vertex_count(), 0);
    for (const auto& ev : result.rewritten.embeddings)
        for (VertexId dv : ev.embedding.map)
            ++incidence[dv];
    std::vector<char> is_port(data.vertex_count(), 0);
    for (VertexId v = 0; v < data.vertex_count(); ++v) {
        if (incidence[v] >= 2) {
            is_port[v] = 1;
            result.rewritten.ports.push_back(v);
        }
    }

    for (std::uint32_t i = 0; i < result.rewritten.embeddings.size(); ++i) {
        const auto& ev = result.rewritten.embeddings[i];
        for (VertexId pv = 0; pv < ev.embedding.map.size(); ++pv) {
            const VertexId dv = ev.embedding.map[pv];
            if (is_port[dv])
                result.rewritten.port_edges.push_back({i, pv, dv});
        }
    }

    // refresh row usage and row ports
    std::vector<std::set<VertexId>> row_ports(ct.row_count());
    for (const auto& pe : result.rewritten.port_edges)
        row_ports[result.rewritten.embeddings[pe.embedding_index].row].insert(
            pe.pattern_vertex);
    for (RowId rid = 0; rid < ct.row_count(); ++rid) {
        ct.row(rid).usage = result.per_row[rid].usage;
        ct.row(rid).ports.assign(row_ports[rid].begin(), row_ports[rid].end());
    }

    result.fully_covered =
        std::count(result.vertex_label_attribution.begin(),
                   result.vertex_label_attribution.end(), no_attribution) == 0 &&
        std::count(result.edge_attribution.begin(), result.edge_attribution.end(),
                   no_attribution) == 0;
    return result;
}

RewrittenLengthBreakdown rewritten_length(const RewrittenGraph& rewritten, const CodeTable& ct,
                                          const LabeledMultigraph& data) {
    RewrittenLengthBreakdown b;
    b.embedding_count = universal_int(rewritten.embeddings.size());
    b.data_vertex_bound = log_uniform(data.vertex_count() + 1);

    std::vector<std::uint64_t> row_usage(ct.row_count(), 0);
    for (const auto& ev : rewritten.embeddings)
        ++row_usage[ev.row];
    b.embedding_labels = prequential(row_usage, ct.row_count());

    // per-row port universe sizes and per-row port edge tallies
    std::vector<std::map<VertexId, std::uint64_t>> port_label_usage(ct.row_count());
    std::vector<std::uint64_t> destination_usage(rewritten.ports.size(), 0);
    const auto port_index = [&rewritten](VertexId dv) {
        return static_cast<std::size_t>(
            std::lower_bound(rewritten.ports.begin(), rewritten.ports.end(), dv) -
            rewritten.ports.begin());
    };
    for (const auto& pe : rewritten.port_edges) {
        const RowId rid = rewritten.embeddings[pe.embedding_index].row;
        ++port_label_usage[rid][pe.pattern_vertex];
        ++destination_usage[port_index(pe.data_vertex)];
    }

    for (RowId rid = 0; rid < ct.row_count(); ++rid) {
        const auto& row = ct.row(rid);
        b.port_counts +=
            static_cast<double>(row_usage[rid]) * log_uniform(row.ports.size() + 1);
        if (row.ports.empty())
            continue;
        std::vector<std::uint64_t> usages;
        usages.reserve(row.ports.size());
        for (VertexId pv : row.ports) {
            const auto it = port_label_usage[rid].find(pv);
            usages.push_back(it == port_label_usage[rid].end() ? 0 : it->second);
        }
        b.port_labels += prequential(usages, row.ports.size());
    }

    if (!rewritten.ports.empty())
        b.port_destinations = prequential(destination_usage, rewritten.ports.size());
    return b;
}

TotalLength total_length(const LabeledMultigraph& data, CodeTable& ct, const LabelStats& stats,
                         const CoverOptions& options) {
    TotalLength out;
    out.cover = compute_cover(data, ct, options);
    out.model = code_table_length(ct, stats);
    out.breakdown = rewritten_length(out.cover.rewritten, ct, data);
    out.data = out.breakdown.total();
    return out;
}

} // namespace kgmdl
