#include "kgmdl/code_table.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kgmdl {

LabelStats compute_label_stats(const LabeledMultigraph& data) {
    LabelStats stats;
    auto bump = [&stats](SymbolId s) {
        if (s >= stats.counts.size())
            stats.counts.resize(s + 1, 0);
        ++stats.counts[s];
        ++stats.total;
    };
    for (const auto& vl : data.vertex_labels())
        bump(vl.label);
    for (const auto& e : data.edges())
        bump(e.label);
    for (auto c : stats.counts)
        stats.alphabet += c > 0;
    return stats;
}

Bits label_code_length(const LabelStats& stats, SymbolId label) {
    if (stats.count(label) == 0)
        throw CodeTableError("label does not occur in the data");
    return prefix_code(stats.count(label), stats.total);
}

CodeTable CodeTable::initial(const LabeledMultigraph& data, const SymbolTable& symbols) {
    if (data.label_unit_count() == 0)
        throw CodeTableError("data graph has no labels to describe");

    std::set<SymbolId> vertex_symbols;
    std::set<SymbolId> edge_symbols;
    std::set<SymbolId> loop_symbols;
    for (const auto& vl : data.vertex_labels())
        vertex_symbols.insert(vl.label);
    for (const auto& e : data.edges())
        (e.src == e.dst ? loop_symbols : edge_symbols).insert(e.label);

    // alphabetical by symbol key within each group
    auto by_key = [&symbols](const std::set<SymbolId>& ids) {
        std::vector<SymbolId> sorted(ids.begin(), ids.end());
        std::sort(sorted.begin(), sorted.end(), [&symbols](SymbolId a, SymbolId b) {
            return symbols.key(a) < symbols.key(b);
        });
        return sorted;
    };

    CodeTable ct;
    ct.symbols_ = &symbols;
    auto add_singleton = [&ct](PatternGraph p, RowKind kind, SymbolId symbol) {
        CodeTableRow row{std::move(p), kind, symbol, 0, {}};
        ct.canon_.push_back(row.pattern.canonical_code());
        ct.rows_.push_back(std::move(row));
    };
    for (SymbolId s : by_key(vertex_symbols))
        add_singleton(PatternGraph::vertex_singleton(s, symbols), RowKind::VertexSingleton, s);
    for (SymbolId s : by_key(edge_symbols))
        add_singleton(PatternGraph::edge_singleton(s, symbols), RowKind::EdgeSingleton, s);
    for (SymbolId s : by_key(loop_symbols))
        add_singleton(PatternGraph::loop_singleton(s, symbols), RowKind::LoopSingleton, s);
    return ct;
}

RowId CodeTable::add_pattern(PatternGraph pattern) {
    if (contains(pattern.canonical_code()))
        throw CodeTableError("pattern is isomorphic to an existing row");
    const auto id = static_cast<RowId>(rows_.size());
    canon_.push_back(pattern.canonical_code());
    rows_.push_back({std::move(pattern), RowKind::Pattern, 0, 0, {}});
    return id;
}

bool CodeTable::contains(const std::string& canonical) const {
    return std::find(canon_.begin(), canon_.end(), canonical) != canon_.end();
}

std::size_t CodeTable::pattern_row_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_)
        n += !r.is_singleton();
    return n;
}

std::vector<RowId> CodeTable::cover_order() const {
    std::vector<RowId> order(rows_.size());
    for (RowId i = 0; i < rows_.size(); ++i)
        order[i] = i;
    auto group = [this](RowId id) {
        switch (rows_[id].kind) {
        case RowKind::Pattern: return 0;
        case RowKind::VertexSingleton: return 1;
        case RowKind::EdgeSingleton: return 2;
        case RowKind::LoopSingleton: return 3;
        }
        return 4;
    };
    std::sort(order.begin(), order.end(), [&](RowId a, RowId b) {
        const int ga = group(a);
        const int gb = group(b);
        if (ga != gb)
            return ga < gb;
        const auto& ra = rows_[a];
        const auto& rb = rows_[b];
        if (ga == 0) {
            if (ra.pattern.label_count() != rb.pattern.label_count())
                return ra.pattern.label_count() > rb.pattern.label_count();
            if (ra.usage != rb.usage)
                return ra.usage > rb.usage;
            return canon_[a] < canon_[b];
        }
        return symbols_->key(ra.singleton_symbol) < symbols_->key(rb.singleton_symbol);
    });
    return order;
}

CodeTable CodeTable::without_unused_patterns() const {
    CodeTable out;
    out.symbols_ = symbols_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!rows_[i].is_singleton() && rows_[i].usage == 0)
            continue;
        out.rows_.push_back(rows_[i]);
        out.canon_.push_back(canon_[i]);
    }
    return out;
}

Bits pattern_structure_length(const PatternGraph& pattern, const LabelStats& stats) {
    const auto& g = pattern.graph();
    const std::uint64_t n = g.vertex_count();

    std::map<SymbolId, std::uint64_t> vertex_occ;
    for (const auto& vl : g.vertex_labels())
        ++vertex_occ[vl.label];
    std::map<SymbolId, std::uint64_t> edge_occ;
    for (const auto& e : g.edges())
        ++edge_occ[e.label];

    Bits bits = universal_int(n) + log_uniform(stats.alphabet);
    for (const auto& [label, occ] : vertex_occ)
        bits += label_code_length(stats, label) + universal_int(occ) + log_binomial(n, occ);
    for (const auto& [label, occ] : edge_occ)
        bits += label_code_length(stats, label) + universal_int(occ) + log_binomial(n * n, occ);
    return bits;
}

Bits ports_length(std::size_t n_vertices, std::size_t n_ports) {
    return log_uniform(n_vertices + 1) + log_binomial(n_vertices, n_ports);
}

Bits code_table_length(const CodeTable& ct, const LabelStats& stats) {
    Bits bits = 0;
    for (const auto& row : ct.rows()) {
        bits += pattern_structure_length(row.pattern, stats);
        bits += ports_length(row.pattern.vertex_count(), row.ports.size());
    }
    return bits;
}

} // namespace kgmdl
