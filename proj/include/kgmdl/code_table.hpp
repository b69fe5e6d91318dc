#pragma once

#include "kgmdl/mdl.hpp"
#include "kgmdl/pattern.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kgmdl {

class CodeTableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Pooled per-symbol occurrence counts over vertex labels and edges of the data. */
struct LabelStats {
    std::vector<std::uint64_t> counts; // indexed by SymbolId
    std::uint64_t total = 0;           // |V_L| + |E_L|
    std::size_t alphabet = 0;          // symbols with nonzero count

    std::uint64_t count(SymbolId s) const { return s < counts.size() ? counts[s] : 0; }
};

LabelStats compute_label_stats(const LabeledMultigraph& data);

/** Optimal prefix code length of one label under the data distribution. */
Bits label_code_length(const LabelStats& stats, SymbolId label);

using RowId = std::uint32_t;

enum class RowKind : std::uint8_t { Pattern, VertexSingleton, EdgeSingleton, LoopSingleton };

struct CodeTableRow {
    PatternGraph pattern;
    RowKind kind = RowKind::Pattern;
    SymbolId singleton_symbol = 0;  // meaningful for singleton rows
    std::uint64_t usage = 0;        // embeddings selected by the latest cover
    std::vector<VertexId> ports;    // pattern vertices; recomputed by each cover

    bool is_singleton() const { return kind != RowKind::Pattern; }
};

/**
 * The model: a set of pattern rows over a fixed singleton backbone. Singleton
 * rows (one per vertex symbol, edge symbol, and self-looping edge symbol of
 * the data) are created by initial() and are permanent; pattern rows come and
 * go as the search accepts candidates and prunes unused rows.
 */
class CodeTable {
public:
    /** CT0: singleton rows only. Requires a data graph with at least one label. */
    static CodeTable initial(const LabeledMultigraph& data, const SymbolTable& symbols);

    /** Adds a pattern row; rejects rows isomorphic to an existing one. */
    RowId add_pattern(PatternGraph pattern);
    bool contains(const std::string& canonical) const;

    const std::vector<CodeTableRow>& rows() const { return rows_; }
    CodeTableRow& row(RowId id) { return rows_.at(id); }
    const CodeTableRow& row(RowId id) const { return rows_.at(id); }
    std::size_t row_count() const { return rows_.size(); }
    std::size_t pattern_row_count() const;

    /**
     * Rows in cover precedence: pattern rows by descending label count, then
     * descending usage, then ascending canonical code; then vertex, edge and
     * loop singletons, each alphabetical by symbol key.
     */
    std::vector<RowId> cover_order() const;

    /** Copy without the usage-0 pattern rows; singletons always stay. */
    CodeTable without_unused_patterns() const;

    const SymbolTable& symbols() const { return *symbols_; }

private:
    const SymbolTable* symbols_ = nullptr;
    std::vector<CodeTableRow> rows_;
    std::vector<std::string> canon_; // per row, for duplicate detection
};

/** Bits to encode one pattern's structure against the data label distribution. */
Bits pattern_structure_length(const PatternGraph& pattern, const LabelStats& stats);

/** Bits to encode a row's port set: the count, then the choice. */
Bits ports_length(std::size_t n_vertices, std::size_t n_ports);

/** L(CT): structure plus port set of every row, singletons included. */
Bits code_table_length(const CodeTable& ct, const LabelStats& stats);

} // namespace kgmdl
