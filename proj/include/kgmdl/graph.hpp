#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace kgmdl {

using SymbolId = std::uint32_t;
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class SymbolKind : std::uint8_t {
    Class,        // vertex label from a type triple: carries the class IRI
    LiteralValue, // vertex label from a literal object: datatype [+ value [+ lang]]
    Nil,          // vertex label marking an rdf:nil occurrence
    Relation,     // edge label: carries the predicate IRI
};

/**
 * A label symbol. Symbols are shared between vertex and edge alphabets; the
 * kind plus fields identify the symbol, and the key() string is a stable
 * process-independent identity used for ordering and canonical codes.
 */
struct Symbol {
    SymbolKind kind = SymbolKind::Class;
    std::string iri;                   // Class / Relation
    std::string datatype;              // LiteralValue
    std::optional<std::string> value;  // LiteralValue, absent in datatype-only mode
    std::string lang;                  // LiteralValue with language tag

    std::string key() const;
    std::string display() const;

    static Symbol cls(std::string iri);
    static Symbol relation(std::string iri);
    static Symbol literal(std::string datatype, std::optional<std::string> value,
                          std::string lang = "");
    static Symbol nil();
};

/** Interns symbols and assigns dense ids; lookup is by key(). */
class SymbolTable {
public:
    SymbolId intern(const Symbol& s);
    std::optional<SymbolId> find(const Symbol& s) const;
    const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
    const std::string& key(SymbolId id) const { return keys_.at(id); }
    std::size_t size() const { return symbols_.size(); }

private:
    std::vector<Symbol> symbols_;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, SymbolId> by_key_;
};

struct Edge {
    VertexId src = 0;
    VertexId dst = 0;
    SymbolId label = 0;
    auto operator<=>(const Edge&) const = default;
};

/** A (vertex, vertex-label) pair; the unit in which vertex labels are counted. */
struct VertexLabel {
    VertexId vertex = 0;
    SymbolId label = 0;
    auto operator<=>(const VertexLabel&) const = default;
};

/**
 * Directed multigraph with label sets on vertices and labeled edges, set
 * semantics on both. Build with the add_* calls, then finalize() once;
 * finalize sorts, deduplicates, assigns stable ids and builds the adjacency
 * and label indexes. Accessors other than vertex_count() require finalize().
 */
class LabeledMultigraph {
public:
    VertexId add_vertex();
    void add_vertex(VertexId upto); // ensure vertices 0..upto-1 exist
    void add_vertex_label(VertexId v, SymbolId label);
    void add_edge(VertexId src, VertexId dst, SymbolId label);
    void finalize();

    bool finalized() const { return finalized_; }
    std::size_t vertex_count() const { return n_vertices_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t vertex_label_count() const { return vertex_labels_.size(); }
    std::size_t label_unit_count() const { return vertex_labels_.size() + edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<VertexLabel>& vertex_labels() const { return vertex_labels_; }

    /** Sorted label set of one vertex. */
    std::span<const SymbolId> labels_of(VertexId v) const;
    /** Edge ids leaving / entering v, sorted by (label, other endpoint). */
    std::span<const EdgeId> out_edges(VertexId v) const;
    std::span<const EdgeId> in_edges(VertexId v) const;
    std::size_t degree(VertexId v) const { return out_edges(v).size() + in_edges(v).size(); }

    bool has_edge(VertexId src, VertexId dst, SymbolId label) const;
    std::optional<EdgeId> find_edge(VertexId src, VertexId dst, SymbolId label) const;
    bool has_vertex_label(VertexId v, SymbolId label) const;
    /** Index into vertex_labels() for (v, label); vertex-label pair id. */
    std::optional<std::uint32_t> vertex_label_index(VertexId v, SymbolId label) const;

    /** Vertices carrying a given label, sorted. */
    std::span<const VertexId> vertices_with_label(SymbolId label) const;

private:
    void require_finalized() const;

    std::size_t n_vertices_ = 0;
    bool finalized_ = false;
    std::vector<Edge> edges_;
    std::vector<VertexLabel> vertex_labels_;
    std::vector<std::uint32_t> vlabel_begin_; // per vertex, into vertex_labels_
    std::vector<SymbolId> vlabel_symbols_;    // vertex_labels_[i].label, contiguous
    std::vector<EdgeId> out_ids_;
    std::vector<std::uint32_t> out_begin_;
    std::vector<EdgeId> in_ids_;
    std::vector<std::uint32_t> in_begin_;
    std::unordered_map<SymbolId, std::vector<VertexId>> label_index_;
};

} // namespace kgmdl
