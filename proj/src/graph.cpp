#include "kgmdl/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace kgmdl {

namespace {
constexpr char sep = '\x1F';
}

std::string Symbol::key() const {
    switch (kind) {
    case SymbolKind::Class: return std::string("c") + sep + iri;
    case SymbolKind::Relation: return std::string("r") + sep + iri;
    case SymbolKind::Nil: return "n";
    case SymbolKind::LiteralValue: {
        std::string k = std::string("l") + sep + datatype + sep;
        k += value ? "v" : "d";
        if (value)
            k += sep + *value;
        if (!lang.empty())
            k += sep + lang;
        return k;
    }
    }
    throw std::logic_error("Symbol::key: bad kind");
}

std::string Symbol::display() const {
    switch (kind) {
    case SymbolKind::Class: return iri;
    case SymbolKind::Relation: return iri;
    case SymbolKind::Nil: return "rdf:nil";
    case SymbolKind::LiteralValue: {
        std::string d = value ? '"' + *value + '"' : std::string("*");
        if (!lang.empty())
            d += "@" + lang;
        d += "^^<" + datatype + ">";
        return d;
    }
    }
    throw std::logic_error("Symbol::display: bad kind");
}

Symbol Symbol::cls(std::string iri) {
    Symbol s;
    s.kind = SymbolKind::Class;
    s.iri = std::move(iri);
    return s;
}

Symbol Symbol::relation(std::string iri) {
    Symbol s;
    s.kind = SymbolKind::Relation;
    s.iri = std::move(iri);
    return s;
}

Symbol Symbol::literal(std::string datatype, std::optional<std::string> value, std::string lang) {
    Symbol s;
    s.kind = SymbolKind::LiteralValue;
    s.datatype = std::move(datatype);
    s.value = std::move(value);
    s.lang = std::move(lang);
    return s;
}

Symbol Symbol::nil() {
    Symbol s;
    s.kind = SymbolKind::Nil;
    return s;
}

SymbolId SymbolTable::intern(const Symbol& s) {
    auto k = s.key();
    if (auto it = by_key_.find(k); it != by_key_.end())
        return it->second;
    const auto id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(s);
    keys_.push_back(k);
    by_key_.emplace(std::move(k), id);
    return id;
}

std::optional<SymbolId> SymbolTable::find(const Symbol& s) const {
    if (auto it = by_key_.find(s.key()); it != by_key_.end())
        return it->second;
    return std::nullopt;
}

VertexId LabeledMultigraph::add_vertex() {
    if (finalized_)
        throw std::logic_error("graph is finalized");
    return static_cast<VertexId>(n_vertices_++);
}

void LabeledMultigraph::add_vertex(VertexId upto) {
    if (finalized_)
        throw std::logic_error("graph is finalized");
    n_vertices_ = std::max<std::size_t>(n_vertices_, upto);
}

void LabeledMultigraph::add_vertex_label(VertexId v, SymbolId label) {
    if (finalized_)
        throw std::logic_error("graph is finalized");
    vertex_labels_.push_back({v, label});
}

void LabeledMultigraph::add_edge(VertexId src, VertexId dst, SymbolId label) {
    if (finalized_)
        throw std::logic_error("graph is finalized");
    edges_.push_back({src, dst, label});
}

void LabeledMultigraph::finalize() {
    if (finalized_)
        throw std::logic_error("graph is already finalized");

    for (const auto& vl : vertex_labels_)
        if (vl.vertex >= n_vertices_)
            throw std::out_of_range("vertex label on unknown vertex");
    for (const auto& e : edges_)
        if (e.src >= n_vertices_ || e.dst >= n_vertices_)
            throw std::out_of_range("edge endpoint on unknown vertex");

    std::sort(vertex_labels_.begin(), vertex_labels_.end());
    vertex_labels_.erase(std::unique(vertex_labels_.begin(), vertex_labels_.end()),
                         vertex_labels_.end());
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    vlabel_begin_.assign(n_vertices_ + 1, 0);
    vlabel_symbols_.resize(vertex_labels_.size());
    for (std::size_t i = 0; i < vertex_labels_.size(); ++i) {
        ++vlabel_begin_[vertex_labels_[i].vertex + 1];
        vlabel_symbols_[i] = vertex_labels_[i].label;
        label_index_[vertex_labels_[i].label].push_back(vertex_labels_[i].vertex);
    }
    for (std::size_t v = 0; v < n_vertices_; ++v)
        vlabel_begin_[v + 1] += vlabel_begin_[v];

    auto build_adjacency = [this](std::vector<EdgeId>& ids, std::vector<std::uint32_t>& begin,
                                  auto endpoint, auto other) {
        begin.assign(n_vertices_ + 1, 0);
        for (const auto& e : edges_)
            ++begin[endpoint(e) + 1];
        for (std::size_t v = 0; v < n_vertices_; ++v)
            begin[v + 1] += begin[v];
        ids.resize(edges_.size());
        auto cursor = begin;
        for (EdgeId id = 0; id < edges_.size(); ++id)
            ids[cursor[endpoint(edges_[id])]++] = id;
        for (std::size_t v = 0; v < n_vertices_; ++v) {
            std::sort(ids.begin() + begin[v], ids.begin() + begin[v + 1],
                      [this, &other](EdgeId a, EdgeId b) {
                          const auto& ea = edges_[a];
                          const auto& eb = edges_[b];
                          return std::make_tuple(ea.label, other(ea)) <
                                 std::make_tuple(eb.label, other(eb));
                      });
        }
    };
    build_adjacency(
        out_ids_, out_begin_, [](const Edge& e) { return e.src; },
        [](const Edge& e) { return e.dst; });
    build_adjacency(
        in_ids_, in_begin_, [](const Edge& e) { return e.dst; },
        [](const Edge& e) { return e.src; });

    finalized_ = true;
}

void LabeledMultigraph::require_finalized() const {
    if (!finalized_)
        throw std::logic_error("graph must be finalized first");
}

std::span<const SymbolId> LabeledMultigraph::labels_of(VertexId v) const {
    require_finalized();
    return {vlabel_symbols_.data() + vlabel_begin_.at(v),
            vlabel_symbols_.data() + vlabel_begin_.at(v + 1)};
}

std::span<const EdgeId> LabeledMultigraph::out_edges(VertexId v) const {
    require_finalized();
    return {out_ids_.data() + out_begin_.at(v), out_ids_.data() + out_begin_.at(v + 1)};
}

std::span<const EdgeId> LabeledMultigraph::in_edges(VertexId v) const {
    require_finalized();
    return {in_ids_.data() + in_begin_.at(v), in_ids_.data() + in_begin_.at(v + 1)};
}

bool LabeledMultigraph::has_edge(VertexId src, VertexId dst, SymbolId label) const {
    require_finalized();
    return std::binary_search(edges_.begin(), edges_.end(), Edge{src, dst, label});
}

std::optional<EdgeId> LabeledMultigraph::find_edge(VertexId src, VertexId dst,
                                                   SymbolId label) const {
    require_finalized();
    const Edge probe{src, dst, label};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), probe);
    if (it == edges_.end() || !(*it == probe))
        return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
}

bool LabeledMultigraph::has_vertex_label(VertexId v, SymbolId label) const {
    require_finalized();
    return std::binary_search(vertex_labels_.begin(), vertex_labels_.end(),
                              VertexLabel{v, label});
}

std::optional<std::uint32_t> LabeledMultigraph::vertex_label_index(VertexId v,
                                                                   SymbolId label) const {
    require_finalized();
    const auto it = std::lower_bound(vertex_labels_.begin(), vertex_labels_.end(),
                                     VertexLabel{v, label});
    if (it == vertex_labels_.end() || !(*it == VertexLabel{v, label}))
        return std::nullopt;
    return static_cast<std::uint32_t>(it - vertex_labels_.begin());
}

std::span<const VertexId> LabeledMultigraph::vertices_with_label(SymbolId label) const {
    require_finalized();
    if (auto it = label_index_.find(label); it != label_index_.end())
        return {it->second.data(), it->second.size()};
    return {};
}

} // namespace kgmdl
