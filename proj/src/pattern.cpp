#include "kgmdl/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kgmdl {

namespace {

bool is_connected(const LabeledMultigraph& g) {
    const std::size_t n = g.vertex_count();
    if (n <= 1)
        return true;
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        auto push = [&](VertexId u) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        };
        for (EdgeId e : g.out_edges(v))
            push(g.edges()[e].dst);
        for (EdgeId e : g.in_edges(v))
            push(g.edges()[e].src);
    }
    return reached == n;
}

/** Canonical code construction: color refinement, then the minimal
 * adjacency serialization over all orderings that respect the refined
 * cells (cells in canonical order, exhaustive permutations within). */
class Canonizer {
public:
    Canonizer(const LabeledMultigraph& g, const SymbolTable& symbols) : g_(g) {
        const std::size_t n = g.vertex_count();
        label_key_.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::string k = "[";
            for (SymbolId s : g.labels_of(static_cast<VertexId>(v))) {
                k += symbols.key(s);
                k += ',';
            }
            k += ']';
            label_key_[v] = std::move(k);
        }
        for (const auto& e : g.edges()) {
            const std::string& k = symbols.key(e.label);
            if (e.src == e.dst)
                loops_[e.src].push_back(k);
            else
                fwd_[{e.src, e.dst}].push_back(k);
        }
        for (auto& [pair, keys] : fwd_)
            std::sort(keys.begin(), keys.end());
        for (auto& [v, keys] : loops_)
            std::sort(keys.begin(), keys.end());
    }

    std::string run() {
        const std::size_t n = g_.vertex_count();
        if (n == 0)
            return "G0;";

        refine();

        // cells in canonical order: by final signature string
        std::map<std::string, std::vector<VertexId>> cells;
        for (std::size_t v = 0; v < n; ++v)
            cells[signature_[v]].push_back(static_cast<VertexId>(v));

        double orderings = 1;
        cell_of_position_.clear();
        cells_.clear();
        for (auto& [sig, members] : cells) {
            for (std::size_t i = 0; i < members.size(); ++i)
                cell_of_position_.push_back(cells_.size());
            for (std::size_t k = 2; k <= members.size(); ++k)
                orderings *= static_cast<double>(k);
            cells_.push_back(members);
        }
        if (orderings > double(1 << 20)) {
            // pragmatic guard: invariant-only code for enormous automorphism groups
            std::string code = "B" + std::to_string(n) + ";";
            std::vector<std::string> sigs(signature_);
            std::sort(sigs.begin(), sigs.end());
            for (const auto& s : sigs) {
                code += s;
                code += ';';
            }
            return code;
        }

        best_.clear();
        current_ = "G" + std::to_string(n) + ";";
        placed_.clear();
        used_.assign(n, 0);
        search();
        return best_;
    }

private:
    void refine() {
        const std::size_t n = g_.vertex_count();
        signature_ = label_key_;
        std::vector<std::uint32_t> color(n, 0);
        rank_signatures(color);
        std::size_t distinct = count_distinct(color);
        for (std::size_t round = 0; round < n; ++round) {
            for (std::size_t v = 0; v < n; ++v) {
                std::vector<std::string> adj;
                for (EdgeId e : g_.out_edges(static_cast<VertexId>(v))) {
                    const auto& edge = g_.edges()[e];
                    if (edge.dst == v)
                        continue;
                    adj.push_back("+" + std::to_string(color[edge.dst]) + "." +
                                  edge_key(e));
                }
                for (EdgeId e : g_.in_edges(static_cast<VertexId>(v))) {
                    const auto& edge = g_.edges()[e];
                    if (edge.src == v)
                        continue;
                    adj.push_back("-" + std::to_string(color[edge.src]) + "." +
                                  edge_key(e));
                }
                std::sort(adj.begin(), adj.end());
                std::string sig = label_key_[v] + "#" + std::to_string(color[v]);
                if (auto it = loops_.find(static_cast<VertexId>(v)); it != loops_.end()) {
                    sig += "{";
                    for (const auto& k : it->second) {
                        sig += k;
                        sig += ',';
                    }
                    sig += "}";
                }
                for (const auto& a : adj) {
                    sig += a;
                    sig += '/';
                }
                signature_[v] = std::move(sig);
            }
            rank_signatures(color);
            const std::size_t now = count_distinct(color);
            if (now == distinct)
                break;
            distinct = now;
        }
    }

    void rank_signatures(std::vector<std::uint32_t>& color) const {
        std::vector<std::string> sorted(signature_);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t v = 0; v < signature_.size(); ++v)
            color[v] = static_cast<std::uint32_t>(
                std::lower_bound(sorted.begin(), sorted.end(), signature_[v]) - sorted.begin());
    }

    static std::size_t count_distinct(const std::vector<std::uint32_t>& color) {
        return std::set<std::uint32_t>(color.begin(), color.end()).size();
    }

    std::string edge_key(EdgeId e) const {
        const auto& edge = g_.edges()[e];
        const auto it = fwd_.find({edge.src, edge.dst});
        // any representative key works for refinement; use the full sorted list
        std::string k;
        for (const auto& s : it->second) {
            k += s;
            k += ',';
        }
        return k;
    }

    std::string encode_block(VertexId v) const {
        std::string block = "|";
        block += label_key_0(v);
        if (auto it = loops_.find(v); it != loops_.end()) {
            block += '{';
            for (const auto& k : it->second) {
                block += k;
                block += ',';
            }
            block += '}';
        }
        for (VertexId p : placed_) {
            block += '(';
            std::vector<std::string> tokens;
            if (auto it = fwd_.find({p, v}); it != fwd_.end())
                for (const auto& k : it->second)
                    tokens.push_back("+" + k);
            if (auto it = fwd_.find({v, p}); it != fwd_.end())
                for (const auto& k : it->second)
                    tokens.push_back("-" + k);
            std::sort(tokens.begin(), tokens.end());
            for (const auto& t : tokens) {
                block += t;
                block += ',';
            }
            block += ')';
        }
        return block;
    }

    const std::string& label_key_0(VertexId v) const { return label_key_[v]; }

    void search() {
        const std::size_t n = g_.vertex_count();
        const std::size_t i = placed_.size();
        if (i == n) {
            if (best_.empty() || current_ < best_)
                best_ = current_;
            return;
        }
        for (VertexId v : cells_[cell_of_position_[i]]) {
            if (used_[v])
                continue;
            const std::string block = encode_block(v);
            const std::size_t old_len = current_.size();
            current_ += block;
            const bool viable =
                best_.empty() ||
                current_.compare(0, std::min(current_.size(), best_.size()), best_, 0,
                                 std::min(current_.size(), best_.size())) <= 0;
            if (viable) {
                used_[v] = 1;
                placed_.push_back(v);
                search();
                placed_.pop_back();
                used_[v] = 0;
            }
            current_.resize(old_len);
        }
    }

    const LabeledMultigraph& g_;
    std::vector<std::string> label_key_;
    std::map<std::pair<VertexId, VertexId>, std::vector<std::string>> fwd_;
    std::map<VertexId, std::vector<std::string>> loops_;
    std::vector<std::string> signature_;
    std::vector<std::vector<VertexId>> cells_;
    std::vector<std::size_t> cell_of_position_;
    std::vector<VertexId> placed_;
    std::vector<char> used_;
    std::string current_;
    std::string best_;
};

} // namespace

std::string canonical_code(const LabeledMultigraph& g, const SymbolTable& symbols) {
    return Canonizer(g, symbols).run();
}

PatternGraph PatternGraph::from_graph(LabeledMultigraph g, const SymbolTable& symbols) {
    if (!g.finalized())
        g.finalize();
    if (g.vertex_count() == 0)
        throw PatternError("pattern must have at least one vertex");
    if (g.label_unit_count() == 0)
        throw PatternError("pattern must carry at least one label");
    if (!is_connected(g))
        throw PatternError("pattern must be connected");
    PatternGraph p;
    p.canon_ = kgmdl::canonical_code(g, symbols);
    p.g_ = std::move(g);
    return p;
}

PatternGraph PatternGraph::vertex_singleton(SymbolId label, const SymbolTable& symbols) {
    LabeledMultigraph g;
    const VertexId v = g.add_vertex();
    g.add_vertex_label(v, label);
    return from_graph(std::move(g), symbols);
}

PatternGraph PatternGraph::edge_singleton(SymbolId label, const SymbolTable& symbols) {
    LabeledMultigraph g;
    const VertexId a = g.add_vertex();
    const VertexId b = g.add_vertex();
    g.add_edge(a, b, label);
    return from_graph(std::move(g), symbols);
}

PatternGraph PatternGraph::loop_singleton(SymbolId label, const SymbolTable& symbols) {
    LabeledMultigraph g;
    const VertexId v = g.add_vertex();
    g.add_edge(v, v, label);
    return from_graph(std::move(g), symbols);
}

PatternGraph merge_patterns(const PatternGraph& left, const PatternGraph& right,
                            const std::vector<std::pair<VertexId, VertexId>>& correspondence,
                            const SymbolTable& symbols) {
    if (correspondence.empty())
        throw PatternError("merge needs at least one identified vertex pair");
    const auto& lg = left.graph();
    const auto& rg = right.graph();

    std::map<VertexId, VertexId> right_to_merged;
    std::set<VertexId> left_used;
    for (const auto& [lv, rv] : correspondence) {
        if (lv >= lg.vertex_count() || rv >= rg.vertex_count())
            throw PatternError("correspondence references a vertex outside the patterns");
        if (!right_to_merged.emplace(rv, lv).second)
            throw PatternError("correspondence maps one right vertex twice");
        if (!left_used.insert(lv).second)
            throw PatternError("correspondence maps one left vertex twice");
    }

    LabeledMultigraph merged;
    merged.add_vertex(static_cast<VertexId>(lg.vertex_count()));
    for (VertexId rv = 0; rv < rg.vertex_count(); ++rv)
        if (!right_to_merged.contains(rv))
            right_to_merged.emplace(rv, merged.add_vertex());

    for (const auto& vl : lg.vertex_labels())
        merged.add_vertex_label(vl.vertex, vl.label);
    for (const auto& e : lg.edges())
        merged.add_edge(e.src, e.dst, e.label);
    for (const auto& vl : rg.vertex_labels())
        merged.add_vertex_label(right_to_merged.at(vl.vertex), vl.label);
    for (const auto& e : rg.edges())
        merged.add_edge(right_to_merged.at(e.src), right_to_merged.at(e.dst), e.label);

    return PatternGraph::from_graph(std::move(merged), symbols);
}

} // namespace kgmdl
