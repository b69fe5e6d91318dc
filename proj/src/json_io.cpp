#include "kgmdl/json_io.hpp"

#include "kgmdl/mdl.hpp"

#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace kgmdl {

using nlohmann::json;

namespace {

json term_to_json(const Term& t) { return serialize_term(t); }

Term term_from_json(const json& j) {
    if (!j.is_string())
        throw FormatError("term must be a string");
    // Reuse the N-Triples grammar by parsing the token in object position.
    try {
        auto triples = parse_ntriples("<http://q/s> <http://q/p> " + j.get<std::string>() + " .");
        return triples.at(0).object;
    } catch (const ParseError& e) {
        throw FormatError("bad term '" + j.get<std::string>() + "': " + e.what());
    }
}

json symbol_to_json(const Symbol& s) {
    switch (s.kind) {
    case SymbolKind::Class: return {{"kind", "class"}, {"iri", s.iri}};
    case SymbolKind::Relation: return {{"kind", "relation"}, {"iri", s.iri}};
    case SymbolKind::Nil: return {{"kind", "nil"}};
    case SymbolKind::LiteralValue: {
        json j{{"kind", "literal"}, {"datatype", s.datatype}};
        if (s.value)
            j["value"] = *s.value;
        if (!s.lang.empty())
            j["lang"] = s.lang;
        return j;
    }
    }
    throw FormatError("unknown symbol kind");
}

Symbol symbol_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "class")
        return Symbol::cls(j.at("iri").get<std::string>());
    if (kind == "relation")
        return Symbol::relation(j.at("iri").get<std::string>());
    if (kind == "nil")
        return Symbol::nil();
    if (kind == "literal") {
        std::optional<std::string> value;
        if (j.contains("value"))
            value = j.at("value").get<std::string>();
        return Symbol::literal(j.at("datatype").get<std::string>(), std::move(value),
                               j.value("lang", std::string()));
    }
    throw FormatError("unknown symbol kind '" + kind + "'");
}

std::string row_kind_name(RowKind k) {
    switch (k) {
    case RowKind::Pattern: return "pattern";
    case RowKind::VertexSingleton: return "vertex_singleton";
    case RowKind::EdgeSingleton: return "edge_singleton";
    case RowKind::LoopSingleton: return "loop_singleton";
    }
    throw FormatError("unknown row kind");
}

RowKind row_kind_from_name(const std::string& name) {
    if (name == "pattern")
        return RowKind::Pattern;
    if (name == "vertex_singleton")
        return RowKind::VertexSingleton;
    if (name == "edge_singleton")
        return RowKind::EdgeSingleton;
    if (name == "loop_singleton")
        return RowKind::LoopSingleton;
    throw FormatError("unknown row kind '" + name + "'");
}

json trace_record_to_json(const IterationRecord& r) {
    return {{"iteration", r.iteration},
            {"elapsed_s", r.elapsed_s},
            {"l_bits", r.l_bits},
            {"l_percent", r.l_percent},
            {"n_rows", r.n_rows},
            {"candidate_rank_accepted", r.candidate_rank_accepted}};
}

IterationRecord trace_record_from_json(const json& j) {
    IterationRecord r;
    r.iteration = j.at("iteration").get<std::uint64_t>();
    r.elapsed_s = j.at("elapsed_s").get<double>();
    r.l_bits = j.at("l_bits").get<double>();
    r.l_percent = j.at("l_percent").get<double>();
    r.n_rows = j.at("n_rows").get<std::size_t>();
    r.candidate_rank_accepted = j.at("candidate_rank_accepted").get<std::size_t>();
    return r;
}

} // namespace

json symbols_to_json(const SymbolTable& symbols) {
    json out = json::array();
    for (SymbolId id = 0; id < symbols.size(); ++id)
        out.push_back(symbol_to_json(symbols.symbol(id)));
    return out;
}

std::shared_ptr<SymbolTable> symbols_from_json(const json& j) {
    if (!j.is_array())
        throw FormatError("symbol table must be an array");
    auto table = std::make_shared<SymbolTable>();
    for (std::size_t i = 0; i < j.size(); ++i) {
        SymbolId id = table->intern(symbol_from_json(j[i]));
        if (id != i)
            throw FormatError("duplicate symbol at index " + std::to_string(i));
    }
    return table;
}

json graph_to_json(const LabeledMultigraph& g) {
    json vertex_labels = json::array();
    for (const auto& vl : g.vertex_labels())
        vertex_labels.push_back({vl.vertex, vl.label});
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.src, e.dst, e.label});
    return {{"vertex_count", g.vertex_count()},
            {"vertex_labels", std::move(vertex_labels)},
            {"edges", std::move(edges)}};
}

LabeledMultigraph graph_from_json(const json& j) {
    LabeledMultigraph g;
    auto n = j.at("vertex_count").get<std::uint64_t>();
    if (n > std::numeric_limits<VertexId>::max())
        throw FormatError("vertex count out of range");
    g.add_vertex(static_cast<VertexId>(n));
    for (const auto& vl : j.at("vertex_labels")) {
        if (!vl.is_array() || vl.size() != 2)
            throw FormatError("vertex label entries are [vertex, symbol] pairs");
        auto v = vl[0].get<std::uint64_t>();
        if (v >= n)
            throw FormatError("vertex label names vertex " + std::to_string(v));
        g.add_vertex_label(static_cast<VertexId>(v), vl[1].get<SymbolId>());
    }
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw FormatError("edge entries are [src, dst, label] triples");
        auto src = e[0].get<std::uint64_t>(), dst = e[1].get<std::uint64_t>();
        if (src >= n || dst >= n)
            throw FormatError("edge endpoint out of range");
        g.add_edge(static_cast<VertexId>(src), static_cast<VertexId>(dst), e[2].get<SymbolId>());
    }
    g.finalize();
    return g;
}

json conversion_map_to_json(const ConversionMap& map) {
    if (!map.symbols)
        throw FormatError("conversion map has no symbol table");
    json vertices = json::array();
    for (VertexId v = 0; v < map.vertex_terms.size(); ++v)
        vertices.push_back({{"id", v}, {"term", term_to_json(map.vertex_terms[v])}});
    json provenance = json::array();
    for (const auto& [key, predicate] : map.class_predicates)
        provenance.push_back({key.first, key.second, predicate});
    return {{"symbols", symbols_to_json(*map.symbols)},
            {"vertices", std::move(vertices)},
            {"class_predicates", std::move(provenance)},
            {"options",
             {{"type_predicates", map.options.type_predicates},
              {"literal_mode",
               map.options.literal_mode == LiteralMode::Full ? "full" : "datatype-only"}}}};
}

ConversionMap conversion_map_from_json(const json& j) {
    ConversionMap map;
    map.symbols = symbols_from_json(j.at("symbols"));
    const auto& vertices = j.at("vertices");
    map.vertex_terms.resize(vertices.size());
    std::vector<bool> seen(vertices.size(), false);
    for (const auto& v : vertices) {
        auto id = v.at("id").get<std::uint64_t>();
        if (id >= map.vertex_terms.size() || seen[id])
            throw FormatError("vertex ids must enumerate 0..n-1 once each");
        seen[id] = true;
        map.vertex_terms[id] = term_from_json(v.at("term"));
    }
    for (const auto& p : j.at("class_predicates")) {
        if (!p.is_array() || p.size() != 3)
            throw FormatError("class predicate entries are [vertex, symbol, predicate]");
        map.class_predicates[{p[0].get<VertexId>(), p[1].get<SymbolId>()}] =
            p[2].get<std::string>();
    }
    const auto& options = j.at("options");
    map.options.type_predicates =
        options.at("type_predicates").get<std::vector<std::string>>();
    const std::string mode = options.at("literal_mode").get<std::string>();
    if (mode == "full")
        map.options.literal_mode = LiteralMode::Full;
    else if (mode == "datatype-only")
        map.options.literal_mode = LiteralMode::DatatypeOnly;
    else
        throw FormatError("unknown literal mode '" + mode + "'");
    return map;
}

json code_table_to_json(const CodeTable& ct, const LabelStats& stats) {
    std::uint64_t total_usage = 0;
    for (const auto& row : ct.rows())
        total_usage += row.usage;
    json rows = json::array();
    for (const auto& row : ct.rows()) {
        json r{{"kind", row_kind_name(row.kind)},
               {"pattern", graph_to_json(row.pattern.graph())},
               {"canonical_code", row.pattern.canonical_code()},
               {"usage", row.usage},
               {"ports", row.ports},
               {"structure_bits", pattern_structure_length(row.pattern, stats)}};
        if (row.is_singleton())
            r["singleton_symbol"] = row.singleton_symbol;
        if (row.usage > 0)
            r["code_bits"] = prefix_code(row.usage, total_usage);
        rows.push_back(std::move(r));
    }
    return {{"symbols", symbols_to_json(ct.symbols())},
            {"model_bits", code_table_length(ct, stats)},
            {"rows", std::move(rows)}};
}

LoadedCodeTable code_table_from_json(const json& j) {
    LoadedCodeTable loaded;
    loaded.symbols = symbols_from_json(j.at("symbols"));
    for (const auto& r : j.at("rows")) {
        CodeTableRow row;
        row.kind = row_kind_from_name(r.at("kind").get<std::string>());
        row.pattern = PatternGraph::from_graph(graph_from_json(r.at("pattern")),
                                               *loaded.symbols);
        row.usage = r.at("usage").get<std::uint64_t>();
        row.ports = r.at("ports").get<std::vector<VertexId>>();
        for (VertexId p : row.ports)
            if (p >= row.pattern.vertex_count())
                throw FormatError("port outside its pattern");
        if (row.is_singleton())
            row.singleton_symbol = r.at("singleton_symbol").get<SymbolId>();
        loaded.rows.push_back(std::move(row));
    }
    return loaded;
}

json rewritten_to_json(const RewrittenGraph& rg, const RewrittenLengthBreakdown& b) {
    json embeddings = json::array();
    for (const auto& ev : rg.embeddings)
        embeddings.push_back({{"row", ev.row}, {"map", ev.embedding.map}});
    json port_edges = json::array();
    for (const auto& pe : rg.port_edges)
        port_edges.push_back({{"embedding", pe.embedding_index},
                              {"pattern_vertex", pe.pattern_vertex},
                              {"data_vertex", pe.data_vertex}});
    return {{"embeddings", std::move(embeddings)},
            {"ports", rg.ports},
            {"port_edges", std::move(port_edges)},
            {"data_bits",
             {{"embedding_count", b.embedding_count},
              {"data_vertex_bound", b.data_vertex_bound},
              {"embedding_labels", b.embedding_labels},
              {"port_counts", b.port_counts},
              {"port_labels", b.port_labels},
              {"port_destinations", b.port_destinations},
              {"total", b.total()}}}};
}

json metrics_to_json(const Metrics& m) {
    json trace = json::array();
    for (const auto& rec : m.dl_trace)
        trace.push_back(trace_record_to_json(rec));
    return {{"n_patterns", m.n_patterns},
            {"pct_labels_ge2", m.pct_labels_ge2},
            {"pct_labels_ge10", m.pct_labels_ge10},
            {"compression_ratio", m.compression_ratio},
            {"elapsed_s", m.elapsed_s},
            {"baseline_bits", m.baseline_bits},
            {"final_bits", m.final_bits},
            {"data_label_units", m.data_label_units},
            {"described_label_units", m.described_label_units},
            {"n_embeddings", m.n_embeddings},
            {"n_ports", m.n_ports},
            {"n_port_edges", m.n_port_edges},
            {"dl_trace", std::move(trace)}};
}

Metrics metrics_from_json(const json& j) {
    Metrics m;
    m.n_patterns = j.at("n_patterns").get<std::size_t>();
    m.pct_labels_ge2 = j.at("pct_labels_ge2").get<double>();
    m.pct_labels_ge10 = j.at("pct_labels_ge10").get<double>();
    m.compression_ratio = j.at("compression_ratio").get<double>();
    m.elapsed_s = j.at("elapsed_s").get<double>();
    m.baseline_bits = j.at("baseline_bits").get<double>();
    m.final_bits = j.at("final_bits").get<double>();
    m.data_label_units = j.at("data_label_units").get<std::size_t>();
    m.described_label_units = j.at("described_label_units").get<std::size_t>();
    m.n_embeddings = j.at("n_embeddings").get<std::size_t>();
    m.n_ports = j.at("n_ports").get<std::size_t>();
    m.n_port_edges = j.at("n_port_edges").get<std::size_t>();
    for (const auto& rec : j.at("dl_trace"))
        m.dl_trace.push_back(trace_record_from_json(rec));
    return m;
}

json snapshot_to_json(const CodeTable& ct, const LabelStats& stats, const Metrics& metrics) {
    return {{"metrics", metrics_to_json(metrics)}, {"code_table", code_table_to_json(ct, stats)}};
}

std::string trace_to_csv(const std::vector<IterationRecord>& trace) {
    std::ostringstream out;
    out << "iteration,elapsed_s,L_bits,L_percent,n_rows,candidate_rank_accepted\n";
    for (const auto& r : trace) {
        out << r.iteration << ',' << std::fixed << std::setprecision(6) << r.elapsed_s << ','
            << std::defaultfloat << std::setprecision(15) << r.l_bits << ','
            << std::fixed << std::setprecision(6) << r.l_percent << ',' << r.n_rows << ','
            << r.candidate_rank_accepted << '\n';
    }
    return out.str();
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::random_device rd;
    fs::path tmp = path;
    tmp += ".tmp-" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace kgmdl
