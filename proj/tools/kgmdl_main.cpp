#include "kgmdl/json_io.hpp"
#include "kgmdl/search.hpp"
#include "kgmdl/sparql.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cctype>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace kgmdl;
namespace fs = std::filesystem;
using Duration = std::chrono::steady_clock::duration;

std::atomic<bool> g_cancel{false};

void on_interrupt(int) { g_cancel.store(true); }

/** "500ms" / "2s" / "10m" / "8h" / "inf"; fractions allowed ("1.5s"). */
Duration parse_duration(const std::string& text) {
    if (text == "inf" || text == "infinite")
        return Duration::max();
    std::size_t suffix = text.size();
    while (suffix > 0 && !std::isdigit(static_cast<unsigned char>(text[suffix - 1])) &&
           text[suffix - 1] != '.')
        --suffix;
    const std::string unit = text.substr(suffix);
    double scale;
    if (unit == "ms")
        scale = 1e-3;
    else if (unit == "s")
        scale = 1.0;
    else if (unit == "m")
        scale = 60.0;
    else if (unit == "h")
        scale = 3600.0;
    else
        throw CLI::ValidationError(text + ": expected a duration like 500ms, 2s, 10m, 8h, inf");
    double value;
    try {
        std::size_t used = 0;
        value = std::stod(text.substr(0, suffix), &used);
        if (used != suffix || value < 0)
            throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw CLI::ValidationError(text + ": expected a non-negative number before the unit");
    }
    return std::chrono::duration_cast<Duration>(std::chrono::duration<double>(value * scale));
}

std::vector<Triple> load_ntriples(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_ntriples(buffer.str());
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ":" + std::to_string(e.line()) + ": " + e.what());
    }
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    atomic_write_file(path, j.dump(2) + "\n");
}

std::string pattern_file_name(std::size_t index) {
    std::string n = std::to_string(index);
    return "pattern_" + std::string(n.size() < 3 ? 3 - n.size() : 0, '0') + n + ".rq";
}

/** Non-singleton rows only; returns how many files were written. */
std::size_t export_pattern_queries(const std::vector<CodeTableRow>& rows,
                                   const ConversionMap& map, const fs::path& dir,
                                   const SparqlExportOptions& options) {
    std::size_t written = 0;
    for (const auto& row : rows) {
        if (row.is_singleton())
            continue;
        auto query = pattern_to_sparql(row.pattern, row.ports, map, options);
        std::ostringstream text;
        text << "# usage " << row.usage << ", " << row.pattern.vertex_count()
             << " vertices, " << row.pattern.label_count() << " labels\n"
             << query;
        atomic_write_file(dir / pattern_file_name(++written), text.str());
    }
    return written;
}

struct ConvertArgs {
    std::string input;
    std::string output = ".";
    ConversionOptions options;
};

int run_convert(const ConvertArgs& args) {
    auto triples = load_ntriples(args.input);
    auto converted = kg_to_graph(triples, args.options);
    fs::path out(args.output);
    write_json(out / "graph.json", graph_to_json(converted.graph));
    write_json(out / "conversion_map.json", conversion_map_to_json(converted.map));
    std::cout << "converted " << triples.size() << " triples to "
              << converted.graph.vertex_count() << " vertices, "
              << converted.graph.edges().size() << " edges, "
              << converted.graph.vertex_label_count() << " vertex labels\n";
    return 0;
}

struct MineArgs {
    std::string input;
    std::string output = ".";
    ConversionOptions conversion;
    SearchConfig search;
    SparqlExportOptions sparql;
};

int run_mine(MineArgs& args) {
    auto triples = load_ntriples(args.input);
    auto converted = kg_to_graph(triples, args.conversion);
    const auto& graph = converted.graph;
    if (graph.vertex_count() == 0 || graph.label_unit_count() == 0) {
        std::cerr << args.input << ": empty data graph\n";
        return 1;
    }

    fs::path out(args.output);
    fs::create_directories(out);
    auto stats = compute_label_stats(graph);
    auto started = std::chrono::steady_clock::now();

    args.search.cancel = &g_cancel;
    args.search.on_snapshot = [&](const SearchSnapshot& snap) {
        auto metrics = compute_metrics(snap.cover.rewritten, snap.ct, graph,
                                       snap.baseline_bits, snap.model_bits + snap.data_bits);
        metrics.elapsed_s = snap.elapsed_s;
        metrics.dl_trace = snap.trace;
        write_json(out / "snapshot.json", snapshot_to_json(snap.ct, stats, metrics));
    };
    std::signal(SIGINT, on_interrupt);
    auto mined = mine(graph, *converted.map.symbols, args.search);
    std::signal(SIGINT, SIG_DFL);
    double elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    auto metrics = compute_metrics(mined.final_state.cover.rewritten, mined.ct, graph,
                                   mined.baseline_bits, mined.final_state.total());
    metrics.elapsed_s = elapsed_s;
    metrics.dl_trace = mined.trace;

    write_json(out / "conversion_map.json", conversion_map_to_json(converted.map));
    write_json(out / "ct.json", code_table_to_json(mined.ct, stats));
    write_json(out / "rewritten.json",
               rewritten_to_json(mined.final_state.cover.rewritten,
                                 mined.final_state.breakdown));
    write_json(out / "metrics.json", metrics_to_json(metrics));
    write_json(out / "snapshot.json", snapshot_to_json(mined.ct, stats, metrics));
    atomic_write_file(out / "trace.csv", trace_to_csv(mined.trace));
    std::size_t queries = export_pattern_queries(mined.ct.rows(), converted.map,
                                                 out / "patterns", args.sparql);

    std::cout << "baseline " << mined.baseline_bits << " bits, final "
              << mined.final_state.total() << " bits (L% "
              << 100.0 * metrics.compression_ratio << ")\n"
              << mined.ct.pattern_row_count() << " patterns, " << queries
              << " queries exported, " << mined.trace.size() - 1 << " accepted iterations\n"
              << (mined.hit_budget ? "stopped on budget" : "converged") << " after "
              << elapsed_s << "s\n";
    return 0;
}

struct ExportArgs {
    std::string input;
    std::string output = "patterns";
    std::string conversion_map;
    SparqlExportOptions sparql;
};

int run_export(const ExportArgs& args) {
    auto loaded = code_table_from_json(load_json(args.input));
    ConversionMap map;
    if (!args.conversion_map.empty()) {
        map = conversion_map_from_json(load_json(args.conversion_map));
    } else {
        map.symbols = loaded.symbols;
    }
    std::size_t written =
        export_pattern_queries(loaded.rows, map, fs::path(args.output), args.sparql);
    std::cout << "exported " << written << " queries to " << args.output << "\n";
    return 0;
}

struct StatsArgs {
    std::string input;
    std::string output;
};

int run_stats(const StatsArgs& args) {
    auto snapshot = load_json(args.input);
    auto metrics = metrics_from_json(snapshot.at("metrics"));
    std::cout << "patterns: " << metrics.n_patterns << "\n"
              << "compression ratio: " << metrics.compression_ratio << " ("
              << metrics.final_bits << " / " << metrics.baseline_bits << " bits)\n"
              << "labels described by >=2-label rows: " << 100.0 * metrics.pct_labels_ge2
              << "%\n"
              << "labels described by >=10-label rows: " << 100.0 * metrics.pct_labels_ge10
              << "%\n"
              << "embeddings: " << metrics.n_embeddings << ", ports: " << metrics.n_ports
              << ", port edges: " << metrics.n_port_edges << "\n"
              << "iterations: "
              << (metrics.dl_trace.empty() ? 0 : metrics.dl_trace.size() - 1) << " in "
              << metrics.elapsed_s << "s\n";
    if (!args.output.empty())
        write_json(args.output, metrics_to_json(metrics));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MDL-based graph pattern mining over RDF knowledge graphs"};
    app.require_subcommand(1);

    ConvertArgs convert_args;
    std::string convert_literal_mode = "full";
    auto* convert = app.add_subcommand("convert", "N-Triples to graph + conversion map JSON");
    convert->add_option("--input", convert_args.input, "N-Triples file")->required();
    convert->add_option("--output", convert_args.output, "output directory");
    convert->add_option("--type-predicate", convert_args.options.type_predicates,
                        "predicate treated as class assertion (repeatable)");
    convert->add_option("--literal-mode", convert_literal_mode, "full | datatype-only")
        ->check(CLI::IsMember({"full", "datatype-only"}));

    MineArgs mine_args;
    std::string mine_literal_mode = "full";
    std::string row_timeout = "500ms", max_time, snapshot_interval;
    auto* mine_cmd = app.add_subcommand("mine", "mine a code table from N-Triples");
    mine_cmd->add_option("--input", mine_args.input, "N-Triples file")->required();
    mine_cmd->add_option("--output", mine_args.output, "output directory");
    mine_cmd->add_option("--row-cover-timeout", row_timeout,
                         "per-row embedding budget during covers (default 500ms)");
    mine_cmd->add_option("--max-time", max_time, "overall search budget (default none)");
    mine_cmd->add_option("--snapshot-interval", snapshot_interval,
                         "how often to rewrite snapshot.json (default never)");
    mine_cmd->add_option("--type-predicate", mine_args.conversion.type_predicates,
                         "predicate treated as class assertion (repeatable)");
    mine_cmd->add_option("--literal-mode", mine_literal_mode, "full | datatype-only")
        ->check(CLI::IsMember({"full", "datatype-only"}));
    mine_cmd->add_flag("--strict-isomorphism-filter,!--no-strict-isomorphism-filter",
                       mine_args.sparql.strict_isomorphism_filter,
                       "emit distinctness FILTERs in exported queries (default on)");

    ExportArgs export_args;
    auto* export_cmd = app.add_subcommand("export-sparql", "code table JSON to .rq files");
    export_cmd->add_option("--input", export_args.input, "ct.json path")->required();
    export_cmd->add_option("--output", export_args.output, "output directory");
    export_cmd->add_option("--conversion-map", export_args.conversion_map,
                           "conversion_map.json for type-predicate fidelity");
    export_cmd->add_flag("--strict-isomorphism-filter,!--no-strict-isomorphism-filter",
                         export_args.sparql.strict_isomorphism_filter,
                         "emit distinctness FILTERs (default on)");

    StatsArgs stats_args;
    auto* stats_cmd = app.add_subcommand("stats", "summarize a snapshot.json");
    stats_cmd->add_option("--input", stats_args.input, "snapshot.json path")->required();
    stats_cmd->add_option("--output", stats_args.output, "also write metrics JSON here");

    try {
        app.parse(argc, argv);
        if (convert->parsed() && convert_literal_mode == "datatype-only")
            convert_args.options.literal_mode = LiteralMode::DatatypeOnly;
        if (mine_cmd->parsed()) {
            if (mine_literal_mode == "datatype-only")
                mine_args.conversion.literal_mode = LiteralMode::DatatypeOnly;
            mine_args.search.row_timeout = parse_duration(row_timeout);
            if (!max_time.empty())
                mine_args.search.max_time = parse_duration(max_time);
            if (mine_args.search.max_time == Duration::max())
                mine_args.search.max_time.reset();
            if (!snapshot_interval.empty())
                mine_args.search.snapshot_interval = parse_duration(snapshot_interval);
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (convert->parsed())
            return run_convert(convert_args);
        if (mine_cmd->parsed())
            return run_mine(mine_args);
        if (export_cmd->parsed())
            return run_export(export_args);
        return run_stats(stats_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
