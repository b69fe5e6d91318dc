// End-to-end acceptance checks, one printed line per check. Unlike the unit
// suites these validate the headline behaviors against independently
// hand-expanded oracles and synthetic datasets with known structure, and they
// enforce wall-clock budgets. Exit status is the number of failed checks.

#include "kgmdl/convert.hpp"
#include "kgmdl/cover.hpp"
#include "kgmdl/match.hpp"
#include "kgmdl/mdl.hpp"
#include "kgmdl/search.hpp"
#include "kgmdl/sparql.hpp"
#include "support/books.hpp"
#include "support/generators.hpp"
#include "support/graphs.hpp"
#include "support/oracles.hpp"
#include "support/sparql_eval.hpp"
#include "support/synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace kgmdl;
using namespace kgmdl::testing;

namespace {

constexpr double bit_tolerance = 1e-9;

class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& why) {
    throw CheckFailure(why);
}

void require(bool ok, const std::string& why) {
    if (!ok)
        fail(why);
}

void require_close(Bits actual, Bits expected, const std::string& what) {
    if (std::abs(actual - expected) > bit_tolerance) {
        std::ostringstream o;
        o << what << ": got " << std::setprecision(17) << actual << ", expected " << expected;
        fail(o.str());
    }
}

// ---------------------------------------------------------------------------
// 1. Worked example: the bibliographic toy graph with its five-pattern table
//    must produce the hand-checked cover, and the six data-term values must
//    match an oracle expanded here from first principles (no library calls).

void check_worked_example() {
    BooksKg kg;
    auto ct = CodeTable::initial(kg.data, kg.symbols);
    const RowId r1 = ct.add_pattern(kg.p1());
    const RowId r2 = ct.add_pattern(kg.p2());
    const RowId r3 = ct.add_pattern(kg.p3());
    const RowId r4 = ct.add_pattern(kg.p4());
    const RowId r5 = ct.add_pattern(kg.p5());
    require(ct.rows().size() == 21, "expected 16 singleton rows plus 5 patterns");

    const auto cover = compute_cover(kg.data, ct); // default options: no timeout
    require(cover.fully_covered, "cover must describe the whole graph");

    require(ct.row(r3).usage == 4, "book-author usage");
    require(ct.row(r2).usage == 2, "author-city usage");
    require(ct.row(r1).usage == 1 && ct.row(r4).usage == 1 && ct.row(r5).usage == 1,
            "remaining pattern usages");
    require(cover.rewritten.embeddings.size() == 9, "nine embedding vertices");
    require(cover.rewritten.ports == std::vector<VertexId>{2, 3, 4, 5, 6, 7},
            "six ports on the shared data vertices");
    require(cover.rewritten.port_edges.size() == 14, "fourteen port edges");

    // The book-author row reaches its ports four times through the author end
    // and twice through the book end.
    std::map<VertexId, std::uint64_t> r3_port_labels;
    std::map<VertexId, std::uint64_t> destinations;
    for (const auto& pe : cover.rewritten.port_edges) {
        ++destinations[pe.data_vertex];
        if (cover.rewritten.embeddings[pe.embedding_index].row == r3)
            ++r3_port_labels[pe.pattern_vertex];
    }
    require(r3_port_labels == std::map<VertexId, std::uint64_t>{{0, 2}, {1, 4}},
            "book-author port-label usages");
    require(destinations == std::map<VertexId, std::uint64_t>{
                                {2, 2}, {3, 2}, {4, 4}, {5, 2}, {6, 2}, {7, 2}},
            "port destination usages");

    const auto breakdown = rewritten_length(cover.rewritten, ct, kg.data);

    // Term 1, number of embeddings: Elias delta of 9 + 1 = 10 is
    // lambda + 2*floor(log2(lambda+1)) + 1 with lambda = floor(log2 10) = 3,
    // hence 3 + 4 + 1 = 8 bits.
    require_close(breakdown.embedding_count, 8.0, "embedding count term");

    // Term 2, bound for destination names: uniform over |V|+1 = 14 outcomes.
    require_close(breakdown.data_vertex_bound, std::log2(14.0), "vertex bound term");

    // Term 3, which row each of the 9 embeddings instantiates, plug-in coded
    // over all 21 rows.
    std::vector<std::size_t> row_sequence;
    for (const auto& emb : cover.rewritten.embeddings)
        row_sequence.push_back(emb.row);
    require_close(breakdown.embedding_labels, incremental_prequential(row_sequence, 21),
                  "embedding label term");

    // Term 4, per-embedding port counts: uniform over |ports of the row| + 1.
    // Seven embeddings instantiate two-port rows, two instantiate one-port rows.
    require_close(breakdown.port_counts, 7.0 * std::log2(3.0) + 2.0 * std::log2(2.0),
                  "port count term");

    // Term 5, which pattern vertex each port edge leaves, plug-in coded per
    // row: book-author contributes <4,2>, author-city <2,2>, sculptor <1,1>;
    // the one-port rows cost nothing.
    const Bits port_labels = incremental_prequential({0, 0, 0, 0, 1, 1}, 2) +
                             incremental_prequential({0, 0, 1, 1}, 2) +
                             incremental_prequential({0, 1}, 2);
    require_close(breakdown.port_labels, port_labels, "port label term");

    // Term 6, which data vertex each of the 14 port edges reaches, plug-in
    // coded over the 6 ports with counts <4,2,2,2,2,2>.
    require_close(breakdown.port_destinations,
                  incremental_prequential({0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5}, 6),
                  "port destination term");
}

// ---------------------------------------------------------------------------
// 2. The book-author pattern occurs exactly four times in the toy graph.

void check_occurrence_count() {
    BooksKg kg;
    const auto occurrences = all_occurrences(kg.p3(), kg.data);
    require(occurrences.size() == 4,
            "expected 4 occurrences, found " + std::to_string(occurrences.size()));
}

// ---------------------------------------------------------------------------
// 3. The closed-form prequential length equals the sequential definition and
//    is order-independent.

void check_prequential() {
    std::mt19937_64 rng(9157);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t universe = 1 + rng() % 20;
        const std::size_t length = rng() % 201;
        std::vector<std::size_t> sequence(length);
        for (auto& x : sequence)
            x = rng() % universe;

        const Bits closed = prequential(usages_of(sequence, universe), universe);
        const Bits incremental = incremental_prequential(sequence, universe);
        if (std::abs(closed - incremental) > bit_tolerance)
            fail("case " + std::to_string(i) + ": closed " + std::to_string(closed) +
                 " vs incremental " + std::to_string(incremental));

        std::shuffle(sequence.begin(), sequence.end(), rng);
        const Bits permuted_bits = incremental_prequential(sequence, universe);
        if (std::abs(permuted_bits - incremental) > bit_tolerance)
            fail("case " + std::to_string(i) + ": permutation changed the length");
    }
}

// ---------------------------------------------------------------------------
// 4. Converting a triple set to a graph and back reproduces it exactly.

void check_round_trip() {
    std::mt19937_64 rng(30817);
    for (int i = 0; i < 500; ++i) {
        const auto triples = random_triples(rng, 1 + rng() % 300);
        const auto converted = kg_to_graph(triples);
        const auto back = graph_to_kg(converted.graph, converted.map);
        if (canonical_ntriples(triples) != canonical_ntriples(back))
            fail("case " + std::to_string(i) + ": round-tripped document differs");
    }
}

// ---------------------------------------------------------------------------
// 5. Random covers are valid: embeddings are genuine occurrences, every edge
//    is described by exactly the embedding it is attributed to, coverage is
//    total, and ports/port edges match their definitions recomputed here.

void check_cover_validity() {
    std::mt19937_64 rng(77201);
    for (int case_no = 0; case_no < 100; ++case_no) {
        const auto why = [case_no](const std::string& msg) {
            return "case " + std::to_string(case_no) + ": " + msg;
        };

        SymbolTable symbols;
        std::vector<SymbolId> vertex_symbols, edge_symbols;
        for (int i = 0; i < 4; ++i)
            vertex_symbols.push_back(cls(symbols, "L" + std::to_string(i)));
        for (int i = 0; i < 4; ++i)
            edge_symbols.push_back(rel(symbols, "e" + std::to_string(i)));

        const auto data =
            random_data_graph(rng, vertex_symbols, edge_symbols, 2 + rng() % 12,
                              1 + rng() % 24, rng() % 18);
        auto ct = CodeTable::initial(data, symbols);
        const std::size_t tries = rng() % 5;
        for (std::size_t i = 0; i < tries; ++i) {
            try {
                ct.add_pattern(PatternGraph::from_graph(
                    random_pattern_graph(rng, symbols, vertex_symbols, edge_symbols, 4),
                    symbols));
            } catch (const CodeTableError&) {
                // duplicate of an existing row or singleton-shaped; skip
            }
        }

        const auto cover = compute_cover(data, ct);
        require(cover.fully_covered && !cover.interrupted, why("cover must be total"));
        for (auto a : cover.vertex_label_attribution)
            require(a != no_attribution, why("undescribed vertex label"));
        for (auto a : cover.edge_attribution)
            require(a != no_attribution, why("undescribed edge"));

        const auto& rewritten = cover.rewritten;
        std::vector<std::uint64_t> usage_seen(ct.rows().size(), 0);
        std::map<VertexId, std::uint64_t> image_count;
        using EdgeKey = std::tuple<VertexId, VertexId, SymbolId>;

        for (std::size_t i = 0; i < rewritten.embeddings.size(); ++i) {
            const auto& emb = rewritten.embeddings[i];
            const auto& row = ct.row(emb.row);
            ++usage_seen[emb.row];
            require(is_occurrence(row.pattern, data, emb.embedding),
                    why("selected embedding is not an occurrence"));
            for (VertexId dv : emb.embedding.map)
                ++image_count[dv];

            // Exclusivity: the data edges attributed to this embedding are
            // exactly the images of its pattern edges.
            std::vector<EdgeKey> attributed;
            for (std::size_t e = 0; e < data.edges().size(); ++e)
                if (cover.edge_attribution[e] == i)
                    attributed.emplace_back(data.edges()[e].src, data.edges()[e].dst,
                                            data.edges()[e].label);
            std::vector<EdgeKey> mapped;
            for (const auto& pe : row.pattern.graph().edges())
                mapped.emplace_back(emb.embedding.map[pe.src], emb.embedding.map[pe.dst],
                                    pe.label);
            std::sort(attributed.begin(), attributed.end());
            std::sort(mapped.begin(), mapped.end());
            require(attributed == mapped, why("attributed edges differ from embedding edges"));
        }

        // A described vertex label must actually appear on the attributed
        // embedding's image of a matching pattern vertex.
        for (std::size_t idx = 0; idx < data.vertex_labels().size(); ++idx) {
            const auto& unit = data.vertex_labels()[idx];
            const auto& emb = rewritten.embeddings[cover.vertex_label_attribution[idx]];
            const auto& pattern = ct.row(emb.row).pattern;
            bool described = false;
            for (VertexId pv = 0; pv < pattern.vertex_count() && !described; ++pv) {
                if (emb.embedding.map[pv] != unit.vertex)
                    continue;
                const auto labels = pattern.graph().labels_of(pv);
                described = std::find(labels.begin(), labels.end(), unit.label) != labels.end();
            }
            require(described, why("vertex label attributed to an embedding not bearing it"));
        }

        for (RowId r = 0; r < ct.rows().size(); ++r)
            require(ct.row(r).usage == usage_seen[r], why("row usage out of sync"));

        // Ports are the data vertices shared by at least two embeddings, and
        // each embedding contributes one port edge per pattern vertex whose
        // image is a port.
        std::vector<VertexId> expected_ports;
        for (const auto& [v, n] : image_count)
            if (n >= 2)
                expected_ports.push_back(v);
        require(rewritten.ports == expected_ports, why("port set mismatch"));

        using PortKey = std::tuple<std::uint32_t, VertexId, VertexId>;
        std::vector<PortKey> expected_edges, actual_edges;
        for (std::size_t i = 0; i < rewritten.embeddings.size(); ++i) {
            const auto& map = rewritten.embeddings[i].embedding.map;
            for (VertexId pv = 0; pv < map.size(); ++pv)
                if (std::binary_search(expected_ports.begin(), expected_ports.end(), map[pv]))
                    expected_edges.emplace_back(static_cast<std::uint32_t>(i), pv, map[pv]);
        }
        for (const auto& pe : rewritten.port_edges)
            actual_edges.emplace_back(pe.embedding_index, pe.pattern_vertex, pe.data_vertex);
        std::sort(expected_edges.begin(), expected_edges.end());
        std::sort(actual_edges.begin(), actual_edges.end());
        require(actual_edges == expected_edges, why("port edges mismatch"));

        for (RowId r = 0; r < ct.rows().size(); ++r) {
            std::vector<VertexId> row_ports;
            for (const auto& pe : rewritten.port_edges)
                if (rewritten.embeddings[pe.embedding_index].row == r)
                    row_ports.push_back(pe.pattern_vertex);
            std::sort(row_ports.begin(), row_ports.end());
            row_ports.erase(std::unique(row_ports.begin(), row_ports.end()), row_ports.end());
            require(ct.row(r).ports == row_ports, why("row port list mismatch"));
        }
    }
}

// ---------------------------------------------------------------------------
// 6. Mining the toy graph shrinks the description monotonically, ends under
//    the singleton baseline, and reruns bit-identically.

void check_search_soundness() {
    BooksKg kg;
    SearchConfig config;
    config.row_timeout = std::chrono::steady_clock::duration::max();

    const auto first = mine(kg.data, kg.symbols, config);
    require(!first.hit_budget, "toy mining must converge");
    require(first.trace.size() >= 2, "expected at least one accepted candidate");
    require(first.trace.front().l_percent == 100.0, "trace must start at the baseline");
    for (std::size_t i = 1; i < first.trace.size(); ++i)
        require(first.trace[i].l_bits < first.trace[i - 1].l_bits - bit_tolerance,
                "trace not strictly decreasing at step " + std::to_string(i));
    require(first.final_state.total() < first.baseline_bits,
            "final length must beat the baseline");

    const auto second = mine(kg.data, kg.symbols, config);
    require(second.ct.rows().size() == first.ct.rows().size(), "rerun table size differs");
    for (RowId r = 0; r < first.ct.rows().size(); ++r) {
        require(first.ct.row(r).pattern.canonical_code() ==
                    second.ct.row(r).pattern.canonical_code(),
                "rerun row " + std::to_string(r) + " differs");
        require(first.ct.row(r).usage == second.ct.row(r).usage, "rerun usage differs");
    }
    require(first.final_state.total() == second.final_state.total(),
            "rerun total length differs");
    require(first.trace.size() == second.trace.size(), "rerun trace length differs");
    for (std::size_t i = 0; i < first.trace.size(); ++i)
        require(first.trace[i].l_bits == second.trace[i].l_bits, "rerun trace differs");
}

// ---------------------------------------------------------------------------
// 7 & 8 share one mining run over the planted-motif dataset.

struct MotifRun {
    std::vector<Triple> triples;
    ConvertedGraph converted;
    MineResult mined;
};

const MotifRun& motif_run() {
    static const MotifRun run = [] {
        MotifRun r;
        std::mt19937_64 rng(424242);
        r.triples = planted_motif_kg(rng, 50, 200);
        r.converted = kg_to_graph(r.triples);
        SearchConfig config;
        config.max_time = std::chrono::seconds(240);
        r.mined = mine(r.converted.graph, *r.converted.map.symbols, config);
        return r;
    }();
    return run;
}

// 7. With 50 planted copies among 200 noise triples, the search recovers a
//    row containing the motif and compresses to at most 80%.

void check_motif_recovery() {
    const auto& run = motif_run();
    const double l_percent = 100.0 * run.mined.final_state.total() / run.mined.baseline_bits;
    if (l_percent > 80.0)
        fail("L% " + std::to_string(l_percent) + " exceeds 80");

    SymbolTable scratch = *run.converted.map.symbols;
    const auto motif = planted_motif_pattern(scratch);
    for (const auto& row : run.mined.ct.rows()) {
        if (row.is_singleton())
            continue;
        EnumerationBudget budget;
        budget.max_count = 1;
        const auto outcome = enumerate_occurrences(motif, row.pattern.graph(), budget,
                                                   [](const Embedding&) { return false; });
        if (outcome.count > 0)
            return;
    }
    fail("no mined row contains the planted motif");
}

// ---------------------------------------------------------------------------
// 8. The book-author pattern renders as the reference query, and every query
//    exported from the motif run holds on the triples it was mined from.

void check_query_export() {
    SymbolTable symbols;
    const SymbolId book = symbols.intern(Symbol::cls("Book"));
    const SymbolId author = symbols.intern(Symbol::relation("author"));
    LabeledMultigraph g;
    g.add_vertex(2);
    g.add_vertex_label(0, book);
    g.add_edge(0, 1, author);
    const auto pattern = PatternGraph::from_graph(std::move(g), symbols);

    ConversionMap map;
    map.symbols = std::make_shared<SymbolTable>(symbols);
    const auto query = pattern_to_sparql(pattern, {0, 1}, map);
    const std::string expected = "SELECT ?x1 ?x2 WHERE { ?x1 a <Book> ; <author> ?x2 . }";
    if (normalize_ws(query) != expected)
        fail("reference query mismatch: " + normalize_ws(query));

    const auto& run = motif_run();
    std::size_t exported = 0;
    for (const auto& row : run.mined.ct.rows()) {
        if (row.is_singleton())
            continue;
        ++exported;
        const auto text = pattern_to_sparql(row.pattern, row.ports, run.converted.map);
        ParsedQuery parsed;
        try {
            parsed = parse_query(text);
        } catch (const QueryParseError& e) {
            fail("exported query does not parse: " + std::string(e.what()));
        }
        const auto solutions = evaluate(parsed, run.triples);
        if (solutions.size() < row.usage)
            fail("query returned " + std::to_string(solutions.size()) + " solutions, usage " +
                 std::to_string(row.usage));
    }
    require(exported > 0, "the motif run exported no queries");
}

// ---------------------------------------------------------------------------
// 9. Anytime behavior at scale: ten budgeted minutes on a ~4k-triple graph
//    with 200 ms row timeouts must beat 90% and grow a pattern of 5+ labels.

void check_scaled_run() {
    std::mt19937_64 rng(424242);
    const auto triples = planted_motif_kg(rng, 400, 1600);
    const auto converted = kg_to_graph(triples);

    SearchConfig config;
    config.row_timeout = std::chrono::milliseconds(200);
    config.max_time = std::chrono::minutes(10);
    const auto mined = mine(converted.graph, *converted.map.symbols, config);

    const double l_percent = 100.0 * mined.final_state.total() / mined.baseline_bits;
    if (l_percent >= 90.0)
        fail("L% " + std::to_string(l_percent) + " not under 90");

    std::size_t max_labels = 0;
    for (const auto& row : mined.ct.rows())
        if (!row.is_singleton())
            max_labels = std::max(max_labels, row.pattern.label_count());
    if (max_labels < 5)
        fail("largest mined pattern has " + std::to_string(max_labels) + " labels");
}

// ---------------------------------------------------------------------------

int run_check(const std::string& name, double limit_s, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
        body();
    } catch (const std::exception& e) {
        reason = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (reason.empty() && limit_s > 0 && seconds > limit_s) {
        std::ostringstream o;
        o << "took " << std::fixed << std::setprecision(2) << seconds << "s, limit " << limit_s
          << "s";
        reason = o.str();
    }

    std::cout << (reason.empty() ? "[PASS] " : "[FAIL] ") << std::left << std::setw(36) << name
              << std::right << std::fixed << std::setprecision(2) << std::setw(8) << seconds
              << "s";
    if (!reason.empty())
        std::cout << "  " << reason;
    std::cout << std::endl;
    return reason.empty() ? 0 : 1;
}

} // namespace

int main() {
    int failures = 0;
    failures += run_check("worked-example code lengths", 1.0, check_worked_example);
    failures += run_check("example pattern occurrence count", 0.0, check_occurrence_count);
    failures += run_check("prequential closed form", 5.0, check_prequential);
    failures += run_check("rdf round-trip", 10.0, check_round_trip);
    failures += run_check("cover validity", 30.0, check_cover_validity);
    failures += run_check("mining descent and determinism", 60.0, check_search_soundness);
    failures += run_check("planted motif recovery", 300.0, check_motif_recovery);
    failures += run_check("query export", 0.0, check_query_export);
    failures += run_check("scaled anytime run", 0.0, check_scaled_run);

    if (failures == 0)
        std::cout << "all checks passed" << std::endl;
    else
        std::cout << failures << " check(s) failed" << std::endl;
    return failures;
}
