#include "kgmdl/search.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kgmdl {

namespace {

constexpr Bits accept_margin = 1e-9;

std::vector<std::pair<VertexId, VertexId>>
shared_vertex_correspondence(const Embedding& left, const Embedding& right) {
    std::map<VertexId, VertexId> left_at; // data vertex -> left pattern vertex
    for (VertexId pv = 0; pv < left.map.size(); ++pv)
        left_at.emplace(left.map[pv], pv);
    std::vector<std::pair<VertexId, VertexId>> corr;
    for (VertexId pv = 0; pv < right.map.size(); ++pv) {
        if (auto it = left_at.find(right.map[pv]); it != left_at.end())
            corr.emplace_back(it->second, pv);
    }
    return corr;
}

} // namespace

std::vector<Candidate> generate_candidates(const RewrittenGraph& rewritten,
                                           const CodeTable& ct, const SymbolTable& symbols) {
    // embeddings touching each port, in embedding order
    std::map<VertexId, std::vector<std::uint32_t>> at_port;
    for (const auto& pe : rewritten.port_edges) {
        auto& list = at_port[pe.data_vertex];
        if (list.empty() || list.back() != pe.embedding_index)
            list.push_back(pe.embedding_index);
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs_done;
    std::map<std::string, std::string> merge_cache; // merge signature -> canonical code
    std::map<std::string, Candidate> by_code;

    for (const auto& [port, list] : at_port) {
        for (std::size_t a = 0; a < list.size(); ++a) {
            for (std::size_t b = a + 1; b < list.size(); ++b) {
                const auto pair = std::minmax(list[a], list[b]);
                if (!pairs_done.insert(pair).second)
                    continue;

                const auto& left = rewritten.embeddings[pair.first];
                const auto& right = rewritten.embeddings[pair.second];
                const auto corr = shared_vertex_correspondence(left.embedding, right.embedding);

                std::string signature = std::to_string(left.row) + "|" +
                                        std::to_string(right.row);
                for (const auto& [lv, rv] : corr) {
                    signature += ";" + std::to_string(lv) + "," + std::to_string(rv);
                }

                std::string code;
                if (auto it = merge_cache.find(signature); it != merge_cache.end()) {
                    code = it->second;
                    if (code.empty())
                        continue; // cached as already-in-table
                    auto found = by_code.find(code);
                    if (found != by_code.end()) {
                        ++found->second.pair_count;
                        continue;
                    }
                }

                auto merged = merge_patterns(ct.row(left.row).pattern,
                                             ct.row(right.row).pattern, corr, symbols);
                code = merged.canonical_code();
                if (ct.contains(code)) {
                    merge_cache.emplace(signature, "");
                    continue;
                }
                merge_cache.emplace(signature, code);
                auto [it, inserted] = by_code.try_emplace(code, Candidate{std::move(merged), 0, 0});
                ++it->second.pair_count;
            }
        }
    }

    std::vector<Candidate> out;
    out.reserve(by_code.size());
    for (auto& [code, cand] : by_code) {
        cand.score = static_cast<double>(cand.pair_count) *
                     static_cast<double>(cand.pattern.label_count());
        out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
        if (x.score != y.score)
            return x.score > y.score;
        return x.pattern.canonical_code() < y.pattern.canonical_code();
    });
    return out;
}

MineResult mine(const LabeledMultigraph& data, const SymbolTable& symbols,
                const SearchConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto stats = compute_label_stats(data);

    CoverOptions cover_opts;
    cover_opts.row_timeout = config.row_timeout;
    cover_opts.cancel = config.cancel;
    if (config.max_time)
        cover_opts.deadline = start + *config.max_time;

    auto elapsed_s = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    auto out_of_time = [&] {
        if (config.cancel && config.cancel->load(std::memory_order_relaxed))
            return true;
        return cover_opts.deadline && std::chrono::steady_clock::now() >= *cover_opts.deadline;
    };

    MineResult result;
    result.ct = CodeTable::initial(data, symbols);
    result.final_state = total_length(data, result.ct, stats, cover_opts);
    result.baseline_bits = result.final_state.total();
    result.trace.push_back({0, elapsed_s(), result.baseline_bits, 100.0, 0, 0});

    auto percent = [&result](Bits bits) {
        return result.baseline_bits > 0 ? 100.0 * bits / result.baseline_bits : 100.0;
    };

    auto last_snapshot = start;
    auto maybe_snapshot = [&](bool force = false) {
        if (!config.on_snapshot)
            return;
        if (!force && (!config.snapshot_interval ||
                       std::chrono::steady_clock::now() - last_snapshot <
                           *config.snapshot_interval))
            return;
        last_snapshot = std::chrono::steady_clock::now();
        config.on_snapshot({result.ct, result.final_state.cover, result.final_state.model,
                            result.final_state.data, result.baseline_bits, elapsed_s(),
                            result.trace});
    };

    std::uint64_t evaluations = 0;
    std::uint64_t iteration = 0;
    bool improved = true;
    while (improved) {
        improved = false;
        if (out_of_time() ||
            (config.max_iterations && iteration >= *config.max_iterations)) {
            result.hit_budget = true;
            break;
        }

        auto candidates =
            generate_candidates(result.final_state.cover.rewritten, result.ct, symbols);
        std::size_t rank = 0;
        for (auto& candidate : candidates) {
            ++rank;
            if (out_of_time()) {
                result.hit_budget = true;
                break;
            }
            if (config.max_candidate_evaluations &&
                evaluations >= *config.max_candidate_evaluations) {
                result.hit_budget = true;
                break;
            }
            ++evaluations;

            CodeTable trial_ct = result.ct;
            trial_ct.add_pattern(candidate.pattern);
            auto trial = total_length(data, trial_ct, stats, cover_opts);
            if (trial.cover.interrupted) {
                result.hit_budget = true;
                break;
            }
            if (trial.total() < result.final_state.total() - accept_margin) {
                result.ct = std::move(trial_ct);
                result.final_state = std::move(trial);
                ++iteration;
                result.trace.push_back({iteration, elapsed_s(), result.final_state.total(),
                                        percent(result.final_state.total()),
                                        result.ct.pattern_row_count(), rank});
                improved = true;
                break;
            }
            maybe_snapshot();
        }
        if (result.hit_budget)
            break;
        maybe_snapshot();
    }

    // one pruning pass: unused pattern rows only cost bits
    bool pruned = false;
    for (const auto& row : result.ct.rows())
        if (!row.is_singleton() && row.usage == 0)
            pruned = true;
    if (pruned) {
        CodeTable smaller = result.ct.without_unused_patterns();
        auto rerun = total_length(data, smaller, stats, cover_opts);
        if (!rerun.cover.interrupted && rerun.total() <= result.final_state.total()) {
            result.ct = std::move(smaller);
            result.final_state = std::move(rerun);
            result.trace.push_back({++iteration, elapsed_s(), result.final_state.total(),
                                    percent(result.final_state.total()),
                                    result.ct.pattern_row_count(), 0});
        }
    }

    maybe_snapshot(true);
    return result;
}

} // namespace kgmdl
