#pragma once

#include "kgmdl/cover.hpp"

#include <chrono>
#include <functional>
#include <optional>

namespace kgmdl {

/** A merged pattern proposed for the table, with its co-occurrence support. */
struct Candidate {
    PatternGraph pattern;
    std::uint64_t pair_count = 0;
    double score = 0; // pair_count * label_count
};

/**
 * All merges of embedding-vertex pairs that share at least one port, fused
 * along every shared vertex, deduplicated by canonical code, patterns already
 * in the table excluded. Sorted by descending score, ties by ascending code.
 */
std::vector<Candidate> generate_candidates(const RewrittenGraph& rewritten,
                                           const CodeTable& ct, const SymbolTable& symbols);

struct IterationRecord {
    std::uint64_t iteration = 0; // 0 is the initial singleton-only state
    double elapsed_s = 0;
    Bits l_bits = 0;
    double l_percent = 100.0;
    std::size_t n_rows = 0;                     // pattern rows in the table
    std::size_t candidate_rank_accepted = 0;    // 1-based; 0 for the initial record
};

struct SearchSnapshot {
    const CodeTable& ct;
    const CoverResult& cover; // the cover behind the current best state
    Bits model_bits = 0;
    Bits data_bits = 0;
    Bits baseline_bits = 0;
    double elapsed_s = 0;
    const std::vector<IterationRecord>& trace;
};

struct SearchConfig {
    /** Per-row enumeration budget inside each cover. */
    std::chrono::steady_clock::duration row_timeout = std::chrono::milliseconds(500);
    /** Overall wall-clock budget; absent means run to convergence. */
    std::optional<std::chrono::steady_clock::duration> max_time;
    const std::atomic<bool>* cancel = nullptr;
    std::optional<std::chrono::steady_clock::duration> snapshot_interval;
    std::function<void(const SearchSnapshot&)> on_snapshot;
    /** Deterministic budgets, mainly for tests. */
    std::optional<std::uint64_t> max_iterations;
    std::optional<std::uint64_t> max_candidate_evaluations;
};

struct MineResult {
    CodeTable ct;
    TotalLength final_state;
    Bits baseline_bits = 0;
    std::vector<IterationRecord> trace;
    bool hit_budget = false; // stopped by time, cancel or an evaluation cap
};

/**
 * Greedy anytime search: start from the singleton table, repeatedly accept
 * the best-ranked candidate that shrinks the total length by more than 1e-9
 * bits, then drop pattern rows the final cover never uses. The result always
 * carries a consistent final cover, budget hit or not.
 */
MineResult mine(const LabeledMultigraph& data, const SymbolTable& symbols,
                const SearchConfig& config = {});

} // namespace kgmdl
