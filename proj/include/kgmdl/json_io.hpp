#pragma once

#include "kgmdl/convert.hpp"
#include "kgmdl/metrics.hpp"

#include <json.hpp>

#include <filesystem>

namespace kgmdl {

/** Raised when a JSON document does not describe what the loader expects. */
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Symbols and graphs.
nlohmann::json symbols_to_json(const SymbolTable& symbols);
std::shared_ptr<SymbolTable> symbols_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const LabeledMultigraph& g);
LabeledMultigraph graph_from_json(const nlohmann::json& j);

// Conversion map, with the symbol table embedded.
nlohmann::json conversion_map_to_json(const ConversionMap& map);
ConversionMap conversion_map_from_json(const nlohmann::json& j);

/** Rows as stored on disk; enough to export queries without re-covering. */
struct LoadedCodeTable {
    std::shared_ptr<SymbolTable> symbols;
    std::vector<CodeTableRow> rows;
};

nlohmann::json code_table_to_json(const CodeTable& ct, const LabelStats& stats);
LoadedCodeTable code_table_from_json(const nlohmann::json& j);

nlohmann::json rewritten_to_json(const RewrittenGraph& rg, const RewrittenLengthBreakdown& b);
nlohmann::json metrics_to_json(const Metrics& m);
Metrics metrics_from_json(const nlohmann::json& j);

nlohmann::json snapshot_to_json(const CodeTable& ct, const LabelStats& stats,
                                const Metrics& metrics);

std::string trace_to_csv(const std::vector<IterationRecord>& trace);

/** Writes via a temp file in the same directory plus an atomic rename. */
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

} // namespace kgmdl
