#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ledgertopo/degree_stats.hpp"
#include "ledgertopo/ledger.hpp"
#include "ledgertopo/nullmodel.hpp"
#include "ledgertopo/recirculation.hpp"
#include "ledgertopo/strategy.hpp"
#include "ledgertopo/topology.hpp"
#include "ledgertopo/triads.hpp"

namespace ledgertopo {

using Json = nlohmann::ordered_json;

enum class ReportFormat { Csv, Json, Both };

std::optional<ReportFormat> report_format_from_name(std::string_view name);
std::string_view report_format_name(ReportFormat f);

/// Column-ordered table. Cells are JSON scalars; null renders as an empty CSV field.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

/// CSV rendering of a single cell. Doubles use the shortest round-trip form.
std::string csv_cell(const Json& cell);

void write_csv(std::ostream& out, const Table& t);
Json to_json(const Table& t); ///< array of objects keyed by column

/// Writes <stem>.csv and/or <stem>.json into `dir`; returns the file names written.
std::vector<std::string> write_table(const std::filesystem::path& dir, std::string_view stem, const Table& t,
                                     ReportFormat format);

/// Pretty-printed with a trailing newline. Throws ConfigError when the file cannot be written.
void write_json_file(const std::filesystem::path& file, const Json& value);

Json diagnostics_json(const IngestDiagnostics& d);
Json graph_summary_json(const GraphTotals& totals, const DegreeStats& degrees);
Table degree_histogram_table(const DegreeStats& degrees);

Table node_assignment_table(const LedgerGraph& g, const TopologyPartition& p);
Table edge_assignment_table(const LedgerGraph& g, const TopologyPartition& p);
/// One row per category followed by a "total" row.
Table category_stats_table(const CategoryStats& stats);
Table one_time_users_table(const OneTimeUserTable& t);

using ModeCells = std::pair<SwapMode, std::vector<SignificanceCell>>;
Table significance_table(std::span<const ModeCells> cells);

Table triad_census_table(const std::map<Category, TriadCensus>& census);

Table operations_table(std::span<const RecirculationOp> ops, std::span<const Frequency> labels);
Json boundaries_json(const OpClassification& c);
Table signatures_table(const LedgerGraph& g, const TopologyPartition& p,
                       std::span<const TemporalSignature> signatures);
Table tx_crosstab_table(const RecirculationCrosstab& x);
Table user_crosstab_table(const RecirculationCrosstab& x);
Json coverage_json(const RecirculationCoverage& c);

Json strategy_json(const StrategySignalReport& r);
Table strategy_table(const StrategySignalReport& r);

} // namespace ledgertopo
