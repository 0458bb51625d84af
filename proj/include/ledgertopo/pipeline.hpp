#pragma once

#include <chrono>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ledgertopo/degree_stats.hpp"
#include "ledgertopo/ledger.hpp"
#include "ledgertopo/nullmodel.hpp"
#include "ledgertopo/recirculation.hpp"
#include "ledgertopo/report.hpp"
#include "ledgertopo/strategy.hpp"
#include "ledgertopo/topology.hpp"
#include "ledgertopo/triads.hpp"

namespace ledgertopo {

struct PipelineConfig {
    std::filesystem::path input;
    ColumnMapping columns;
    FilterSpec filter;
    std::vector<SwapMode> modes = {kAllSwapModes.begin(), kAllSwapModes.end()};
    std::size_t replicas = 1000;
    std::uint64_t seed = 0;
    std::size_t max_repair_attempts = 100;
    unsigned jobs = 0; ///< 0 = one worker per hardware thread
    std::filesystem::path output = "ledgertopo-out";
    ReportFormat format = ReportFormat::Both;
    std::set<Category> triad_categories = kDagCategories;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
    EnsembleSpec ensemble(SwapMode mode) const;
};

/// Applies one "key = value" setting. Relative paths resolve against `base`.
/// Throws ConfigError on an unknown key or a malformed value.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value,
                   const std::filesystem::path& base = {});

/// Plain-text "key = value" lines; '#' starts a comment.
void load_config(PipelineConfig& cfg, std::istream& in, const std::filesystem::path& base = {});
void load_config(PipelineConfig& cfg, const std::filesystem::path& file);

/// Stage-by-stage runner. Each stage runs the ones it depends on first, writes
/// its own outputs into cfg.output and records its wall time.
class Pipeline {
public:
    explicit Pipeline(PipelineConfig cfg);

    void ingest();
    void topology();
    void significance();
    void triads();
    void recirculation();
    void report();
    /// All six stages in order, then the manifest.
    void run_all();

    /// manifest.json: inputs, configuration, seeds, version, stage wall times, files written.
    void write_manifest(const std::string& command);

    const PipelineConfig& config() const { return cfg_; }
    const LedgerGraph& graph() const { return graph_; }
    const TopologyPartition& partition() const { return partition_; }
    const CategoryStats& category_stats() const { return stats_; }
    const std::vector<std::string>& files_written() const { return files_; }
    const std::vector<std::pair<std::string, double>>& stage_times() const { return stages_; }

private:
    template <typename Fn>
    void timed(const char* name, Fn&& fn);
    void note(std::vector<std::string> names);
    void ensure_ingested();
    void ensure_categorized();
    void ensure_ops();
    std::filesystem::path out() const { return cfg_.output; }

    PipelineConfig cfg_;
    bool ingested_ = false, categorized_ = false, ops_ready_ = false;
    IngestDiagnostics diagnostics_;
    LedgerGraph graph_;
    TopologyPartition partition_;
    CategoryStats stats_;
    OneTimeUserTable one_time_;
    std::vector<RecirculationOp> ops_;
    std::optional<OpClassification> classification_;
    std::vector<TemporalSignature> signatures_;
    RecirculationCrosstab crosstab_;
    std::vector<std::pair<std::string, double>> stages_;
    std::vector<std::string> files_;
};

/// Full pipeline; returns the files written.
std::vector<std::string> run_pipeline(const PipelineConfig& cfg);

/// Version string baked in at build time.
std::string_view version();

} // namespace ledgertopo
