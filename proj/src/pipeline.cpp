#include "ledgertopo/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include "ledgertopo/errors.hpp"

#ifndef LEDGERTOPO_VERSION
#define LEDGERTOPO_VERSION "0.1.0"
#endif

namespace ledgertopo {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');)
        if (auto t = trim(item); !t.empty()) out.push_back(std::move(t));
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T v{};
    const auto* end = value.data() + value.size();
    const auto r = std::from_chars(value.data(), end, v);
    if (r.ec != std::errc{} || r.ptr != end)
        throw ConfigError("setting '" + key + "': '" + value + "' is not a valid non-negative integer");
    return v;
}

fs::path resolve(const fs::path& base, const std::string& value) {
    const fs::path p(value);
    return p.is_absolute() || base.empty() ? p : base / p;
}

/// FNV-1a over the file bytes; identifies the exact input in the manifest.
std::string file_digest(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

} // namespace

std::string_view version() { return LEDGERTOPO_VERSION; }

void PipelineConfig::validate() const {
    if (input.empty()) throw ConfigError("no input ledger given");
    if (replicas < 1) throw ConfigError("replicas must be at least 1");
    if (modes.empty()) throw ConfigError("no null-model mode selected");
    if (output.empty()) throw ConfigError("no output directory given");
    if (triad_categories.empty()) throw ConfigError("triad_categories is empty");
}

EnsembleSpec PipelineConfig::ensemble(SwapMode mode) const {
    return EnsembleSpec{mode, replicas, seed, max_repair_attempts};
}

void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value, const fs::path& base) {
    if (key == "input") {
        cfg.input = resolve(base, value);
    } else if (key == "columns") {
        const auto fmt = cfg.columns.timestamp_format;
        if (value == "default") cfg.columns = ColumnMapping{};
        else if (value == "sarafu") cfg.columns = ColumnMapping::sarafu();
        else throw ConfigError("columns: expected 'default' or 'sarafu', got '" + value + "'");
        cfg.columns.timestamp_format = fmt;
    } else if (key.starts_with("column.")) {
        const auto field = key.substr(7);
        auto& c = cfg.columns;
        if (field == "tx_id") c.tx_id = value;
        else if (field == "timestamp") c.timestamp = value;
        else if (field == "source") c.source = value;
        else if (field == "target") c.target = value;
        else if (field == "amount") c.amount = value;
        else if (field == "subtype") c.subtype = value;
        else throw ConfigError("unknown column field '" + field + "'");
    } else if (key == "timestamp_format") {
        const auto f = timestamp_format_from_string(value);
        if (!f) throw ConfigError("timestamp_format: expected auto, iso8601 or epoch, got '" + value + "'");
        cfg.columns.timestamp_format = *f;
    } else if (key == "filter.subtype") {
        cfg.filter.standard_subtype = value;
    } else if (key == "filter.exclude_accounts") {
        for (auto& a : split_list(value)) cfg.filter.excluded_accounts.insert(std::move(a));
    } else if (key == "filter.exclude_file") {
        for (const auto& a : read_account_list(resolve(base, value))) cfg.filter.excluded_accounts.insert(a);
    } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "replicas") {
        cfg.replicas = parse_number<std::size_t>(key, value);
    } else if (key == "mode") {
        cfg.modes.clear();
        for (const auto& m : split_list(value)) {
            if (m == "all") {
                cfg.modes.assign(kAllSwapModes.begin(), kAllSwapModes.end());
                break;
            }
            const auto mode = swap_mode_from_name(m);
            if (!mode) throw ConfigError("mode: expected target, source, both or all, got '" + m + "'");
            if (std::find(cfg.modes.begin(), cfg.modes.end(), *mode) == cfg.modes.end()) cfg.modes.push_back(*mode);
        }
    } else if (key == "max_repair_attempts") {
        cfg.max_repair_attempts = parse_number<std::size_t>(key, value);
    } else if (key == "jobs") {
        cfg.jobs = parse_number<unsigned>(key, value);
    } else if (key == "output") {
        cfg.output = resolve(base, value);
    } else if (key == "format") {
        const auto f = report_format_from_name(value);
        if (!f) throw ConfigError("format: expected csv, json or both, got '" + value + "'");
        cfg.format = *f;
    } else if (key == "triad_categories") {
        cfg.triad_categories.clear();
        for (const auto& name : split_list(value)) {
            if (name == "dag") {
                cfg.triad_categories.insert(kDagCategories.begin(), kDagCategories.end());
                continue;
            }
            const auto c = category_from_name(name);
            if (!c || !is_node_category(*c))
                throw ConfigError("triad_categories: '" + name + "' is not a node category");
            cfg.triad_categories.insert(*c);
        }
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

void load_config(PipelineConfig& cfg, std::istream& in, const fs::path& base) {
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        try {
            apply_setting(cfg, trim(text.substr(0, eq)), trim(text.substr(eq + 1)), base);
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void load_config(PipelineConfig& cfg, const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file '" + file.string() + "'");
    load_config(cfg, in, file.parent_path());
}

Pipeline::Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    if (cfg_.jobs == 0) cfg_.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::error_code ec;
    fs::create_directories(cfg_.output, ec);
    if (ec || !fs::is_directory(cfg_.output))
        throw ConfigError("cannot create output directory '" + cfg_.output.string() + "'");
}

template <typename Fn>
void Pipeline::timed(const char* name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    stages_.emplace_back(name, dt.count());
}

void Pipeline::note(std::vector<std::string> names) {
    for (auto& n : names) files_.push_back(std::move(n));
}

void Pipeline::ingest() {
    if (ingested_) return;
    timed("ingest", [&] {
        auto txs = parse_ledger(cfg_.input, cfg_.columns, cfg_.filter, &diagnostics_);
        graph_ = aggregate(std::move(txs));
        diagnostics_.self_transfers_dropped = graph_.self_transfers_dropped();
        if (graph_.empty()) throw DataError("no transactions left after filtering");
        const auto degrees = degree_stats(graph_);

        write_json_file(out() / "diagnostics.json", diagnostics_json(diagnostics_));
        write_json_file(out() / "graph_summary.json", graph_summary_json(graph_.totals(), degrees));
        note({"diagnostics.json", "graph_summary.json"});
        note(write_table(out(), "degree_histogram", degree_histogram_table(degrees), cfg_.format));
    });
    ingested_ = true;
}

void Pipeline::topology() {
    if (categorized_) return;
    ingest();
    timed("topology", [&] {
        partition_ = categorize(graph_);
        stats_ = ledgertopo::category_stats(graph_, partition_);
        one_time_ = one_time_users(graph_, partition_);

        note(write_table(out(), "node_assignment", node_assignment_table(graph_, partition_), ReportFormat::Csv));
        note(write_table(out(), "edge_assignment", edge_assignment_table(graph_, partition_), ReportFormat::Csv));
        note(write_table(out(), "category_stats", category_stats_table(stats_), cfg_.format));
        note(write_table(out(), "one_time_users", one_time_users_table(one_time_), cfg_.format));
    });
    categorized_ = true;
}

void Pipeline::significance() {
    topology();
    if (cfg_.replicas < kMinEnsembleForSignificance)
        throw ConfigError("significance needs at least " + std::to_string(kMinEnsembleForSignificance) +
                          " replicas, got " + std::to_string(cfg_.replicas));
    timed("significance", [&] {
        std::vector<ModeCells> cells;
        Table null{{"mode", "replica", "category", "wcc_count", "node_count", "link_count", "tx_count", "volume"}, {}};
        for (auto mode : cfg_.modes) {
            const auto ensemble = run_ensemble(graph_, cfg_.ensemble(mode), cfg_.jobs);
            cells.emplace_back(mode, ledgertopo::significance(stats_, ensemble));
            for (std::size_t i = 0; i < ensemble.size(); ++i)
                for (auto c : kAllCategories) {
                    const auto& r = ensemble[i][c];
                    null.rows.push_back({swap_mode_name(mode), i, category_name(c), r.wcc_count, r.node_count,
                                         r.link_count, r.tx_count, r.volume.to_string()});
                }
        }
        note(write_table(out(), "significance", significance_table(cells), cfg_.format));
        note(write_table(out(), "null_ensemble", null, ReportFormat::Csv));
    });
}

void Pipeline::triads() {
    topology();
    if (cfg_.replicas < kMinEnsembleForSignificance)
        throw ConfigError("triad significance needs at least " + std::to_string(kMinEnsembleForSignificance) +
                          " replicas, got " + std::to_string(cfg_.replicas));
    timed("triads", [&] {
        const auto census = category_census(graph_, partition_, cfg_.triad_categories);
        std::vector<ModeCells> cells;
        for (auto mode : cfg_.modes)
            cells.emplace_back(mode, triad_significance(graph_, partition_, cfg_.ensemble(mode),
                                                        cfg_.triad_categories, cfg_.jobs));
        note(write_table(out(), "triad_census", triad_census_table(census), cfg_.format));
        note(write_table(out(), "triad_significance", significance_table(cells), cfg_.format));
    });
}

void Pipeline::recirculation() {
    if (ops_ready_) return;
    topology();
    timed("recirculation", [&] {
        ops_ = extract_ops(graph_.transactions());
        std::vector<Frequency> labels;
        if (!ops_.empty()) {
            classification_ = classify_ops(ops_);
            labels = classification_->labels;
        }
        signatures_ = user_signatures(ops_, labels);
        crosstab_ = crosstab(graph_, partition_, ops_, labels, signatures_);

        note(write_table(out(), "operations", operations_table(ops_, labels), ReportFormat::Csv));
        Json boundaries = classification_ ? boundaries_json(*classification_) : Json{{"operations", 0}};
        write_json_file(out() / "boundaries.json", boundaries);
        note({"boundaries.json"});
        note(write_table(out(), "signatures", signatures_table(graph_, partition_, signatures_), ReportFormat::Csv));
        note(write_table(out(), "recirculation_tx_by_category", tx_crosstab_table(crosstab_), cfg_.format));
        note(write_table(out(), "recirculation_users_by_category", user_crosstab_table(crosstab_), cfg_.format));
        write_json_file(out() / "coverage.json", coverage_json(crosstab_.coverage));
        note({"coverage.json"});
    });
    ops_ready_ = true;
}

void Pipeline::report() {
    topology();
    recirculation();
    timed("report", [&] {
        const auto r = strategy_report(stats_, one_time_, crosstab_, graph_.totals().volume);
        if (cfg_.format != ReportFormat::Csv) {
            write_json_file(out() / "strategy_signal.json", strategy_json(r));
            note({"strategy_signal.json"});
        }
        if (cfg_.format != ReportFormat::Json) note(write_table(out(), "strategy_signal", strategy_table(r),
                                                                ReportFormat::Csv));
    });
}

void Pipeline::run_all() {
    ingest();
    topology();
    significance();
    triads();
    recirculation();
    report();
    write_manifest("run");
}

void Pipeline::write_manifest(const std::string& command) {
    Json m;
    m["tool"] = "ledgertopo";
    m["version"] = version();
    m["command"] = command;

    Json input;
    input["path"] = cfg_.input.string();
    std::error_code ec;
    const auto size = fs::file_size(cfg_.input, ec);
    input["bytes"] = ec ? Json(nullptr) : Json(size);
    input["fnv1a64"] = ec ? Json(nullptr) : Json(file_digest(cfg_.input));
    m["inputs"] = Json::array({input});

    Json config;
    const auto& c = cfg_.columns;
    config["columns"] = {{"tx_id", c.tx_id},       {"timestamp", c.timestamp}, {"source", c.source},
                         {"target", c.target},     {"amount", c.amount},       {"subtype", c.subtype}};
    config["filter"] = {{"subtype", cfg_.filter.standard_subtype},
                        {"excluded_accounts", cfg_.filter.excluded_accounts.size()}};
    Json modes = Json::array();
    for (auto mode : cfg_.modes) modes.push_back(swap_mode_name(mode));
    config["modes"] = modes;
    config["replicas"] = cfg_.replicas;
    config["max_repair_attempts"] = cfg_.max_repair_attempts;
    config["jobs"] = cfg_.jobs;
    config["format"] = report_format_name(cfg_.format);
    Json cats = Json::array();
    for (auto cat : cfg_.triad_categories) cats.push_back(category_name(cat));
    config["triad_categories"] = cats;
    m["config"] = config;

    Json seeds;
    seeds["master"] = cfg_.seed;
    seeds["replica_seed"] = "derive_seed(master, replica_index); retries derive_seed(that, attempt)";
    m["seeds"] = seeds;

    Json stages = Json::array();
    for (const auto& [name, secs] : stages_) stages.push_back({{"name", name}, {"wall_seconds", secs}});
    m["stages"] = stages;
    auto files = files_;
    files.push_back("manifest.json");
    m["outputs"] = files;
    write_json_file(out() / "manifest.json", m);
}

std::vector<std::string> run_pipeline(const PipelineConfig& cfg) {
    Pipeline p(cfg);
    p.run_all();
    auto files = p.files_written();
    files.push_back("manifest.json");
    return files;
}

} // namespace ledgertopo
