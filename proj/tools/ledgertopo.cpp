#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ledgertopo/errors.hpp"
#include "ledgertopo/pipeline.hpp"
#include "ledgertopo/synthetic.hpp"

using namespace ledgertopo;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kConfig = 2, kData = 3, kAnalysis = 4 };

struct Flags {
    std::string config;
    std::string input;
    std::string output;
    std::string format;
    std::string mode;
    std::uint64_t seed = 0;
    std::size_t replicas = 0;
    unsigned jobs = 0;
};

void report_error(const Flags& flags, std::string_view kind, int code, const std::string& message) {
    std::cerr << "ledgertopo: " << kind << ": " << message << '\n';
    if (flags.output.empty() || !fs::is_directory(flags.output)) return;
    Json j{{"error", kind}, {"exit_code", code}, {"message", message}};
    std::ofstream(fs::path(flags.output) / "error.json") << j.dump(2) << '\n';
}

PipelineConfig build_config(const CLI::App& app, const Flags& flags) {
    PipelineConfig cfg;
    if (!flags.config.empty()) load_config(cfg, fs::path(flags.config));
    auto given = [&](const char* name) {
        for (const auto* opt : app.get_options())
            if (opt->check_lname(name) && opt->count() > 0) return true;
        for (const auto* sub : app.get_subcommands())
            for (const auto* opt : sub->get_options())
                if (opt->check_lname(name) && opt->count() > 0) return true;
        return false;
    };
    if (!flags.input.empty()) cfg.input = flags.input;
    if (!flags.output.empty()) cfg.output = flags.output;
    if (given("seed")) cfg.seed = flags.seed;
    if (given("jobs")) cfg.jobs = flags.jobs;
    if (given("replicas")) cfg.replicas = flags.replicas;
    if (given("format")) apply_setting(cfg, "format", flags.format);
    if (given("mode")) apply_setting(cfg, "mode", flags.mode);
    return cfg;
}

int generate(const Flags& flags, ScenarioSpec spec, double horizon_days) {
    spec.horizon = Seconds{static_cast<std::int64_t>(horizon_days * 86400.0)};
    const fs::path dir = flags.output.empty() ? fs::path("ledgertopo-out") : fs::path(flags.output);
    fs::create_directories(dir);
    const auto ledger = generate_synthetic(spec, flags.seed);
    std::ofstream tx(dir / "ledger.csv", std::ios::binary);
    std::ofstream truth(dir / "ground_truth.csv", std::ios::binary);
    if (!tx || !truth) throw ConfigError("cannot write into '" + dir.string() + "'");
    write_ledger(tx, ledger.transactions);
    write_ground_truth(truth, ledger.truth);
    std::cout << "wrote " << ledger.transactions.size() << " transactions over " << ledger.truth.size()
              << " accounts to " << dir.string() << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topology, null-model significance, triad census and recirculation analysis of payment ledgers"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    app.add_option("--config", flags.config, "Plain-text key = value configuration file");
    app.add_option("--seed", flags.seed, "Master seed for null-model ensembles and the generator");
    app.add_option("--jobs", flags.jobs, "Worker threads for ensembles (0 = all cores)");
    app.add_option("--output", flags.output, "Output directory");
    app.add_option("--format", flags.format, "Table format")->check(CLI::IsMember({"csv", "json", "both"}));

    const std::vector<std::pair<const char*, const char*>> stages = {
        {"ingest", "Parse the ledger, write diagnostics and degree statistics"},
        {"topology", "Assign every node and link to one of the fourteen categories"},
        {"significance", "Compare category statistics with null-model ensembles"},
        {"triads", "Triad census of the acyclic categories and its significance"},
        {"recirculation", "Extract recirculation operations and speed classes"},
        {"report", "Strategy-signal summary from topology and recirculation tables"},
        {"run", "Full pipeline with manifest"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : stages) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", flags.input, "Ledger CSV (overrides 'input' from --config)");
        if (std::string_view(name) == "significance" || std::string_view(name) == "triads" ||
            std::string_view(name) == "run") {
            sub->add_option("--mode", flags.mode, "Null model: target, source, both or all");
            sub->add_option("--replicas", flags.replicas, "Replicas per null model");
        }
        subs[name] = sub;
    }

    auto* gen = app.add_subcommand("generate", "Write a synthetic ledger with planted structures and ground truth");
    ScenarioSpec spec = demo_scenario();
    double horizon_days = 30.0;
    gen->add_option("--communities", spec.communities, "Strongly connected groups")->capture_default_str();
    gen->add_option("--community-size", spec.community_size)->capture_default_str();
    gen->add_option("--chord-probability", spec.chord_probability)->capture_default_str();
    gen->add_option("--stars", spec.collector_stars, "Isolated collector stars")->capture_default_str();
    gen->add_option("--star-leaves", spec.star_leaves)->capture_default_str();
    gen->add_option("--dyads", spec.dyads)->capture_default_str();
    gen->add_option("--feeders", spec.feeders)->capture_default_str();
    gen->add_option("--sinks", spec.sinks)->capture_default_str();
    gen->add_option("--bridges", spec.bridges)->capture_default_str();
    gen->add_option("--tails", spec.dag_tails)->capture_default_str();
    gen->add_option("--heads", spec.dag_heads)->capture_default_str();
    gen->add_option("--chains", spec.dag_chains)->capture_default_str();
    gen->add_option("--max-tx-per-link", spec.max_tx_per_link)->capture_default_str();
    gen->add_option("--horizon-days", horizon_days)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (gen->parsed()) return generate(flags, spec, horizon_days);

        Pipeline pipeline(build_config(app, flags));
        std::string command;
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) command = name;
        if (command == "run") {
            pipeline.run_all();
        } else {
            if (command == "ingest") pipeline.ingest();
            else if (command == "topology") pipeline.topology();
            else if (command == "significance") pipeline.significance();
            else if (command == "triads") pipeline.triads();
            else if (command == "recirculation") pipeline.recirculation();
            else if (command == "report") pipeline.report();
            pipeline.write_manifest(command);
        }
        std::cout << "wrote " << pipeline.files_written().size() + 1 << " files to "
                  << pipeline.config().output.string() << '\n';
        return kOk;
    } catch (const ConfigError& e) {
        report_error(flags, "config", kConfig, e.what());
        return kConfig;
    } catch (const DataError& e) {
        report_error(flags, "data", kData, e.what());
        return kData;
    } catch (const AnalysisError& e) {
        report_error(flags, "analysis", kAnalysis, e.what());
        return kAnalysis;
    } catch (const std::exception& e) {
        report_error(flags, "analysis", kAnalysis, e.what());
        return kAnalysis;
    }
}
