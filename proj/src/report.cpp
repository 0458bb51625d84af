#include "ledgertopo/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "ledgertopo/csv.hpp"
#include "ledgertopo/errors.hpp"

namespace ledgertopo {

namespace fs = std::filesystem;

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json fit_json(const PowerLawFit& f) {
    Json j;
    j["fitted"] = f.fitted;
    j["reliable"] = f.reliable;
    j["alpha"] = f.fitted ? Json(f.alpha) : Json(nullptr);
    j["xmin"] = f.fitted ? Json(f.xmin) : Json(nullptr);
    j["ks_distance"] = f.fitted ? Json(f.ks_distance) : Json(nullptr);
    j["n_tail"] = f.n_tail;
    return j;
}

std::ofstream open_out(const fs::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + file.string() + "'");
    return out;
}

} // namespace

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    if (name == "both") return ReportFormat::Both;
    return std::nullopt;
}

std::string_view report_format_name(ReportFormat f) {
    switch (f) {
    case ReportFormat::Csv:
        return "csv";
    case ReportFormat::Json:
        return "json";
    case ReportFormat::Both:
        return "both";
    }
    return "?";
}

std::string csv_cell(const Json& cell) {
    switch (cell.type()) {
    case Json::value_t::null:
        return "";
    case Json::value_t::string:
        return cell.get<std::string>();
    case Json::value_t::boolean:
        return cell.get<bool>() ? "true" : "false";
    case Json::value_t::number_integer:
        return std::to_string(cell.get<std::int64_t>());
    case Json::value_t::number_unsigned:
        return std::to_string(cell.get<std::uint64_t>());
    case Json::value_t::number_float: {
        const double v = cell.get<double>();
        if (std::isnan(v)) return "nan";
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    }
    default:
        return cell.dump();
    }
}

void write_csv(std::ostream& out, const Table& t) {
    csv::write_row(out, t.columns);
    std::vector<std::string> fields;
    for (const auto& row : t.rows) {
        fields.clear();
        for (const auto& cell : row) fields.push_back(csv_cell(cell));
        csv::write_row(out, fields);
    }
}

Json to_json(const Table& t) {
    Json arr = Json::array();
    for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i) obj[t.columns[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr;
}

std::vector<std::string> write_table(const fs::path& dir, std::string_view stem, const Table& t,
                                     ReportFormat format) {
    std::vector<std::string> written;
    if (format != ReportFormat::Json) {
        const std::string name = std::string(stem) + ".csv";
        auto out = open_out(dir / name);
        write_csv(out, t);
        written.push_back(name);
    }
    if (format != ReportFormat::Csv) {
        const std::string name = std::string(stem) + ".json";
        write_json_file(dir / name, to_json(t));
        written.push_back(name);
    }
    return written;
}

void write_json_file(const fs::path& file, const Json& value) {
    auto out = open_out(file);
    out << value.dump(2) << '\n';
}

Json diagnostics_json(const IngestDiagnostics& d) {
    Json j;
    j["rows_read"] = d.rows_read;
    j["rows_filtered"] = d.rows_filtered;
    j["self_transfers_dropped"] = d.self_transfers_dropped;
    j["duplicate_tx_ids"] = d.duplicate_tx_ids;
    return j;
}

Json graph_summary_json(const GraphTotals& totals, const DegreeStats& degrees) {
    Json j;
    j["nodes"] = totals.nodes;
    j["links"] = totals.links;
    j["transactions"] = totals.transactions;
    j["volume"] = totals.volume.to_string();
    j["in_degree_fit"] = fit_json(degrees.in_degree);
    j["out_degree_fit"] = fit_json(degrees.out_degree);
    j["tx_per_link_fit"] = fit_json(degrees.tx_per_link);
    j["volume_per_link_fit"] = fit_json(degrees.volume_per_link);
    Json c;
    c["r"] = opt(degrees.tx_vs_volume.r);
    c["p_value"] = degrees.tx_vs_volume.p_value;
    c["n"] = degrees.tx_vs_volume.n;
    j["tx_vs_volume_pearson"] = c;
    return j;
}

Table degree_histogram_table(const DegreeStats& degrees) {
    Table t{{"direction", "degree", "nodes"}, {}};
    for (const auto& [d, n] : degrees.in_degree_histogram) t.rows.push_back({"in", d, n});
    for (const auto& [d, n] : degrees.out_degree_histogram) t.rows.push_back({"out", d, n});
    return t;
}

Table node_assignment_table(const LedgerGraph& g, const TopologyPartition& p) {
    Table t{{"node_id", "category", "component_id"}, {}};
    t.rows.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        t.rows.push_back({g.name(v), category_name(p.node_category(v)), p.node_component[v]});
    return t;
}

Table edge_assignment_table(const LedgerGraph& g, const TopologyPartition& p) {
    Table t{{"source", "target", "category", "component_id", "tx_count", "volume"}, {}};
    t.rows.reserve(g.link_count());
    for (std::size_t i = 0; i < g.link_count(); ++i) {
        const auto& l = g.links()[i];
        const auto& e = p.edges[i];
        t.rows.push_back({g.name(l.source), g.name(l.target), category_name(e.category),
                          e.component == kNoComponent ? Json(nullptr) : Json(e.component), l.record.count(),
                          l.record.volume.to_string()});
    }
    return t;
}

Table category_stats_table(const CategoryStats& stats) {
    Table t{{"category", "scc_count", "wcc_count", "node_count", "link_count", "tx_count", "volume"}, {}};
    CategoryRow total;
    for (auto c : kAllCategories) {
        const auto& r = stats[c];
        t.rows.push_back({category_name(c), r.scc_count, r.wcc_count, r.node_count, r.link_count, r.tx_count,
                          r.volume.to_string()});
        total.scc_count += r.scc_count;
        total.wcc_count += r.wcc_count;
        total.node_count += r.node_count;
        total.link_count += r.link_count;
        total.tx_count += r.tx_count;
        total.volume += r.volume;
    }
    t.rows.push_back({"total", total.scc_count, total.wcc_count, total.node_count, total.link_count, total.tx_count,
                      total.volume.to_string()});
    return t;
}

Table one_time_users_table(const OneTimeUserTable& ot) {
    Table t{{"category", "users_with_one_outgoing", "users_with_one_incoming", "outgoing_volume", "incoming_volume",
             "owned_volume_involving_one_time"},
            {}};
    auto row = [&](std::string_view name, const OneTimeRow& r) {
        t.rows.push_back({name, r.users_with_one_outgoing, r.users_with_one_incoming, r.outgoing_volume.to_string(),
                          r.incoming_volume.to_string(), r.owned_volume_involving_one_time.to_string()});
    };
    for (auto c : kAllCategories) row(category_name(c), ot[c]);
    row("total", ot.total());
    return t;
}

Table significance_table(std::span<const ModeCells> cells) {
    Table t{{"mode", "category", "feature", "empirical", "null_mean", "null_sd", "null_median", "null_q1", "null_q3",
             "null_iqr", "z", "robust_z", "ad_statistic", "ad_p_value", "normality", "preferred"},
            {}};
    for (const auto& [mode, list] : cells) {
        for (const auto& c : list) {
            const bool normal = !c.normality.rejected;
            t.rows.push_back({swap_mode_name(mode), category_name(c.category), c.feature, c.empirical, c.null.mean,
                              c.null.sd, c.null.median, c.null.q1, c.null.q3, c.null.iqr(), opt(c.z),
                              opt(c.robust_z), c.normality.a2_star, c.normality.p_value,
                              normal ? "not_rejected" : "rejected", c.z_preferred() ? "z" : "robust_z"});
        }
    }
    return t;
}

Table triad_census_table(const std::map<Category, TriadCensus>& census) {
    Table t;
    t.columns = {"category", "nodes"};
    for (std::size_t k = 0; k < kTriadCount; ++k) t.columns.emplace_back(triad_name(static_cast<Triad>(k)));
    t.columns.emplace_back("total");
    for (const auto& [cat, tc] : census) {
        std::vector<Json> row{category_name(cat), tc.nodes};
        for (auto n : tc.counts) row.emplace_back(n);
        row.emplace_back(tc.total());
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table operations_table(std::span<const RecirculationOp> ops, std::span<const Frequency> labels) {
    Table t{{"user", "first_in", "last_out", "duration_seconds", "n_in", "n_out", "frequency"}, {}};
    t.rows.reserve(ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto& op = ops[i];
        t.rows.push_back({op.user, format_iso8601(op.first_in), format_iso8601(op.last_out), op.duration().count(),
                          op.in_tx.size(), op.out_tx.size(),
                          i < labels.size() ? Json(frequency_name(labels[i])) : Json(nullptr)});
    }
    return t;
}

Json boundaries_json(const OpClassification& c) {
    Json j;
    j["operations"] = c.labels.size();
    j["q1_seconds"] = c.q1;
    j["q2_seconds"] = c.q2;
    j["q3_seconds"] = c.q3;
    j["min_seconds"] = c.min_duration;
    j["max_seconds"] = c.max_duration;
    j["mode_seconds"] = c.global_mode.seconds;
    j["mode_occurrences"] = c.global_mode.occurrences;
    Json classes = Json::array();
    for (auto f : kAllFrequencies) {
        const auto k = static_cast<std::size_t>(f);
        Json e;
        e["class"] = frequency_name(f);
        e["operations"] = c.ops_by_frequency[k];
        const auto& m = c.mode_by_frequency[k];
        e["mode_seconds"] = m ? Json(m->seconds) : Json(nullptr);
        e["mode_occurrences"] = m ? Json(m->occurrences) : Json(0);
        classes.push_back(std::move(e));
    }
    j["classes"] = std::move(classes);
    return j;
}

Table signatures_table(const LedgerGraph& g, const TopologyPartition& p,
                       std::span<const TemporalSignature> signatures) {
    Table t{{"user", "category", "signature"}, {}};
    for (const auto& s : signatures) {
        const auto node = g.find(s.user);
        t.rows.push_back({s.user, node ? Json(category_name(p.node_category(*node))) : Json(nullptr),
                          signature_label(s.mask)});
    }
    return t;
}

Table tx_crosstab_table(const RecirculationCrosstab& x) {
    Table t{{"category", "HFQ1", "HFQ2", "HFQ3", "LFQ3", "total"}, {}};
    for (auto c : kAllCategories) {
        const auto& r = x.tx_by_category[index_of(c)];
        t.rows.push_back({category_name(c), r[0], r[1], r[2], r[3], r[0] + r[1] + r[2] + r[3]});
    }
    return t;
}

Table user_crosstab_table(const RecirculationCrosstab& x) {
    Table t;
    t.columns = {"category"};
    for (SignatureMask m = 1; m <= kAllFrequencyMask; ++m) t.columns.push_back(signature_label(m));
    t.columns.emplace_back("total");
    for (auto c : kAllCategories) {
        if (!is_node_category(c)) continue;
        const auto& r = x.users_by_category[index_of(c)];
        std::vector<Json> row{category_name(c)};
        std::size_t total = 0;
        for (SignatureMask m = 1; m <= kAllFrequencyMask; ++m) {
            row.emplace_back(r[m]);
            total += r[m];
        }
        row.emplace_back(total);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Json coverage_json(const RecirculationCoverage& c) {
    Json j;
    j["operations"] = c.operations;
    j["recirculating_users"] = c.recirculating_users;
    j["total_users"] = c.total_users;
    j["user_share"] = c.user_share();
    j["tx_in_operations"] = c.tx_in_operations;
    j["tx_counted_twice"] = c.tx_counted_twice;
    j["total_tx"] = c.total_tx;
    j["tx_share"] = c.tx_share();
    j["volume_in_operations"] = c.volume_in_operations.to_string();
    j["total_volume"] = c.total_volume.to_string();
    j["volume_share"] = c.volume_share();
    return j;
}

Json strategy_json(const StrategySignalReport& r) {
    Json j;
    j["one_time_collector_share"] = r.one_time_collector_share;
    j["one_time_collector_volume"] = r.one_time_collector_volume.to_string();
    j["dag_collector_volume_share"] = r.dag_collector_volume_share;
    j["dag_collector_volume"] = r.dag_collector_volume.to_string();
    j["hfq1_only_user_share"] = r.hfq1_only_user_share;
    j["hfq1_only_users"] = r.hfq1_only_users;
    j["recirculating_users"] = r.recirculating_users;
    j["total_volume"] = r.total_volume.to_string();
    Json by = Json::object();
    for (auto c : kAllCategories) {
        if (!is_node_category(c)) continue;
        Json e;
        e["users"] = r.hfq1_only_by_category[index_of(c)];
        e["share"] = r.hfq1_only_category_share(c);
        by[std::string(category_name(c))] = std::move(e);
    }
    j["hfq1_only_by_category"] = std::move(by);
    return j;
}

Table strategy_table(const StrategySignalReport& r) {
    Table t{{"metric", "value"}, {}};
    t.rows.push_back({"one_time_collector_share", r.one_time_collector_share});
    t.rows.push_back({"one_time_collector_volume", r.one_time_collector_volume.to_string()});
    t.rows.push_back({"dag_collector_volume_share", r.dag_collector_volume_share});
    t.rows.push_back({"dag_collector_volume", r.dag_collector_volume.to_string()});
    t.rows.push_back({"hfq1_only_user_share", r.hfq1_only_user_share});
    t.rows.push_back({"hfq1_only_users", r.hfq1_only_users});
    t.rows.push_back({"recirculating_users", r.recirculating_users});
    t.rows.push_back({"total_volume", r.total_volume.to_string()});
    for (auto c : kAllCategories) {
        if (!is_node_category(c)) continue;
        t.rows.push_back({"hfq1_only_share." + std::string(category_name(c)), r.hfq1_only_category_share(c)});
    }
    return t;
}

} // namespace ledgertopo
