#include "ledgertopo/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <unordered_set>

#include "ledgertopo/csv.hpp"
#include "ledgertopo/errors.hpp"

namespace ledgertopo {

namespace {

std::optional<std::size_t> locate(const std::vector<std::string>& header, const std::string& name, bool required,
                                  const char* field) {
    if (name.empty()) {
        if (required) throw ConfigError(std::string("required field '") + field + "' has no column mapping");
        return std::nullopt;
    }
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        if (!required) return std::nullopt;
        throw ConfigError(std::string("column '") + name + "' (mapped to " + field + ") not found in header");
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::string row_id(std::size_t line) {
    std::string digits = std::to_string(line);
    if (digits.size() < 10) digits.insert(0, 10 - digits.size(), '0');
    return "row-" + digits;
}

} // namespace

ColumnMapping ColumnMapping::sarafu() {
    ColumnMapping m;
    m.tx_id = "id";
    m.timestamp = "timeset";
    m.source = "source";
    m.target = "target";
    m.amount = "weight";
    m.subtype = "transfer_subtype";
    return m;
}

bool time_order(const Transaction& a, const Transaction& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.tx_id < b.tx_id;
}

std::vector<Transaction> parse_ledger(std::istream& in, const ColumnMapping& schema, const FilterSpec& filter,
                                      IngestDiagnostics* diagnostics) {
    csv::Reader reader(in);
    std::vector<std::string> header;
    if (!reader.next(header)) throw DataError("empty input: missing header row");
    for (auto& h : header) {
        while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
        while (!h.empty() && (h.front() == ' ' || h.front() == '\t')) h.erase(h.begin());
    }

    const auto col_id = locate(header, schema.tx_id, false, "tx_id");
    const auto col_time = *locate(header, schema.timestamp, true, "timestamp");
    const auto col_source = *locate(header, schema.source, true, "source");
    const auto col_target = *locate(header, schema.target, true, "target");
    const auto col_amount = *locate(header, schema.amount, true, "amount");
    const auto col_subtype = locate(header, schema.subtype, false, "subtype");
    if (!filter.standard_subtype.empty() && !col_subtype)
        throw ConfigError("subtype filter '" + filter.standard_subtype + "' set but the ledger has no subtype column " +
                          "(set filter.subtype empty to accept every row)");

    std::size_t needed = std::max({col_time, col_source, col_target, col_amount});
    if (col_id) needed = std::max(needed, *col_id);
    if (col_subtype) needed = std::max(needed, *col_subtype);

    IngestDiagnostics diag;
    std::vector<Transaction> out;
    std::unordered_set<std::string> seen;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        const std::size_t row = reader.line();
        ++diag.rows_read;
        if (fields.size() <= needed)
            throw DataError("expected at least " + std::to_string(needed + 1) + " fields, found " +
                                std::to_string(fields.size()),
                            row);

        Transaction tx;
        tx.tx_id = col_id ? fields[*col_id] : row_id(row);
        if (tx.tx_id.empty()) throw DataError("empty transaction id", row);

        auto ts = parse_timestamp(fields[col_time], schema.timestamp_format);
        if (!ts) throw DataError("unparsable timestamp '" + fields[col_time] + "'", row);
        tx.timestamp = *ts;

        tx.source = fields[col_source];
        tx.target = fields[col_target];
        if (tx.source.empty() || tx.target.empty()) throw DataError("empty source or target account", row);

        auto amount = Amount::parse(fields[col_amount]);
        if (!amount) throw DataError("unparsable amount '" + fields[col_amount] + "'", row);
        if (*amount < Amount{}) throw DataError("negative amount '" + fields[col_amount] + "'", row);
        tx.amount = *amount;
        if (col_subtype) tx.subtype = fields[*col_subtype];

        const bool subtype_ok = filter.standard_subtype.empty() || tx.subtype == filter.standard_subtype;
        const bool accounts_ok =
            !filter.excluded_accounts.contains(tx.source) && !filter.excluded_accounts.contains(tx.target);
        if (!subtype_ok || !accounts_ok) {
            ++diag.rows_filtered;
            continue;
        }
        if (!seen.insert(tx.tx_id).second) {
            ++diag.duplicate_tx_ids;
            continue;
        }
        out.push_back(std::move(tx));
    }

    std::stable_sort(out.begin(), out.end(), time_order);
    if (diagnostics) *diagnostics = diag;
    return out;
}

std::vector<Transaction> parse_ledger(const std::filesystem::path& path, const ColumnMapping& schema,
                                      const FilterSpec& filter, IngestDiagnostics* diagnostics) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open ledger file '" + path.string() + "'");
    return parse_ledger(in, schema, filter, diagnostics);
}

void write_ledger(std::ostream& out, const std::vector<Transaction>& txs) {
    csv::write_row(out, {"tx_id", "timestamp", "source", "target", "amount", "subtype"});
    for (const auto& tx : txs)
        csv::write_row(out, {tx.tx_id, format_iso8601(tx.timestamp), tx.source, tx.target, tx.amount.to_string(),
                             tx.subtype});
}

std::set<std::string> read_account_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open account list '" + path.string() + "'");
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t");
        ids.insert(line.substr(first, last - first + 1));
    }
    return ids;
}

} // namespace ledgertopo
