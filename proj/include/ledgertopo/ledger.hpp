#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "ledgertopo/amount.hpp"
#include "ledgertopo/timestamp.hpp"

namespace ledgertopo {

struct Transaction {
    std::string tx_id;
    Instant timestamp;
    std::string source;
    std::string target;
    Amount amount;
    std::string subtype;

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

/// Logical field -> CSV header name. An empty name leaves an optional field
/// (tx_id, subtype) unmapped; timestamp, source, target and amount are required.
struct ColumnMapping {
    std::string tx_id = "tx_id";
    std::string timestamp = "timestamp";
    std::string source = "source";
    std::string target = "target";
    std::string amount = "amount";
    std::string subtype = "subtype";
    TimestampFormat timestamp_format = TimestampFormat::Auto;

    /// Column names of the public Sarafu 2020-2021 transaction export.
    static ColumnMapping sarafu();
};

struct FilterSpec {
    /// Rows whose subtype differs are dropped. Empty accepts every subtype.
    std::string standard_subtype = "STANDARD";
    /// Transactions touching any of these accounts are dropped.
    std::set<std::string> excluded_accounts;
};

struct IngestDiagnostics {
    std::size_t rows_read = 0;
    std::size_t rows_filtered = 0;
    std::size_t self_transfers_dropped = 0;
    std::size_t duplicate_tx_ids = 0;
};

/// Stable order used everywhere: (timestamp, tx_id).
bool time_order(const Transaction& a, const Transaction& b);

std::vector<Transaction> parse_ledger(std::istream& in, const ColumnMapping& schema, const FilterSpec& filter,
                                      IngestDiagnostics* diagnostics = nullptr);

std::vector<Transaction> parse_ledger(const std::filesystem::path& path, const ColumnMapping& schema,
                                      const FilterSpec& filter, IngestDiagnostics* diagnostics = nullptr);

/// Writes the normalized layout read back by a default ColumnMapping.
void write_ledger(std::ostream& out, const std::vector<Transaction>& txs);

/// One account id per line; blank lines and '#' comments ignored.
std::set<std::string> read_account_list(const std::filesystem::path& path);

} // namespace ledgertopo
