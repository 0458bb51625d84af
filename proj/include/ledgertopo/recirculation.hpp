#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ledgertopo/graph.hpp"
#include "ledgertopo/topology.hpp"

namespace ledgertopo {

/// One window of a user's activity: from the first incoming transaction to
/// the last outgoing one before the next incoming transaction arrives.
struct RecirculationOp {
    std::string user;
    Instant first_in;
    Instant last_out;
    std::vector<TxIndex> in_tx;  ///< indices into the transaction list given to extract_ops
    std::vector<TxIndex> out_tx;

    Seconds duration() const { return last_out - first_in; }
    friend bool operator==(const RecirculationOp&, const RecirculationOp&) = default;
};

/// Per-user event order: timestamp, then incoming before outgoing, then tx_id.
/// Self-transfers are ignored. Operations are returned grouped by user
/// (ascending account id) and in time order within a user.
std::vector<RecirculationOp> extract_ops(std::span<const Transaction> txs);

enum class Frequency : std::uint8_t { HFQ1, HFQ2, HFQ3, LFQ3 };

inline constexpr std::array<Frequency, 4> kAllFrequencies = {Frequency::HFQ1, Frequency::HFQ2, Frequency::HFQ3,
                                                             Frequency::LFQ3};

std::string_view frequency_name(Frequency f);

struct DurationMode {
    std::int64_t seconds = 0;
    std::size_t occurrences = 0;
};

struct OpClassification {
    double q1 = 0.0; ///< seconds, linear-interpolation quartiles of op durations
    double q2 = 0.0;
    double q3 = 0.0;
    std::vector<Frequency> labels; ///< per op
    std::array<std::optional<DurationMode>, 4> mode_by_frequency;
    std::array<std::size_t, 4> ops_by_frequency{};
    DurationMode global_mode;
    std::int64_t min_duration = 0;
    std::int64_t max_duration = 0;
};

Frequency frequency_of(double duration_seconds, double q1, double q2, double q3);

/// Throws std::invalid_argument on an empty list.
OpClassification classify_ops(std::span<const RecirculationOp> ops);

/// Bit set over Frequency (HFQ1 = bit 0 ... LFQ3 = bit 3).
using SignatureMask = std::uint8_t;
inline constexpr SignatureMask kAllFrequencyMask = 0x0F;

/// "HFQ1", "HFQ1-LFQ3", ...
std::string signature_label(SignatureMask mask);

struct TemporalSignature {
    std::string user;
    SignatureMask mask = 0;
};

/// One signature per user with at least one operation, ordered by user.
std::vector<TemporalSignature> user_signatures(std::span<const RecirculationOp> ops,
                                               std::span<const Frequency> labels);

struct RecirculationCoverage {
    std::size_t operations = 0;
    std::size_t recirculating_users = 0;
    std::size_t total_users = 0;
    std::size_t tx_in_operations = 0; ///< distinct transactions in at least one op
    std::size_t tx_counted_twice = 0; ///< outgoing of one op and incoming of another
    std::size_t total_tx = 0;
    Amount volume_in_operations;
    Amount total_volume;

    double tx_share() const { return total_tx ? double(tx_in_operations) / double(total_tx) : 0.0; }
    double volume_share() const {
        return total_volume.micros() ? double(volume_in_operations.micros()) / double(total_volume.micros()) : 0.0;
    }
    double user_share() const { return total_users ? double(recirculating_users) / double(total_users) : 0.0; }
};

struct RecirculationCrosstab {
    /// [topological category of the carrying link][frequency] -> memberships
    std::array<std::array<std::size_t, 4>, kCategoryCount> tx_by_category{};
    /// [node category of the user][signature mask] -> users
    std::array<std::array<std::size_t, 16>, kCategoryCount> users_by_category{};
    RecirculationCoverage coverage;
};

/// `ops` must come from extract_ops(g.transactions()).
RecirculationCrosstab crosstab(const LedgerGraph& g, const TopologyPartition& p, std::span<const RecirculationOp> ops,
                               std::span<const Frequency> labels, std::span<const TemporalSignature> signatures);

} // namespace ledgertopo
