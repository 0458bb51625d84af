#pragma once

#include <array>

#include "ledgertopo/recirculation.hpp"
#include "ledgertopo/topology.hpp"

namespace ledgertopo {

/// Summary signals for account-farming and fast-churn behaviour, assembled
/// from tables the other stages already produce.
struct StrategySignalReport {
    /// Outgoing volume of one-time senders in in-single-node, dag0 and dagTin, over total volume.
    double one_time_collector_share = 0.0;
    Amount one_time_collector_volume;

    /// dagTin owned volume not touching a one-time user, over total volume.
    double dag_collector_volume_share = 0.0;
    Amount dag_collector_volume;

    /// Recirculating users whose only frequency class is HFQ1, over all recirculating users.
    double hfq1_only_user_share = 0.0;
    std::size_t hfq1_only_users = 0;
    std::size_t recirculating_users = 0;
    std::array<std::size_t, kCategoryCount> hfq1_only_by_category{};

    Amount total_volume;

    /// Fraction of the HFQ1-only users that sit in category c.
    double hfq1_only_category_share(Category c) const {
        return hfq1_only_users ? double(hfq1_only_by_category[index_of(c)]) / double(hfq1_only_users) : 0.0;
    }
};

StrategySignalReport strategy_report(const CategoryStats& stats, const OneTimeUserTable& one_time,
                                     const RecirculationCrosstab& recirculation, Amount total_volume);

} // namespace ledgertopo
