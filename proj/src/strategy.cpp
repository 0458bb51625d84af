#include "ledgertopo/strategy.hpp"

namespace ledgertopo {

namespace {

double share(Amount part, Amount whole) {
    return whole.micros() > 0 ? static_cast<double>(part.micros()) / static_cast<double>(whole.micros()) : 0.0;
}

} // namespace

StrategySignalReport strategy_report(const CategoryStats& stats, const OneTimeUserTable& one_time,
                                     const RecirculationCrosstab& recirculation, Amount total_volume) {
    StrategySignalReport r;
    r.total_volume = total_volume;

    for (auto c : {Category::InSingleNode, Category::Dag0, Category::DagTin})
        r.one_time_collector_volume += one_time[c].outgoing_volume;
    r.one_time_collector_share = share(r.one_time_collector_volume, total_volume);

    r.dag_collector_volume =
        stats[Category::DagTin].volume - one_time[Category::DagTin].owned_volume_involving_one_time;
    r.dag_collector_volume_share = share(r.dag_collector_volume, total_volume);

    constexpr SignatureMask kHfq1Only = 1u << static_cast<unsigned>(Frequency::HFQ1);
    for (auto c : kAllCategories) {
        const auto& row = recirculation.users_by_category[index_of(c)];
        for (std::size_t mask = 1; mask < row.size(); ++mask) r.recirculating_users += row[mask];
        r.hfq1_only_by_category[index_of(c)] = row[kHfq1Only];
        r.hfq1_only_users += row[kHfq1Only];
    }
    r.hfq1_only_user_share =
        r.recirculating_users ? double(r.hfq1_only_users) / double(r.recirculating_users) : 0.0;
    return r;
}

} // namespace ledgertopo
