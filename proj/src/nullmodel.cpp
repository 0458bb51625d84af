#include "ledgertopo/nullmodel.hpp"

#include <numeric>
#include <stdexcept>

namespace ledgertopo {

namespace {

enum class Column { Source, Target };

// Fisher-Yates over the chosen column restricted to the positions in `pool`.
void shuffle_column(std::vector<Endpoints>& ep, const std::vector<std::size_t>& pool, Column col, SeededRng& rng) {
    auto value = [&](std::size_t i) -> NodeId& { return col == Column::Source ? ep[i].source : ep[i].target; };
    for (std::size_t k = pool.size(); k-- > 1;) {
        const std::size_t j = rng.below(k + 1);
        std::swap(value(pool[k]), value(pool[j]));
    }
}

void repair_self_loops(std::vector<Endpoints>& ep, const std::vector<std::size_t>& pool, Column col, SeededRng& rng,
                       std::uint64_t seed, std::size_t max_attempts) {
    for (std::size_t i : pool) {
        if (ep[i].source != ep[i].target) continue;
        bool fixed = false;
        for (std::size_t attempt = 0; attempt < max_attempts && !fixed; ++attempt) {
            const std::size_t j = pool[rng.below(pool.size())];
            if (j == i) continue;
            if (col == Column::Target) {
                if (ep[i].source != ep[j].target && ep[j].source != ep[i].target) {
                    std::swap(ep[i].target, ep[j].target);
                    fixed = true;
                }
            } else {
                if (ep[j].source != ep[i].target && ep[i].source != ep[j].target) {
                    std::swap(ep[i].source, ep[j].source);
                    fixed = true;
                }
            }
        }
        if (!fixed) throw RandomizeError(seed, i);
    }
}

} // namespace

std::string_view swap_mode_name(SwapMode mode) {
    switch (mode) {
    case SwapMode::TargetSwap:
        return "target";
    case SwapMode::SourceSwap:
        return "source";
    case SwapMode::BothSwap:
        return "both";
    }
    return "?";
}

std::optional<SwapMode> swap_mode_from_name(std::string_view name) {
    for (auto m : kAllSwapModes)
        if (swap_mode_name(m) == name) return m;
    return std::nullopt;
}

std::vector<Endpoints> permute_endpoints(const LedgerGraph& g, SwapMode mode, std::uint64_t seed,
                                         std::size_t max_repair_attempts) {
    std::vector<Endpoints> ep;
    ep.reserve(g.link_count());
    for (const auto& l : g.links()) ep.push_back({l.source, l.target});
    if (ep.size() < 2) return ep;

    SeededRng rng(seed);
    std::vector<std::size_t> source_pool, target_pool;
    switch (mode) {
    case SwapMode::TargetSwap:
        target_pool.resize(ep.size());
        std::iota(target_pool.begin(), target_pool.end(), 0);
        break;
    case SwapMode::SourceSwap:
        source_pool.resize(ep.size());
        std::iota(source_pool.begin(), source_pool.end(), 0);
        break;
    case SwapMode::BothSwap:
        for (std::size_t i = 0; i < ep.size(); ++i) (rng.coin() ? source_pool : target_pool).push_back(i);
        break;
    }
    shuffle_column(ep, source_pool, Column::Source, rng);
    shuffle_column(ep, target_pool, Column::Target, rng);
    repair_self_loops(ep, source_pool, Column::Source, rng, seed, max_repair_attempts);
    repair_self_loops(ep, target_pool, Column::Target, rng, seed, max_repair_attempts);
    return ep;
}

LedgerGraph randomize(const LedgerGraph& g, SwapMode mode, std::uint64_t seed, std::size_t max_repair_attempts) {
    if (g.link_count() < 2) return g;
    const auto ep = permute_endpoints(g, mode, seed, max_repair_attempts);
    std::vector<Link> links;
    links.reserve(ep.size());
    for (std::size_t i = 0; i < ep.size(); ++i) links.push_back(Link{ep[i].source, ep[i].target, g.links()[i].record});
    return LedgerGraph(g.transaction_table(), g.names(), std::move(links), g.self_transfers_dropped());
}

std::uint64_t replica_seed(std::uint64_t master, std::size_t index, unsigned attempt) {
    const std::uint64_t base = derive_seed(master, index);
    return attempt == 0 ? base : derive_seed(base, attempt);
}

LedgerGraph make_replica(const LedgerGraph& g, const EnsembleSpec& spec, std::size_t index) {
    for (unsigned attempt = 0;; ++attempt) {
        try {
            return randomize(g, spec.mode, replica_seed(spec.master_seed, index, attempt), spec.max_repair_attempts);
        } catch (const RandomizeError&) {
            if (attempt == kReplicaRetries) throw;
        }
    }
}

std::vector<CategoryStats> run_ensemble(const LedgerGraph& g, const EnsembleSpec& spec, unsigned jobs) {
    return map_replicas(g, spec, jobs,
                        [](const LedgerGraph& r, const TopologyPartition& p) { return category_stats(r, p); });
}

std::string_view feature_name(Feature f) {
    switch (f) {
    case Feature::WccCount:
        return "wcc_count";
    case Feature::NodeCount:
        return "node_count";
    case Feature::LinkCount:
        return "link_count";
    case Feature::TxCount:
        return "tx_count";
    case Feature::Volume:
        return "volume";
    }
    return "?";
}

double feature_value(const CategoryRow& row, Feature f) {
    switch (f) {
    case Feature::WccCount:
        return static_cast<double>(row.wcc_count);
    case Feature::NodeCount:
        return static_cast<double>(row.node_count);
    case Feature::LinkCount:
        return static_cast<double>(row.link_count);
    case Feature::TxCount:
        return static_cast<double>(row.tx_count);
    case Feature::Volume:
        return row.volume.to_double();
    }
    return 0.0;
}

SignificanceCell score_cell(Category category, std::string feature, double empirical, std::span<const double> null) {
    if (null.size() < kMinEnsembleForSignificance)
        throw std::invalid_argument("significance needs at least " + std::to_string(kMinEnsembleForSignificance) +
                                    " null samples, got " + std::to_string(null.size()));
    SignificanceCell cell;
    cell.category = category;
    cell.feature = std::move(feature);
    cell.empirical = empirical;
    cell.null = stats::summarize(null);
    cell.z = stats::z_score(empirical, cell.null);
    cell.robust_z = stats::robust_z_score(empirical, cell.null);
    cell.normality = stats::anderson_darling_normal(null);
    return cell;
}

std::vector<SignificanceCell> significance(const CategoryStats& empirical, std::span<const CategoryStats> ensemble) {
    std::vector<SignificanceCell> cells;
    std::vector<double> null(ensemble.size());
    for (auto cat : kAllCategories) {
        for (auto f : kAllFeatures) {
            // A category absent from a replica has an all-zero row, so it contributes 0.
            for (std::size_t i = 0; i < ensemble.size(); ++i) null[i] = feature_value(ensemble[i][cat], f);
            cells.push_back(score_cell(cat, std::string(feature_name(f)), feature_value(empirical[cat], f), null));
        }
    }
    return cells;
}

} // namespace ledgertopo
