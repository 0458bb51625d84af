#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "ledgertopo/errors.hpp"
#include "ledgertopo/graph.hpp"
#include "ledgertopo/rng.hpp"
#include "ledgertopo/stats.hpp"
#include "ledgertopo/topology.hpp"

namespace ledgertopo {

enum class SwapMode { TargetSwap, SourceSwap, BothSwap };

inline constexpr std::array<SwapMode, 3> kAllSwapModes = {SwapMode::TargetSwap, SwapMode::SourceSwap,
                                                          SwapMode::BothSwap};

/// "target", "source", "both"
std::string_view swap_mode_name(SwapMode mode);
std::optional<SwapMode> swap_mode_from_name(std::string_view name);

struct EnsembleSpec {
    SwapMode mode = SwapMode::TargetSwap;
    std::size_t replicas = 1000;
    std::uint64_t master_seed = 0;
    std::size_t max_repair_attempts = 100;
};

/// Self-loop repair ran out of attempts for this seed.
class RandomizeError : public AnalysisError {
public:
    RandomizeError(std::uint64_t seed, std::size_t link)
        : AnalysisError("randomize: self-loop repair budget exhausted on link " + std::to_string(link) + " (seed " +
                        std::to_string(seed) + ")"),
          seed_(seed) {}
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

struct Endpoints {
    NodeId source;
    NodeId target;
    friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

/// Link endpoints after permutation and self-loop repair, before parallel
/// links are merged; entry i belongs to g.links()[i].
std::vector<Endpoints> permute_endpoints(const LedgerGraph& g, SwapMode mode, std::uint64_t seed,
                                         std::size_t max_repair_attempts = 100);

/// Replica whose links carry the original link records to permuted endpoints.
/// Links landing on the same ordered pair are merged.
LedgerGraph randomize(const LedgerGraph& g, SwapMode mode, std::uint64_t seed, std::size_t max_repair_attempts = 100);

inline constexpr unsigned kReplicaRetries = 3;

/// Seed for replica `index`, retry `attempt` (0 = first try).
std::uint64_t replica_seed(std::uint64_t master, std::size_t index, unsigned attempt = 0);

/// randomize() with up to kReplicaRetries retries on derived seeds.
LedgerGraph make_replica(const LedgerGraph& g, const EnsembleSpec& spec, std::size_t index);

/// Runs fn(replica_graph, replica_partition) for every replica, on up to
/// `jobs` threads. Results are ordered by replica index.
template <typename Fn>
auto map_replicas(const LedgerGraph& g, const EnsembleSpec& spec, unsigned jobs, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, const LedgerGraph&, const TopologyPartition&>> {
    using Result = std::invoke_result_t<Fn&, const LedgerGraph&, const TopologyPartition&>;
    if (spec.replicas < 1) throw std::invalid_argument("ensemble needs at least one replica");
    std::vector<Result> results(spec.replicas);
    std::vector<std::exception_ptr> errors(spec.replicas);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < spec.replicas;) {
            try {
                const LedgerGraph replica = make_replica(g, spec, i);
                results[i] = fn(replica, categorize(replica));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, spec.replicas));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

std::vector<CategoryStats> run_ensemble(const LedgerGraph& g, const EnsembleSpec& spec, unsigned jobs = 1);

enum class Feature { WccCount, NodeCount, LinkCount, TxCount, Volume };

inline constexpr std::array<Feature, 5> kAllFeatures = {Feature::WccCount, Feature::NodeCount, Feature::LinkCount,
                                                        Feature::TxCount, Feature::Volume};

/// "wcc_count", "node_count", "link_count", "tx_count", "volume"
std::string_view feature_name(Feature f);
double feature_value(const CategoryRow& row, Feature f);

struct SignificanceCell {
    Category category;
    std::string feature;
    double empirical = 0.0;
    stats::Summary null;
    std::optional<double> z;
    std::optional<double> robust_z;
    stats::AndersonDarling normality;

    /// Normality not rejected at 5%: the plain Z-score is the one to read.
    bool z_preferred() const { return !normality.rejected; }
};

inline constexpr std::size_t kMinEnsembleForSignificance = 8;

/// Scores one statistic against its null sample (at least 8 values).
SignificanceCell score_cell(Category category, std::string feature, double empirical, std::span<const double> null);

/// Every category x feature. Requires at least 8 replicas.
std::vector<SignificanceCell> significance(const CategoryStats& empirical, std::span<const CategoryStats> ensemble);

} // namespace ledgertopo
