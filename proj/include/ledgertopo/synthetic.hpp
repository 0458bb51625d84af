#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ledgertopo/ledger.hpp"
#include "ledgertopo/topology.hpp"

namespace ledgertopo {

/// Planted structures for a synthetic ledger. Attachments pick a community
/// uniformly at random and one of its members uniformly at random.
struct ScenarioSpec {
    std::size_t communities = 0;       ///< disjoint strongly connected groups (ring plus chords)
    std::size_t community_size = 3;
    double chord_probability = 0.0;    ///< extra arc probability per ordered member pair
    std::size_t collector_stars = 0;   ///< isolated k -> 1 stars (dag0)
    std::size_t star_leaves = 2;
    std::size_t dyads = 0;             ///< isolated a -> b pairs (dag0)
    std::size_t feeders = 0;           ///< one-link senders into a community (in-single-node)
    std::size_t sinks = 0;             ///< one-link receivers from a community (out-single-node)
    std::size_t bridges = 0;           ///< nodes receiving from community i, sending to j > i (bridge_scc)
    std::size_t dag_tails = 0;         ///< a -> b -> community (dagTin)
    std::size_t dag_heads = 0;         ///< community -> a -> b (dagTout)
    std::size_t dag_chains = 0;        ///< community i -> a -> b -> community j > i (dagTmix)
    std::size_t max_tx_per_link = 1;   ///< each link carries 1..max transactions
    Instant start = Instant{Seconds{1579910400}}; // 2020-01-25T00:00:00Z
    Seconds horizon = Seconds{30 * 86400};
};

struct SyntheticLedger {
    std::vector<Transaction> transactions;      ///< time ordered
    std::map<std::string, Category> truth;      ///< planted node category per account
};

/// Small mixed scenario behind the bundled demo ledger (about 200 transactions).
ScenarioSpec demo_scenario();

/// Deterministic for a given (spec, seed). Throws std::invalid_argument when
/// attachments are requested without communities to attach to.
SyntheticLedger generate_synthetic(const ScenarioSpec& spec, std::uint64_t seed);

/// CSV "node_id,category".
void write_ground_truth(std::ostream& out, const std::map<std::string, Category>& truth);

} // namespace ledgertopo
