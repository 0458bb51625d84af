#include "ledgertopo/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "ledgertopo/csv.hpp"
#include "ledgertopo/rng.hpp"

namespace ledgertopo {

namespace {

std::string label(const char* prefix, std::size_t k, const char* suffix = "") {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%05zu%s", prefix, k, suffix);
    return buf;
}

struct Builder {
    const ScenarioSpec& spec;
    SeededRng rng;
    std::vector<std::pair<std::string, std::string>> arcs;
    SyntheticLedger out;

    void node(const std::string& name, Category c) { out.truth[name] = c; }
    void arc(const std::string& a, const std::string& b) { arcs.emplace_back(a, b); }
};

} // namespace

ScenarioSpec demo_scenario() {
    ScenarioSpec s;
    s.communities = 6;
    s.community_size = 4;
    s.chord_probability = 0.3;
    s.collector_stars = 3;
    s.star_leaves = 3;
    s.dyads = 3;
    s.feeders = 6;
    s.sinks = 5;
    s.bridges = 2;
    s.dag_tails = 2;
    s.dag_heads = 2;
    s.dag_chains = 2;
    s.max_tx_per_link = 4;
    return s;
}

SyntheticLedger generate_synthetic(const ScenarioSpec& spec, std::uint64_t seed) {
    if (spec.communities > 0 && spec.community_size < 2)
        throw std::invalid_argument("generate_synthetic: community_size must be at least 2");
    const bool attaches = spec.feeders || spec.sinks || spec.bridges || spec.dag_tails || spec.dag_heads ||
                          spec.dag_chains;
    if (attaches && spec.communities == 0)
        throw std::invalid_argument("generate_synthetic: attachments need at least one community");
    if ((spec.bridges || spec.dag_chains) && spec.communities < 2)
        throw std::invalid_argument("generate_synthetic: bridges and chains need at least two communities");
    if (spec.collector_stars && spec.star_leaves < 2)
        throw std::invalid_argument("generate_synthetic: a collector star needs at least two leaves");
    if (spec.max_tx_per_link < 1) throw std::invalid_argument("generate_synthetic: max_tx_per_link must be >= 1");

    Builder b{spec, SeededRng(seed), {}, {}};
    auto member = [&](std::size_t c, std::size_t m) { return label("c", c, ("." + label("", m)).c_str()); };
    auto random_member = [&](std::size_t c) { return member(c, b.rng.below(spec.community_size)); };

    std::vector<char> receives(spec.communities, 0), sends(spec.communities, 0);
    for (std::size_t c = 0; c < spec.communities; ++c) {
        for (std::size_t m = 0; m < spec.community_size; ++m)
            b.arc(member(c, m), member(c, (m + 1) % spec.community_size));
        for (std::size_t i = 0; i < spec.community_size; ++i)
            for (std::size_t j = 0; j < spec.community_size; ++j) {
                if (i == j || j == (i + 1) % spec.community_size) continue;
                if (b.rng.unit() < spec.chord_probability) b.arc(member(c, i), member(c, j));
            }
    }
    for (std::size_t k = 0; k < spec.collector_stars; ++k) {
        const auto hub = label("star", k, ".hub");
        b.node(hub, Category::Dag0);
        for (std::size_t leaf = 0; leaf < spec.star_leaves; ++leaf) {
            const auto name = label("star", k, (".leaf" + label("", leaf)).c_str());
            b.node(name, Category::Dag0);
            b.arc(name, hub);
        }
    }
    for (std::size_t k = 0; k < spec.dyads; ++k) {
        b.node(label("dyad", k, ".a"), Category::Dag0);
        b.node(label("dyad", k, ".b"), Category::Dag0);
        b.arc(label("dyad", k, ".a"), label("dyad", k, ".b"));
    }
    for (std::size_t k = 0; k < spec.feeders; ++k) {
        const std::size_t c = b.rng.below(spec.communities);
        b.node(label("feed", k), Category::InSingleNode);
        b.arc(label("feed", k), random_member(c));
        receives[c] = 1;
    }
    for (std::size_t k = 0; k < spec.sinks; ++k) {
        const std::size_t c = b.rng.below(spec.communities);
        b.node(label("sink", k), Category::OutSingleNode);
        b.arc(random_member(c), label("sink", k));
        sends[c] = 1;
    }
    // Bridges and chains only run from a lower to a higher community index so
    // they can never close a cycle between communities.
    auto ordered_pair = [&] {
        std::size_t i = b.rng.below(spec.communities);
        std::size_t j = b.rng.below(spec.communities - 1);
        if (j >= i) ++j;
        return std::pair{std::min(i, j), std::max(i, j)};
    };
    for (std::size_t k = 0; k < spec.bridges; ++k) {
        const auto [i, j] = ordered_pair();
        b.node(label("bridge", k), Category::BridgeScc);
        b.arc(random_member(i), label("bridge", k));
        b.arc(label("bridge", k), random_member(j));
    }
    for (std::size_t k = 0; k < spec.dag_tails; ++k) {
        const std::size_t c = b.rng.below(spec.communities);
        b.node(label("tail", k, ".a"), Category::DagTin);
        b.node(label("tail", k, ".b"), Category::DagTin);
        b.arc(label("tail", k, ".a"), label("tail", k, ".b"));
        b.arc(label("tail", k, ".b"), random_member(c));
        receives[c] = 1;
    }
    for (std::size_t k = 0; k < spec.dag_heads; ++k) {
        const std::size_t c = b.rng.below(spec.communities);
        b.node(label("head", k, ".a"), Category::DagTout);
        b.node(label("head", k, ".b"), Category::DagTout);
        b.arc(random_member(c), label("head", k, ".a"));
        b.arc(label("head", k, ".a"), label("head", k, ".b"));
        sends[c] = 1;
    }
    for (std::size_t k = 0; k < spec.dag_chains; ++k) {
        const auto [i, j] = ordered_pair();
        b.node(label("chain", k, ".a"), Category::DagTmix);
        b.node(label("chain", k, ".b"), Category::DagTmix);
        b.arc(random_member(i), label("chain", k, ".a"));
        b.arc(label("chain", k, ".a"), label("chain", k, ".b"));
        b.arc(label("chain", k, ".b"), random_member(j));
        sends[i] = 1;
        receives[j] = 1;
    }
    for (std::size_t c = 0; c < spec.communities; ++c) {
        Category cat = Category::Scc0;
        if (receives[c] && sends[c]) cat = Category::SccTmix;
        else if (receives[c]) cat = Category::SccTin;
        else if (sends[c]) cat = Category::SccTout;
        for (std::size_t m = 0; m < spec.community_size; ++m) b.node(member(c, m), cat);
    }

    const auto horizon = static_cast<std::uint64_t>(std::max<std::int64_t>(1, spec.horizon.count()));
    auto& txs = b.out.transactions;
    for (const auto& [s, t] : b.arcs) {
        const std::size_t k = 1 + b.rng.below(spec.max_tx_per_link);
        for (std::size_t r = 0; r < k; ++r) {
            const auto when = spec.start + Seconds{static_cast<std::int64_t>(b.rng.below(horizon))};
            const auto cents = static_cast<std::int64_t>(100 + b.rng.below(49901));
            txs.push_back(Transaction{"", when, s, t, Amount::from_micros(cents * 10'000), "STANDARD"});
        }
    }
    std::stable_sort(txs.begin(), txs.end(),
                     [](const Transaction& x, const Transaction& y) { return x.timestamp < y.timestamp; });
    for (std::size_t i = 0; i < txs.size(); ++i) txs[i].tx_id = label("tx", i + 1);
    return std::move(b.out);
}

void write_ground_truth(std::ostream& out, const std::map<std::string, Category>& truth) {
    csv::write_row(out, {"node_id", "category"});
    for (const auto& [node, cat] : truth) csv::write_row(out, {node, std::string(category_name(cat))});
}

} // namespace ledgertopo
