#include "ledgertopo/recirculation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "ledgertopo/stats.hpp"

namespace ledgertopo {

namespace {

struct Event {
    TxIndex tx;
    bool incoming;
};

DurationMode mode_of(std::vector<std::int64_t> values) {
    std::sort(values.begin(), values.end());
    DurationMode best;
    for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        if (j - i > best.occurrences) best = {values[i], j - i}; // strict '>' keeps the smallest on ties
        i = j;
    }
    return best;
}

} // namespace

std::vector<RecirculationOp> extract_ops(std::span<const Transaction> txs) {
    std::unordered_map<std::string_view, std::vector<Event>> events;
    for (TxIndex i = 0; i < txs.size(); ++i) {
        if (txs[i].source == txs[i].target) continue;
        events[txs[i].source].push_back({i, false});
        events[txs[i].target].push_back({i, true});
    }
    std::vector<std::string_view> users;
    users.reserve(events.size());
    for (const auto& [user, _] : events) users.push_back(user);
    std::sort(users.begin(), users.end());

    std::vector<RecirculationOp> ops;
    for (auto user : users) {
        auto& ev = events[user];
        std::sort(ev.begin(), ev.end(), [&](const Event& a, const Event& b) {
            const auto& ta = txs[a.tx];
            const auto& tb = txs[b.tx];
            if (ta.timestamp != tb.timestamp) return ta.timestamp < tb.timestamp;
            if (a.incoming != b.incoming) return a.incoming;
            return ta.tx_id < tb.tx_id;
        });

        std::optional<RecirculationOp> open;
        for (const auto& e : ev) {
            const auto& tx = txs[e.tx];
            if (e.incoming) {
                if (open && !open->out_tx.empty()) {
                    ops.push_back(std::move(*open));
                    open.reset();
                }
                if (!open) {
                    open.emplace();
                    open->user = std::string(user);
                    open->first_in = tx.timestamp;
                }
                open->in_tx.push_back(e.tx);
            } else if (open) {
                open->out_tx.push_back(e.tx);
                open->last_out = tx.timestamp;
            }
            // outgoing before the first incoming belongs to no operation
        }
        if (open && !open->out_tx.empty()) ops.push_back(std::move(*open));
    }
    return ops;
}

std::string_view frequency_name(Frequency f) {
    switch (f) {
    case Frequency::HFQ1:
        return "HFQ1";
    case Frequency::HFQ2:
        return "HFQ2";
    case Frequency::HFQ3:
        return "HFQ3";
    case Frequency::LFQ3:
        return "LFQ3";
    }
    return "?";
}

Frequency frequency_of(double d, double q1, double q2, double q3) {
    if (d <= q1) return Frequency::HFQ1;
    if (d <= q2) return Frequency::HFQ2;
    if (d <= q3) return Frequency::HFQ3;
    return Frequency::LFQ3;
}

OpClassification classify_ops(std::span<const RecirculationOp> ops) {
    if (ops.empty()) throw std::invalid_argument("classify_ops: no operations");
    std::vector<double> durations;
    std::vector<std::int64_t> seconds;
    durations.reserve(ops.size());
    for (const auto& op : ops) {
        seconds.push_back(op.duration().count());
        durations.push_back(static_cast<double>(seconds.back()));
    }
    OpClassification c;
    std::vector<double> sorted = durations;
    std::sort(sorted.begin(), sorted.end());
    c.q1 = stats::quantile_sorted(sorted, 0.25);
    c.q2 = stats::quantile_sorted(sorted, 0.50);
    c.q3 = stats::quantile_sorted(sorted, 0.75);
    c.min_duration = static_cast<std::int64_t>(sorted.front());
    c.max_duration = static_cast<std::int64_t>(sorted.back());

    std::array<std::vector<std::int64_t>, 4> per_frequency;
    c.labels.reserve(ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Frequency f = frequency_of(durations[i], c.q1, c.q2, c.q3);
        c.labels.push_back(f);
        per_frequency[static_cast<std::size_t>(f)].push_back(seconds[i]);
    }
    for (std::size_t k = 0; k < 4; ++k) {
        c.ops_by_frequency[k] = per_frequency[k].size();
        if (!per_frequency[k].empty()) c.mode_by_frequency[k] = mode_of(per_frequency[k]);
    }
    c.global_mode = mode_of(seconds);
    return c;
}

std::string signature_label(SignatureMask mask) {
    std::string out;
    for (auto f : kAllFrequencies) {
        if (!(mask & (1u << static_cast<unsigned>(f)))) continue;
        if (!out.empty()) out += '-';
        out += frequency_name(f);
    }
    return out;
}

std::vector<TemporalSignature> user_signatures(std::span<const RecirculationOp> ops,
                                               std::span<const Frequency> labels) {
    if (ops.size() != labels.size()) throw std::invalid_argument("user_signatures: one label per op required");
    std::map<std::string_view, SignatureMask> masks;
    for (std::size_t i = 0; i < ops.size(); ++i)
        masks[ops[i].user] |= static_cast<SignatureMask>(1u << static_cast<unsigned>(labels[i]));
    std::vector<TemporalSignature> out;
    out.reserve(masks.size());
    for (const auto& [user, mask] : masks) out.push_back({std::string(user), mask});
    return out;
}

RecirculationCrosstab crosstab(const LedgerGraph& g, const TopologyPartition& p, std::span<const RecirculationOp> ops,
                               std::span<const Frequency> labels, std::span<const TemporalSignature> signatures) {
    if (ops.size() != labels.size()) throw std::invalid_argument("crosstab: one label per op required");
    const auto& txs = g.transactions();
    std::vector<std::uint32_t> link_of(txs.size(), UINT32_MAX);
    for (std::uint32_t li = 0; li < g.link_count(); ++li)
        for (auto t : g.links()[li].record.tx) link_of[t] = li;

    RecirculationCrosstab out;
    std::vector<std::uint8_t> memberships(txs.size(), 0);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto f = static_cast<std::size_t>(labels[i]);
        for (const auto* list : {&ops[i].in_tx, &ops[i].out_tx}) {
            for (auto t : *list) {
                if (t >= txs.size() || link_of[t] == UINT32_MAX)
                    throw std::invalid_argument("crosstab: operation refers to a transaction outside the graph");
                ++out.tx_by_category[index_of(p.edges[link_of[t]].category)][f];
                ++memberships[t];
            }
        }
    }
    for (const auto& sig : signatures) {
        const auto node = g.find(sig.user);
        if (!node) throw std::invalid_argument("crosstab: unknown user '" + sig.user + "'");
        ++out.users_by_category[index_of(p.node_category(*node))][sig.mask & kAllFrequencyMask];
    }

    auto& cov = out.coverage;
    cov.operations = ops.size();
    cov.recirculating_users = signatures.size();
    cov.total_users = g.node_count();
    cov.total_tx = txs.size();
    cov.total_volume = g.totals().volume;
    for (std::size_t t = 0; t < txs.size(); ++t) {
        if (!memberships[t]) continue;
        ++cov.tx_in_operations;
        cov.tx_counted_twice += memberships[t] >= 2;
        cov.volume_in_operations += txs[t].amount;
    }
    return out;
}

} // namespace ledgertopo
