#include "ledgertopo/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ledgertopo {

namespace {

void build_csr(std::size_t n, const std::vector<Link>& links, bool outgoing, std::vector<std::uint32_t>& offsets,
               std::vector<std::uint32_t>& index) {
    offsets.assign(n + 1, 0);
    for (const auto& l : links) ++offsets[(outgoing ? l.source : l.target) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    index.resize(links.size());
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    // links are sorted by (source, target): outgoing lists come out ordered by
    // target; incoming lists are ordered by source because sources ascend.
    for (std::uint32_t i = 0; i < links.size(); ++i) {
        const NodeId key = outgoing ? links[i].source : links[i].target;
        index[cursor[key]++] = i;
    }
}

} // namespace

LedgerGraph::LedgerGraph() : transactions_(std::make_shared<const std::vector<Transaction>>()) {
    out_offsets_.assign(1, 0);
    in_offsets_.assign(1, 0);
}

LedgerGraph::LedgerGraph(std::shared_ptr<const std::vector<Transaction>> transactions, std::vector<std::string> names,
                         std::vector<Link> links, std::size_t self_transfers_dropped)
    : transactions_(std::move(transactions)), names_(std::move(names)), self_transfers_dropped_(self_transfers_dropped) {
    if (!transactions_) throw std::invalid_argument("LedgerGraph: null transaction table");
    if (!std::is_sorted(names_.begin(), names_.end()) ||
        std::adjacent_find(names_.begin(), names_.end()) != names_.end())
        throw std::invalid_argument("LedgerGraph: node names must be sorted and unique");

    const std::size_t n = names_.size();
    for (const auto& l : links) {
        if (l.source >= n || l.target >= n) throw std::invalid_argument("LedgerGraph: link endpoint out of range");
        if (l.source == l.target) throw std::invalid_argument("LedgerGraph: self-loop on " + names_[l.source]);
    }

    std::stable_sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
        return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    for (auto& l : links) {
        if (!links_.empty() && links_.back().source == l.source && links_.back().target == l.target) {
            auto& rec = links_.back().record;
            rec.tx.insert(rec.tx.end(), l.record.tx.begin(), l.record.tx.end());
            rec.volume += l.record.volume;
        } else {
            links_.push_back(std::move(l));
        }
    }

    build_csr(n, links_, true, out_offsets_, out_index_);
    build_csr(n, links_, false, in_offsets_, in_index_);
    for (NodeId v = 0; v < n; ++v) {
        if (out_offsets_[v] == out_offsets_[v + 1] && in_offsets_[v] == in_offsets_[v + 1])
            throw std::invalid_argument("LedgerGraph: node '" + names_[v] + "' has no links");
    }

    totals_.nodes = n;
    totals_.links = links_.size();
    for (const auto& l : links_) {
        totals_.transactions += l.record.count();
        totals_.volume += l.record.volume;
    }
}

std::optional<NodeId> LedgerGraph::find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<NodeId>(it - names_.begin());
}

std::optional<std::size_t> LedgerGraph::find_link(NodeId source, NodeId target) const {
    auto out = out_links(source);
    auto it = std::lower_bound(out.begin(), out.end(), target,
                               [this](std::uint32_t li, NodeId t) { return links_[li].target < t; });
    if (it == out.end() || links_[*it].target != target) return std::nullopt;
    return *it;
}

std::span<const std::uint32_t> LedgerGraph::out_links(NodeId n) const {
    return {out_index_.data() + out_offsets_[n], out_offsets_[n + 1] - out_offsets_[n]};
}

std::span<const std::uint32_t> LedgerGraph::in_links(NodeId n) const {
    return {in_index_.data() + in_offsets_[n], in_offsets_[n + 1] - in_offsets_[n]};
}

LedgerGraph aggregate(std::vector<Transaction> txs) {
    std::stable_sort(txs.begin(), txs.end(), time_order);
    std::size_t self_transfers = 0;
    std::erase_if(txs, [&](const Transaction& tx) {
        const bool self = tx.source == tx.target;
        self_transfers += self;
        return self;
    });
    if (txs.size() > UINT32_MAX) throw std::length_error("aggregate: too many transactions");

    std::vector<std::string> names;
    names.reserve(txs.size() * 2);
    for (const auto& tx : txs) {
        names.push_back(tx.source);
        names.push_back(tx.target);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    auto id_of = [&](const std::string& s) {
        return static_cast<NodeId>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
    };

    std::vector<Link> links;
    links.reserve(txs.size());
    for (TxIndex i = 0; i < txs.size(); ++i) {
        links.push_back(Link{id_of(txs[i].source), id_of(txs[i].target), LinkRecord{{i}, txs[i].amount}});
    }
    auto table = std::make_shared<const std::vector<Transaction>>(std::move(txs));
    return LedgerGraph(std::move(table), std::move(names), std::move(links), self_transfers);
}

LedgerGraph graph_from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<Transaction> txs;
    txs.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string id = std::to_string(i);
        id.insert(0, 8 - std::min<std::size_t>(8, id.size()), '0');
        txs.push_back(Transaction{"e" + id, Instant{Seconds{static_cast<long long>(i)}}, edges[i].first,
                                  edges[i].second, Amount::from_units(1), "STANDARD"});
    }
    return aggregate(std::move(txs));
}

LedgerGraph induced_subgraph(const LedgerGraph& g, std::span<const NodeId> nodes,
                             std::span<const std::size_t> link_indices) {
    std::vector<std::string> names;
    names.reserve(nodes.size());
    for (NodeId v : nodes) names.push_back(g.name(v));
    auto local = [&](NodeId v) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
        if (it == nodes.end() || *it != v) throw std::invalid_argument("induced_subgraph: link endpoint outside node set");
        return static_cast<NodeId>(it - nodes.begin());
    };
    std::vector<Link> links;
    links.reserve(link_indices.size());
    for (std::size_t li : link_indices) {
        const Link& l = g.links()[li];
        links.push_back(Link{local(l.source), local(l.target), l.record});
    }
    return LedgerGraph(g.transaction_table(), std::move(names), std::move(links));
}

} // namespace ledgertopo
