#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ledgertopo/amount.hpp"
#include "ledgertopo/ledger.hpp"

namespace ledgertopo {

/// Dense node index. Node ids are numbered in lexicographic order of account
/// id, so comparing NodeIds compares account ids.
using NodeId = std::uint32_t;
using TxIndex = std::uint32_t;

/// Transactions carried by one ordered node pair.
struct LinkRecord {
    std::vector<TxIndex> tx; // indices into LedgerGraph::transactions()
    Amount volume;

    std::size_t count() const { return tx.size(); }
};

struct Link {
    NodeId source;
    NodeId target;
    LinkRecord record;
};

struct GraphTotals {
    std::size_t nodes = 0;
    std::size_t links = 0;
    std::size_t transactions = 0;
    Amount volume;
};

/// Weighted directed simple graph obtained by aggregating a ledger per ordered
/// account pair. Immutable once built; replicas share the transaction table.
class LedgerGraph {
public:
    LedgerGraph();

    /// `names` must be sorted and unique, and every node must touch a link.
    /// Links may come in any order; links on the same ordered pair are merged
    /// by concatenating their records in input order. Self-loops are rejected.
    LedgerGraph(std::shared_ptr<const std::vector<Transaction>> transactions, std::vector<std::string> names,
                std::vector<Link> links, std::size_t self_transfers_dropped = 0);

    std::size_t node_count() const { return names_.size(); }
    std::size_t link_count() const { return links_.size(); }
    bool empty() const { return names_.empty(); }

    const std::string& name(NodeId n) const { return names_[n]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<NodeId> find(std::string_view name) const;

    /// Links sorted by (source, target).
    const std::vector<Link>& links() const { return links_; }
    std::optional<std::size_t> find_link(NodeId source, NodeId target) const;

    /// Indices into links() of the links leaving / entering `n`, ordered by the far endpoint.
    std::span<const std::uint32_t> out_links(NodeId n) const;
    std::span<const std::uint32_t> in_links(NodeId n) const;

    const std::vector<Transaction>& transactions() const { return *transactions_; }
    const std::shared_ptr<const std::vector<Transaction>>& transaction_table() const { return transactions_; }

    const GraphTotals& totals() const { return totals_; }
    std::size_t self_transfers_dropped() const { return self_transfers_dropped_; }

private:
    std::shared_ptr<const std::vector<Transaction>> transactions_;
    std::vector<std::string> names_;
    std::vector<Link> links_;
    std::vector<std::uint32_t> out_offsets_, out_index_;
    std::vector<std::uint32_t> in_offsets_, in_index_;
    GraphTotals totals_;
    std::size_t self_transfers_dropped_ = 0;
};

/// One link per ordered (source, target) pair; self-transfers are dropped and
/// counted. The transaction table keeps the non-self transactions in time order.
LedgerGraph aggregate(std::vector<Transaction> txs);

/// Test and demo helper: one unit-amount transaction per listed pair.
LedgerGraph graph_from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

/// Subgraph on `nodes` (sorted node ids of g) keeping only the links at the given indices.
LedgerGraph induced_subgraph(const LedgerGraph& g, std::span<const NodeId> nodes,
                             std::span<const std::size_t> link_indices);

} // namespace ledgertopo
