#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ledgertopo/graph.hpp"

namespace ledgertopo {

/// The fourteen exclusive categories. The first eleven own nodes; the last
/// three own only links running between different components.
enum class Category : std::uint8_t {
    SccTmix,
    InSingleNode,
    DagTin,
    Dag0,
    OutSingleNode,
    Scc0,
    SccTin,
    DagTmix,
    DagTout,
    SccTout,
    BridgeScc,
    EdgeDag2Scc,
    EdgeScc2Dag,
    EdgeScc2Scc,
};

inline constexpr std::size_t kCategoryCount = 14;

inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::SccTmix,     Category::InSingleNode, Category::DagTin,      Category::Dag0,
    Category::OutSingleNode, Category::Scc0,       Category::SccTin,      Category::DagTmix,
    Category::DagTout,     Category::SccTout,      Category::BridgeScc,   Category::EdgeDag2Scc,
    Category::EdgeScc2Dag, Category::EdgeScc2Scc,
};

constexpr std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }

/// Report label, e.g. "sccTmix", "in-single-node", "edge_dag2scc".
std::string_view category_name(Category c);
std::optional<Category> category_from_name(std::string_view name);

constexpr bool is_scc_category(Category c) {
    return c == Category::SccTmix || c == Category::Scc0 || c == Category::SccTin || c == Category::SccTout;
}
constexpr bool is_dag_category(Category c) {
    return c == Category::DagTin || c == Category::Dag0 || c == Category::DagTmix || c == Category::DagTout;
}
constexpr bool is_single_category(Category c) {
    return c == Category::InSingleNode || c == Category::OutSingleNode || c == Category::BridgeScc;
}
constexpr bool is_node_category(Category c) { return index_of(c) < index_of(Category::EdgeDag2Scc); }

struct Component {
    Category category;
    std::vector<NodeId> members; ///< sorted; members.front() is the component id
};

inline constexpr std::uint32_t kNoComponent = UINT32_MAX;

struct EdgeAssignment {
    Category category;
    std::uint32_t component = kNoComponent; ///< owning component, or kNoComponent for Edge* categories
};

/// Exclusive assignment of every node and link. Components are ordered by
/// their smallest member, which also serves as their stable id.
struct TopologyPartition {
    std::vector<Component> components;
    std::vector<std::uint32_t> node_component; ///< node -> index into components
    std::vector<EdgeAssignment> edges;         ///< link index -> assignment

    Category node_category(NodeId v) const { return components[node_component[v]].category; }
    const Component& component_of(NodeId v) const { return components[node_component[v]]; }
};

TopologyPartition categorize(const LedgerGraph& g);

/// Strongly connected component index per node (Tarjan). Components are
/// numbered in order of their smallest member.
std::vector<std::uint32_t> strongly_connected_components(const LedgerGraph& g, std::uint32_t* count = nullptr);

struct CategoryRow {
    std::size_t scc_count = 0;
    std::size_t wcc_count = 0;
    std::size_t node_count = 0;
    std::size_t link_count = 0;
    std::size_t tx_count = 0;
    Amount volume;

    friend bool operator==(const CategoryRow&, const CategoryRow&) = default;
};

struct CategoryStats {
    std::array<CategoryRow, kCategoryCount> rows{};

    const CategoryRow& operator[](Category c) const { return rows[index_of(c)]; }
    CategoryRow& operator[](Category c) { return rows[index_of(c)]; }
    friend bool operator==(const CategoryStats&, const CategoryStats&) = default;
};

/// Per-category sizes. wcc_count counts weakly connected components of the
/// subgraph formed by the category's owned links, their endpoints and its
/// owned nodes.
CategoryStats category_stats(const LedgerGraph& g, const TopologyPartition& p);

struct OneTimeRow {
    std::size_t users_with_one_outgoing = 0;
    std::size_t users_with_one_incoming = 0;
    Amount outgoing_volume;
    Amount incoming_volume;
    /// Volume of links owned by this category with a one-time user at either end.
    Amount owned_volume_involving_one_time;
};

/// Users with exactly one transaction in the whole ledger, by node category.
struct OneTimeUserTable {
    std::array<OneTimeRow, kCategoryCount> rows{};
    std::vector<bool> is_one_time; ///< per node

    const OneTimeRow& operator[](Category c) const { return rows[index_of(c)]; }
    OneTimeRow total() const;
};

OneTimeUserTable one_time_users(const LedgerGraph& g, const TopologyPartition& p);

} // namespace ledgertopo
