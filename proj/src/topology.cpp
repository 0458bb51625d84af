#include "ledgertopo/topology.hpp"

#include <algorithm>
#include <stdexcept>

#include "union_find.hpp"

namespace ledgertopo {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kNames = {
    "sccTmix", "in-single-node", "dagTin",  "dag0",    "out-single-node", "scc0",         "sccTin",
    "dagTmix", "dagTout",        "sccTout", "bridge_scc", "edge_dag2scc", "edge_scc2dag", "edge_scc2scc",
};

constexpr std::uint32_t kUnset = UINT32_MAX;

Category scc_category(bool receives, bool sends) {
    if (receives && sends) return Category::SccTmix;
    if (receives) return Category::SccTin;
    if (sends) return Category::SccTout;
    return Category::Scc0;
}

Category dag_category(bool sends_to_scc, bool receives_from_scc) {
    if (sends_to_scc && receives_from_scc) return Category::DagTmix;
    if (sends_to_scc) return Category::DagTin;
    if (receives_from_scc) return Category::DagTout;
    return Category::Dag0;
}

} // namespace

std::string_view category_name(Category c) { return kNames[index_of(c)]; }

std::optional<Category> category_from_name(std::string_view name) {
    for (auto c : kAllCategories)
        if (kNames[index_of(c)] == name) return c;
    return std::nullopt;
}

std::vector<std::uint32_t> strongly_connected_components(const LedgerGraph& g, std::uint32_t* count) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> index(n, kUnset), low(n, 0), raw(n, kUnset);
    std::vector<NodeId> stack;
    std::vector<char> on_stack(n, 0);
    struct Frame {
        NodeId v;
        std::size_t next;
    };
    std::vector<Frame> calls;
    std::uint32_t counter = 0, raw_count = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        calls.push_back({root, 0});
        while (!calls.empty()) {
            const NodeId v = calls.back().v;
            const auto out = g.out_links(v);
            if (calls.back().next < out.size()) {
                const NodeId w = g.links()[out[calls.back().next++]].target;
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    calls.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            calls.pop_back();
            if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
            if (low[v] == index[v]) {
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    raw[w] = raw_count;
                } while (w != v);
                ++raw_count;
            }
        }
    }

    // Renumber by smallest member so the result does not depend on traversal order.
    std::vector<std::uint32_t> remap(raw_count, kUnset), comp(n);
    std::uint32_t next = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (remap[raw[v]] == kUnset) remap[raw[v]] = next++;
        comp[v] = remap[raw[v]];
    }
    if (count) *count = next;
    return comp;
}

TopologyPartition categorize(const LedgerGraph& g) {
    const std::size_t n = g.node_count();
    const auto& links = g.links();

    std::uint32_t scc_count = 0;
    const auto scc = strongly_connected_components(g, &scc_count);
    std::vector<std::uint32_t> scc_size(scc_count, 0);
    for (NodeId v = 0; v < n; ++v) ++scc_size[scc[v]];
    std::vector<char> cyclic(n);
    for (NodeId v = 0; v < n; ++v) cyclic[v] = scc_size[scc[v]] >= 2;

    // Non-cyclic nodes joined by links among themselves form the DAGs.
    detail::UnionFind uf(n);
    for (const auto& l : links)
        if (!cyclic[l.source] && !cyclic[l.target]) uf.unite(l.source, l.target);

    // Group every node into its component: SCC id for cyclic nodes, union-find root otherwise.
    std::vector<std::uint32_t> group_key(n);
    for (NodeId v = 0; v < n; ++v) group_key[v] = cyclic[v] ? scc[v] : static_cast<std::uint32_t>(scc_count + uf.find(v));
    std::vector<std::uint32_t> group_to_component(scc_count + n, kUnset);

    TopologyPartition p;
    p.node_component.assign(n, kUnset);
    for (NodeId v = 0; v < n; ++v) { // ascending v => components ordered by smallest member
        auto& slot = group_to_component[group_key[v]];
        if (slot == kUnset) {
            slot = static_cast<std::uint32_t>(p.components.size());
            p.components.push_back(Component{Category::Scc0, {}});
        }
        p.components[slot].members.push_back(v);
        p.node_component[v] = slot;
    }

    enum class Kind : std::uint8_t { Scc, Dag, Single };
    std::vector<Kind> kind(p.components.size());
    for (std::size_t c = 0; c < p.components.size(); ++c) {
        const NodeId first = p.components[c].members.front();
        kind[c] = cyclic[first] ? Kind::Scc : (p.components[c].members.size() >= 2 ? Kind::Dag : Kind::Single);
    }

    // Single-nodes and DAGs are classified by their links to cyclic nodes.
    for (std::size_t c = 0; c < p.components.size(); ++c) {
        if (kind[c] == Kind::Scc) continue;
        bool sends = false, receives = false;
        for (NodeId v : p.components[c].members) {
            for (auto li : g.out_links(v)) sends |= static_cast<bool>(cyclic[links[li].target]);
            for (auto li : g.in_links(v)) receives |= static_cast<bool>(cyclic[links[li].source]);
        }
        if (kind[c] == Kind::Dag) {
            p.components[c].category = dag_category(sends, receives);
        } else if (sends && receives) {
            p.components[c].category = Category::BridgeScc;
        } else if (sends) {
            p.components[c].category = Category::InSingleNode;
        } else if (receives) {
            p.components[c].category = Category::OutSingleNode;
        } else {
            throw std::logic_error("categorize: single-node without links");
        }
    }

    // SCCs look only at DAG nodes and non-bridge single-nodes.
    auto counts_for_scc = [&](NodeId other) {
        if (cyclic[other]) return false;
        return p.components[p.node_component[other]].category != Category::BridgeScc;
    };
    for (std::size_t c = 0; c < p.components.size(); ++c) {
        if (kind[c] != Kind::Scc) continue;
        bool sends = false, receives = false;
        for (NodeId v : p.components[c].members) {
            for (auto li : g.out_links(v)) sends |= counts_for_scc(links[li].target);
            for (auto li : g.in_links(v)) receives |= counts_for_scc(links[li].source);
        }
        p.components[c].category = scc_category(receives, sends);
    }

    p.edges.resize(links.size());
    for (std::size_t li = 0; li < links.size(); ++li) {
        const auto cs = p.node_component[links[li].source];
        const auto ct = p.node_component[links[li].target];
        EdgeAssignment& e = p.edges[li];
        if (cs == ct) {
            e = {p.components[cs].category, cs};
        } else if (kind[cs] == Kind::Single) {
            e = {p.components[cs].category, cs};
        } else if (kind[ct] == Kind::Single) {
            e = {p.components[ct].category, ct};
        } else if (kind[cs] == Kind::Dag && kind[ct] == Kind::Scc) {
            e = {Category::EdgeDag2Scc, kNoComponent};
        } else if (kind[cs] == Kind::Scc && kind[ct] == Kind::Dag) {
            e = {Category::EdgeScc2Dag, kNoComponent};
        } else if (kind[cs] == Kind::Scc && kind[ct] == Kind::Scc) {
            e = {Category::EdgeScc2Scc, kNoComponent};
        } else {
            throw std::logic_error("categorize: link between two distinct non-cyclic components");
        }
    }
    return p;
}

CategoryStats category_stats(const LedgerGraph& g, const TopologyPartition& p) {
    CategoryStats stats;
    for (const auto& comp : p.components) {
        auto& row = stats[comp.category];
        row.node_count += comp.members.size();
        if (is_scc_category(comp.category)) ++row.scc_count;
    }

    std::array<std::vector<std::uint32_t>, kCategoryCount> owned_links;
    for (std::size_t li = 0; li < g.link_count(); ++li) {
        const auto cat = p.edges[li].category;
        auto& row = stats[cat];
        ++row.link_count;
        row.tx_count += g.links()[li].record.count();
        row.volume += g.links()[li].record.volume;
        owned_links[index_of(cat)].push_back(static_cast<std::uint32_t>(li));
    }

    std::array<std::vector<NodeId>, kCategoryCount> owned_nodes;
    for (const auto& comp : p.components) {
        auto& dst = owned_nodes[index_of(comp.category)];
        dst.insert(dst.end(), comp.members.begin(), comp.members.end());
    }

    detail::UnionFind uf(g.node_count());
    for (auto cat : kAllCategories) {
        std::vector<NodeId> vertices = owned_nodes[index_of(cat)];
        for (auto li : owned_links[index_of(cat)]) {
            vertices.push_back(g.links()[li].source);
            vertices.push_back(g.links()[li].target);
        }
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        uf.reset(vertices);
        std::size_t components = vertices.size();
        for (auto li : owned_links[index_of(cat)])
            components -= uf.unite(g.links()[li].source, g.links()[li].target);
        stats[cat].wcc_count = components;
    }
    return stats;
}

OneTimeRow OneTimeUserTable::total() const {
    OneTimeRow t;
    for (const auto& r : rows) {
        t.users_with_one_outgoing += r.users_with_one_outgoing;
        t.users_with_one_incoming += r.users_with_one_incoming;
        t.outgoing_volume += r.outgoing_volume;
        t.incoming_volume += r.incoming_volume;
        t.owned_volume_involving_one_time += r.owned_volume_involving_one_time;
    }
    return t;
}

OneTimeUserTable one_time_users(const LedgerGraph& g, const TopologyPartition& p) {
    OneTimeUserTable table;
    table.is_one_time.assign(g.node_count(), false);
    const auto& links = g.links();
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::size_t in_tx = 0, out_tx = 0;
        for (auto li : g.in_links(v)) in_tx += links[li].record.count();
        for (auto li : g.out_links(v)) out_tx += links[li].record.count();
        if (in_tx + out_tx != 1) continue;
        table.is_one_time[v] = true;
        auto& row = table.rows[index_of(p.node_category(v))];
        if (out_tx == 1) {
            ++row.users_with_one_outgoing;
            row.outgoing_volume += links[g.out_links(v).front()].record.volume;
        } else {
            ++row.users_with_one_incoming;
            row.incoming_volume += links[g.in_links(v).front()].record.volume;
        }
    }
    for (std::size_t li = 0; li < links.size(); ++li) {
        if (table.is_one_time[links[li].source] || table.is_one_time[links[li].target])
            table.rows[index_of(p.edges[li].category)].owned_volume_involving_one_time += links[li].record.volume;
    }
    return table;
}

} // namespace ledgertopo
