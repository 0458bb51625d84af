// Shared fixtures and brute-force oracles for the unit and acceptance tests.
// The oracles deliberately avoid the library's algorithms: reachability by
// repeated BFS, triads by looking at the three dyads, operations by an
// explicit state machine.
#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ledgertopo/graph.hpp"
#include "ledgertopo/recirculation.hpp"
#include "ledgertopo/topology.hpp"
#include "ledgertopo/triads.hpp"

namespace testkit {

using namespace ledgertopo;

inline std::string node_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%04zu", i);
    return buf;
}

inline Transaction tx(std::string id, std::int64_t t, std::string s, std::string d, std::int64_t cents = 100) {
    return Transaction{std::move(id), Instant{Seconds{t}}, std::move(s), std::move(d), Amount::from_micros(cents * 10'000),
                       "STANDARD"};
}

/// Random ledger on up to n accounts with `arcs` distinct ordered pairs, each
/// carrying 1..max_tx transactions of random amount and time.
inline std::vector<Transaction> random_ledger(std::mt19937_64& rng, std::size_t n, std::size_t arcs,
                                              std::size_t max_tx = 3) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    arcs = std::min(arcs, n * (n - 1));
    std::uniform_int_distribution<std::size_t> node(0, n - 1);
    while (pairs.size() < arcs) {
        const auto a = node(rng), b = node(rng);
        if (a != b) pairs.emplace(a, b);
    }
    std::vector<Transaction> txs;
    std::uniform_int_distribution<std::size_t> count(1, max_tx);
    std::uniform_int_distribution<std::int64_t> cents(1, 100'000), when(0, 86'400 * 10);
    for (const auto& [a, b] : pairs)
        for (std::size_t k = count(rng); k > 0; --k)
            txs.push_back(tx("t" + std::to_string(txs.size()), when(rng), node_name(a), node_name(b), cents(rng)));
    return txs;
}

inline LedgerGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t arcs, std::size_t max_tx = 3) {
    return aggregate(random_ledger(rng, n, arcs, max_tx));
}

// ---------------------------------------------------------------------------
// Topology oracle

struct OracleTopology {
    std::vector<Category> node_category;
    std::vector<std::size_t> group;      ///< equal values = same component
    std::vector<Category> edge_category; ///< per link
};

inline std::vector<std::vector<char>> reachability(const LedgerGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& l : g.links()) adj[l.source].push_back(l.target);
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < n; ++s) {
        std::queue<std::size_t> q;
        for (auto t : adj[s]) q.push(t);
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            if (reach[s][v]) continue;
            reach[s][v] = 1;
            for (auto t : adj[v]) q.push(t);
        }
    }
    return reach;
}

inline OracleTopology topology_oracle(const LedgerGraph& g) {
    const std::size_t n = g.node_count();
    const auto reach = reachability(g);
    auto mutual = [&](std::size_t a, std::size_t b) { return a != b && reach[a][b] && reach[b][a]; };

    std::vector<char> cyclic(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u)
            if (mutual(v, u)) cyclic[v] = 1;

    OracleTopology o;
    o.group.assign(n, SIZE_MAX);
    o.node_category.assign(n, Category::Scc0);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (o.group[v] != SIZE_MAX) continue;
        const std::size_t id = next++;
        if (cyclic[v]) {
            for (std::size_t u = 0; u < n; ++u)
                if (u == v || mutual(v, u)) o.group[u] = id;
        } else {
            // flood fill over links whose endpoints are both acyclic
            std::vector<std::size_t> stack{v};
            o.group[v] = id;
            while (!stack.empty()) {
                const auto x = stack.back();
                stack.pop_back();
                for (const auto& l : g.links()) {
                    if (cyclic[l.source] || cyclic[l.target]) continue;
                    std::size_t other = SIZE_MAX;
                    if (l.source == x) other = l.target;
                    if (l.target == x) other = l.source;
                    if (other != SIZE_MAX && o.group[other] == SIZE_MAX) {
                        o.group[other] = id;
                        stack.push_back(other);
                    }
                }
            }
        }
    }
    std::vector<std::size_t> size(next, 0);
    for (auto gid : o.group) ++size[gid];

    enum Kind { Cyc, Dag, Single };
    auto kind = [&](std::size_t v) { return cyclic[v] ? Cyc : (size[o.group[v]] >= 2 ? Dag : Single); };

    // singles and DAGs first; SCCs depend on which singles are bridges
    for (std::size_t v = 0; v < n; ++v) {
        if (kind(v) == Cyc) continue;
        bool to_cyc = false, from_cyc = false;
        for (std::size_t u = 0; u < n; ++u) {
            if (o.group[u] != o.group[v]) continue;
            for (const auto& l : g.links()) {
                if (l.source == u && cyclic[l.target]) to_cyc = true;
                if (l.target == u && cyclic[l.source]) from_cyc = true;
            }
        }
        if (kind(v) == Single) {
            o.node_category[v] = to_cyc && from_cyc ? Category::BridgeScc
                                 : to_cyc           ? Category::InSingleNode
                                                    : Category::OutSingleNode;
        } else {
            o.node_category[v] = to_cyc && from_cyc ? Category::DagTmix
                                 : to_cyc           ? Category::DagTin
                                 : from_cyc         ? Category::DagTout
                                                    : Category::Dag0;
        }
    }
    auto counts_for_scc = [&](std::size_t u) {
        return kind(u) == Dag || (kind(u) == Single && o.node_category[u] != Category::BridgeScc);
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (kind(v) != Cyc) continue;
        bool in = false, out = false;
        for (const auto& l : g.links()) {
            if (o.group[l.target] == o.group[v] && !cyclic[l.source] && counts_for_scc(l.source)) in = true;
            if (o.group[l.source] == o.group[v] && !cyclic[l.target] && counts_for_scc(l.target)) out = true;
        }
        o.node_category[v] = in && out ? Category::SccTmix : in ? Category::SccTin : out ? Category::SccTout
                                                                                       : Category::Scc0;
    }
    for (const auto& l : g.links()) {
        const auto ks = kind(l.source), kt = kind(l.target);
        Category c;
        if (o.group[l.source] == o.group[l.target]) c = o.node_category[l.source];
        else if (ks == Single) c = o.node_category[l.source];
        else if (kt == Single) c = o.node_category[l.target];
        else if (ks == Dag && kt == Cyc) c = Category::EdgeDag2Scc;
        else if (ks == Cyc && kt == Dag) c = Category::EdgeScc2Dag;
        else c = Category::EdgeScc2Scc;
        o.edge_category.push_back(c);
    }
    return o;
}

/// Empty string when the partition agrees with the oracle, else a description.
inline std::string compare_with_oracle(const LedgerGraph& g, const TopologyPartition& p) {
    const auto o = topology_oracle(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (p.node_category(v) != o.node_category[v])
            return "node " + g.name(v) + ": " + std::string(category_name(p.node_category(v))) + " vs oracle " +
                   std::string(category_name(o.node_category[v]));
        for (NodeId u = 0; u < g.node_count(); ++u)
            if ((p.node_component[v] == p.node_component[u]) != (o.group[v] == o.group[u]))
                return "grouping of " + g.name(v) + " and " + g.name(u);
    }
    for (std::size_t i = 0; i < g.link_count(); ++i)
        if (p.edges[i].category != o.edge_category[i])
            return "link " + g.name(g.links()[i].source) + "->" + g.name(g.links()[i].target) + ": " +
                   std::string(category_name(p.edges[i].category)) + " vs oracle " +
                   std::string(category_name(o.edge_category[i]));
    return {};
}

/// Strong connectivity of `members` using only links inside the set.
inline bool strongly_connected(const LedgerGraph& g, const std::vector<NodeId>& members) {
    if (members.size() < 2) return false;
    std::set<NodeId> in(members.begin(), members.end());
    auto sweep = [&](bool forward) {
        std::set<NodeId> seen{members.front()};
        std::vector<NodeId> stack{members.front()};
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (const auto& l : g.links()) {
                const NodeId from = forward ? l.source : l.target, to = forward ? l.target : l.source;
                if (from == v && in.count(to) && seen.insert(to).second) stack.push_back(to);
            }
        }
        return seen.size() == members.size();
    };
    return sweep(true) && sweep(false);
}

/// Kahn's algorithm on the links inside `members`.
inline bool acyclic(const LedgerGraph& g, const std::vector<NodeId>& members) {
    std::map<NodeId, std::size_t> indeg;
    for (auto v : members) indeg[v] = 0;
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (const auto& l : g.links())
        if (indeg.count(l.source) && indeg.count(l.target)) {
            arcs.emplace_back(l.source, l.target);
            ++indeg[l.target];
        }
    std::vector<NodeId> ready;
    for (const auto& [v, d] : indeg)
        if (d == 0) ready.push_back(v);
    std::size_t removed = 0;
    while (!ready.empty()) {
        const auto v = ready.back();
        ready.pop_back();
        ++removed;
        for (const auto& [a, b] : arcs)
            if (a == v && --indeg[b] == 0) ready.push_back(b);
    }
    return removed == members.size();
}

// ---------------------------------------------------------------------------
// Triad oracle: classify a triple by its dyads (M-A-N counts) and, where
// several classes share a count, by which node holds which arcs.

inline Triad classify_triple(const std::array<std::array<bool, 3>, 3>& a) {
    int m = 0, asym = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (a[i][j] && a[j][i]) ++m;
            else if (a[i][j] || a[j][i]) ++asym;
        }
    auto out_deg = [&](int i) { return int(a[i][(i + 1) % 3]) + int(a[i][(i + 2) % 3]); };
    auto in_deg = [&](int i) { return int(a[(i + 1) % 3][i]) + int(a[(i + 2) % 3][i]); };
    if (m == 0 && asym == 0) return Triad::T003;
    if (m == 0 && asym == 1) return Triad::T012;
    if (m == 1 && asym == 0) return Triad::T102;
    if (m == 0 && asym == 2) {
        for (int i = 0; i < 3; ++i) {
            if (out_deg(i) == 2) return Triad::T021D;
            if (in_deg(i) == 2) return Triad::T021U;
        }
        return Triad::T021C;
    }
    if (m == 1 && asym == 1) {
        // the node outside the mutual dyad either sends into it (D) or receives from it (U)
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            if (a[j][k] && a[k][j]) return (a[i][j] || a[i][k]) ? Triad::T111D : Triad::T111U;
        }
    }
    if (m == 0 && asym == 3) {
        for (int i = 0; i < 3; ++i)
            if (out_deg(i) == 2) return Triad::T030T;
        return Triad::T030C;
    }
    if (m == 2 && asym == 0) return Triad::T201;
    if (m == 1 && asym == 2) {
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            if (!(a[j][k] && a[k][j])) continue;
            if (a[i][j] && a[i][k]) return Triad::T120D;
            if (a[j][i] && a[k][i]) return Triad::T120U;
            return Triad::T120C;
        }
    }
    if (m == 2 && asym == 1) return Triad::T210;
    return Triad::T300;
}

inline TriadCensus brute_force_census(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& arcs) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& [s, t] : arcs) adj[s][t] = true;
    TriadCensus c;
    c.nodes = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const std::size_t v[3] = {i, j, k};
                std::array<std::array<bool, 3>, 3> a{};
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) a[x][y] = x != y && adj[v[x]][v[y]];
                ++c.counts[static_cast<std::size_t>(classify_triple(a))];
            }
    return c;
}

// ---------------------------------------------------------------------------
// Recirculation oracle: replays each user's events one at a time through an
// explicit three-state machine.

inline std::vector<RecirculationOp> ops_oracle(const std::vector<Transaction>& txs) {
    struct Ev {
        Instant at;
        bool incoming;
        std::string id;
        TxIndex index;
    };
    std::map<std::string, std::vector<Ev>> by_user;
    for (TxIndex i = 0; i < txs.size(); ++i) {
        const auto& t = txs[i];
        if (t.source == t.target) continue;
        by_user[t.source].push_back({t.timestamp, false, t.tx_id, i});
        by_user[t.target].push_back({t.timestamp, true, t.tx_id, i});
    }
    std::vector<RecirculationOp> out;
    for (auto& [user, evs] : by_user) {
        std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) {
            if (a.at != b.at) return a.at < b.at;
            if (a.incoming != b.incoming) return a.incoming;
            return a.id < b.id;
        });
        enum class State { Idle, Receiving, Spending } state = State::Idle;
        RecirculationOp cur;
        for (const auto& e : evs) {
            switch (state) {
            case State::Idle:
                if (e.incoming) {
                    cur = RecirculationOp{user, e.at, e.at, {e.index}, {}};
                    state = State::Receiving;
                }
                break;
            case State::Receiving:
                if (e.incoming) {
                    cur.in_tx.push_back(e.index);
                } else {
                    cur.out_tx.push_back(e.index);
                    cur.last_out = e.at;
                    state = State::Spending;
                }
                break;
            case State::Spending:
                if (e.incoming) {
                    out.push_back(cur);
                    cur = RecirculationOp{user, e.at, e.at, {e.index}, {}};
                    state = State::Receiving;
                } else {
                    cur.out_tx.push_back(e.index);
                    cur.last_out = e.at;
                }
                break;
            }
        }
        if (state == State::Spending) out.push_back(cur);
    }
    return out;
}

} // namespace testkit
