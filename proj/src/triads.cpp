#include "ledgertopo/triads.hpp"

#include <algorithm>
#include <stdexcept>

namespace ledgertopo {

namespace {

constexpr std::array<std::string_view, kTriadCount> kTriadNames = {
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300",
};

// Batagelj-Mrvar code -> class (0-based into kTriadNames).
constexpr std::array<std::uint8_t, 64> kCodeToTriad = {
    0,  1,  1,  2,  1,  3,  5,  7,  1,  5,  4,  6,  2,  7,  6,  10, 1,  5,  3,  7,  4,  8,
    8,  12, 5,  9,  8,  13, 6,  13, 11, 14, 1,  4,  5,  6,  5,  8,  9,  13, 3,  8,  8,  11,
    7,  12, 13, 14, 2,  6,  7,  10, 6,  11, 13, 14, 7,  13, 12, 14, 10, 14, 14, 15,
};

using Adjacency = std::vector<std::vector<std::uint32_t>>;

bool contains(const std::vector<std::uint32_t>& sorted, std::uint32_t x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

} // namespace

std::string_view triad_name(Triad t) { return kTriadNames[static_cast<std::size_t>(t)]; }

std::optional<Triad> triad_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kTriadCount; ++i)
        if (kTriadNames[i] == name) return static_cast<Triad>(i);
    return std::nullopt;
}

bool triad_has_mutual_or_cycle(Triad t) {
    switch (t) {
    case Triad::T003:
    case Triad::T012:
    case Triad::T021D:
    case Triad::T021U:
    case Triad::T021C:
    case Triad::T030T:
        return false;
    default:
        return true;
    }
}

Triad triad_from_code(unsigned code) {
    if (code >= 64) throw std::out_of_range("triad code");
    return static_cast<Triad>(kCodeToTriad[code]);
}

std::uint64_t TriadCensus::total() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
}

TriadCensus triad_census(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> arcs) {
    Adjacency out(n), nbr(n);
    for (const auto& [a, b] : arcs) {
        if (a >= n || b >= n) throw std::out_of_range("triad_census: arc endpoint out of range");
        if (a == b) throw std::invalid_argument("triad_census: self-loop");
        out[a].push_back(b);
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }
    for (auto* adj : {&out, &nbr}) {
        for (auto& list : *adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    }
    auto arc = [&](std::uint32_t a, std::uint32_t b) { return contains(out[a], b); };
    auto code = [&](std::uint32_t v, std::uint32_t u, std::uint32_t w) {
        return arc(v, u) * 1u + arc(u, v) * 2u + arc(v, w) * 4u + arc(w, v) * 8u + arc(u, w) * 16u + arc(w, u) * 32u;
    };

    TriadCensus census;
    census.nodes = n;
    std::vector<std::uint32_t> s;
    for (std::uint32_t v = 0; v < n; ++v) {
        for (std::uint32_t u : nbr[v]) {
            if (u <= v) continue;
            s.clear();
            std::set_union(nbr[u].begin(), nbr[u].end(), nbr[v].begin(), nbr[v].end(), std::back_inserter(s));
            std::erase_if(s, [&](std::uint32_t x) { return x == u || x == v; });
            const Triad dyad = (arc(v, u) && arc(u, v)) ? Triad::T102 : Triad::T012;
            census.counts[static_cast<std::size_t>(dyad)] += n - s.size() - 2;
            for (std::uint32_t w : s) {
                if (u < w || (v < w && w < u && !contains(nbr[v], w)))
                    ++census.counts[static_cast<std::size_t>(triad_from_code(code(v, u, w)))];
            }
        }
    }
    const std::uint64_t nn = n;
    const std::uint64_t all = n < 3 ? 0 : nn * (nn - 1) / 2 * (nn - 2) / 3;
    std::uint64_t rest = 0;
    for (std::size_t i = 1; i < kTriadCount; ++i) rest += census.counts[i];
    census.counts[0] = all - rest;
    if (census.total() != all) throw std::logic_error("triad_census: counts do not sum to C(n,3)");
    return census;
}

TriadCensus triad_census(const LedgerGraph& g) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    arcs.reserve(g.link_count());
    for (const auto& l : g.links()) arcs.emplace_back(l.source, l.target);
    return triad_census(g.node_count(), arcs);
}

std::map<Category, TriadCensus> category_census(const LedgerGraph& g, const TopologyPartition& p,
                                                const std::set<Category>& categories) {
    std::map<Category, TriadCensus> out;
    for (auto cat : categories) {
        if (!is_node_category(cat)) throw std::invalid_argument("category_census: not a node category");
        std::vector<NodeId> nodes;
        for (const auto& comp : p.components)
            if (comp.category == cat) nodes.insert(nodes.end(), comp.members.begin(), comp.members.end());
        std::sort(nodes.begin(), nodes.end());
        auto local = [&](NodeId v) {
            return static_cast<std::uint32_t>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
        };
        std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
        for (std::size_t li = 0; li < g.link_count(); ++li) {
            const auto& e = p.edges[li];
            if (e.category != cat || e.component == kNoComponent) continue;
            const auto& l = g.links()[li];
            // Links a single-node owns reach into an SCC; only links inside the category count.
            if (p.node_category(l.source) != cat || p.node_category(l.target) != cat) continue;
            arcs.emplace_back(local(l.source), local(l.target));
        }
        out.emplace(cat, triad_census(nodes.size(), arcs));
    }
    return out;
}

std::vector<SignificanceCell> triad_significance(const std::map<Category, TriadCensus>& empirical,
                                                 std::span<const std::map<Category, TriadCensus>> ensemble) {
    std::vector<SignificanceCell> cells;
    std::vector<double> null(ensemble.size());
    for (const auto& [cat, census] : empirical) {
        for (std::size_t t = 0; t < kTriadCount; ++t) {
            for (std::size_t i = 0; i < ensemble.size(); ++i) {
                auto it = ensemble[i].find(cat);
                null[i] = it == ensemble[i].end() ? 0.0 : static_cast<double>(it->second.counts[t]);
            }
            cells.push_back(score_cell(cat, std::string(kTriadNames[t]), static_cast<double>(census.counts[t]), null));
        }
    }
    return cells;
}

std::vector<SignificanceCell> triad_significance(const LedgerGraph& g, const TopologyPartition& p,
                                                 const EnsembleSpec& spec, const std::set<Category>& categories,
                                                 unsigned jobs) {
    const auto empirical = category_census(g, p, categories);
    const auto ensemble = map_replicas(g, spec, jobs, [&](const LedgerGraph& r, const TopologyPartition& rp) {
        return category_census(r, rp, categories);
    });
    return triad_significance(empirical, ensemble);
}

} // namespace ledgertopo
