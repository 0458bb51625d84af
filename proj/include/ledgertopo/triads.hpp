#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ledgertopo/graph.hpp"
#include "ledgertopo/nullmodel.hpp"
#include "ledgertopo/topology.hpp"

namespace ledgertopo {

/// The 16 directed triad isomorphism classes in M-A-N notation.
enum class Triad : std::uint8_t {
    T003, T012, T102, T021D, T021U, T021C, T111D, T111U, T030T, T030C, T201, T120D, T120U, T120C, T210, T300,
};

inline constexpr std::size_t kTriadCount = 16;

/// "003", "012", ..., "300"
std::string_view triad_name(Triad t);
std::optional<Triad> triad_from_name(std::string_view name);

/// True for the classes that contain a mutual dyad or a directed 3-cycle.
bool triad_has_mutual_or_cycle(Triad t);

struct TriadCensus {
    std::uint64_t nodes = 0;
    std::array<std::uint64_t, kTriadCount> counts{};

    std::uint64_t operator[](Triad t) const { return counts[static_cast<std::size_t>(t)]; }
    std::uint64_t total() const;
    friend bool operator==(const TriadCensus&, const TriadCensus&) = default;
};

/// Triad class of the ordered triple (v, u, w) given arc presence tests.
/// Bits: v->u 1, u->v 2, v->w 4, w->v 8, u->w 16, w->u 32.
Triad triad_from_code(unsigned code);

/// Census of a directed simple graph on nodes [0, n) by neighbourhood
/// enumeration; the null triad count is completed in closed form. Arcs must
/// be free of self-loops; duplicates are ignored.
TriadCensus triad_census(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> arcs);

TriadCensus triad_census(const LedgerGraph& g);

inline const std::set<Category> kDagCategories = {Category::Dag0, Category::DagTin, Category::DagTout,
                                                  Category::DagTmix};

/// Census per node category on the subgraph of the category's nodes and the
/// links it owns (boundary links excluded).
std::map<Category, TriadCensus> category_census(const LedgerGraph& g, const TopologyPartition& p,
                                                const std::set<Category>& categories = kDagCategories);

/// Scores each category's 16 triad counts against the replica ensemble.
std::vector<SignificanceCell> triad_significance(const LedgerGraph& g, const TopologyPartition& p,
                                                 const EnsembleSpec& spec,
                                                 const std::set<Category>& categories = kDagCategories,
                                                 unsigned jobs = 1);

/// Same scoring from precomputed censuses (empirical plus one map per replica).
std::vector<SignificanceCell> triad_significance(const std::map<Category, TriadCensus>& empirical,
                                                 std::span<const std::map<Category, TriadCensus>> ensemble);

} // namespace ledgertopo
