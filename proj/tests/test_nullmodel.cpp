#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ledgertopo/nullmodel.hpp"
#include "ledgertopo/stats.hpp"
#include "support.hpp"

using namespace ledgertopo;

namespace {

std::vector<std::size_t> out_degrees(std::size_t n, const std::vector<Endpoints>& ep) {
    std::vector<std::size_t> d(n, 0);
    for (const auto& e : ep) ++d[e.source];
    return d;
}

std::vector<std::size_t> in_degrees(std::size_t n, const std::vector<Endpoints>& ep) {
    std::vector<std::size_t> d(n, 0);
    for (const auto& e : ep) ++d[e.target];
    return d;
}

std::vector<Endpoints> original(const LedgerGraph& g) {
    std::vector<Endpoints> ep;
    for (const auto& l : g.links()) ep.push_back({l.source, l.target});
    return ep;
}

} // namespace

TEST_CASE("rng is reproducible and below() stays in range") {
    SeededRng a(1), b(1);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SeededRng r(2);
    std::array<int, 7> hits{};
    for (int i = 0; i < 70000; ++i) {
        const auto x = r.below(7);
        REQUIRE(x < 7);
        ++hits[x];
    }
    for (int h : hits) CHECK(std::abs(h - 10000) < 500);
    CHECK(derive_seed(5, 0) != derive_seed(5, 1));
    CHECK(derive_seed(5, 0) != derive_seed(6, 0));
}

TEST_CASE("single-link graph is returned unchanged") {
    const auto g = graph_from_edges({{"A", "B"}});
    for (auto mode : kAllSwapModes) {
        const auto r = randomize(g, mode, 123);
        REQUIRE(r.link_count() == 1);
        CHECK(r.links()[0].source == g.links()[0].source);
        CHECK(r.links()[0].target == g.links()[0].target);
    }
}

TEST_CASE("two links under TargetSwap: both outcomes about half the time") {
    const auto g = graph_from_edges({{"A", "B"}, {"C", "D"}});
    const NodeId A = *g.find("A"), B = *g.find("B"), D = *g.find("D");
    int identity = 0, swapped = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const auto ep = permute_endpoints(g, SwapMode::TargetSwap, seed);
        const auto& first = ep[0].source == A ? ep[0] : ep[1];
        if (first.target == B) ++identity;
        else if (first.target == D) ++swapped;
    }
    CHECK(identity + swapped == 10000);
    CHECK(std::abs(identity / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("every mode preserves per-node degrees before merging, and never creates self-loops") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const auto g = testkit::random_graph(rng, 40, 200);
        const auto base = original(g);
        for (auto mode : kAllSwapModes) {
            const auto ep = permute_endpoints(g, mode, rep * 31 + 1);
            CHECK(out_degrees(g.node_count(), ep) == out_degrees(g.node_count(), base));
            CHECK(in_degrees(g.node_count(), ep) == in_degrees(g.node_count(), base));
            for (const auto& e : ep) CHECK(e.source != e.target);
            if (mode == SwapMode::TargetSwap)
                for (std::size_t i = 0; i < ep.size(); ++i) CHECK(ep[i].source == base[i].source);
            if (mode == SwapMode::SourceSwap)
                for (std::size_t i = 0; i < ep.size(); ++i) CHECK(ep[i].target == base[i].target);
        }
    }
}

TEST_CASE("replicas conserve transactions and volume") {
    std::mt19937_64 rng(21);
    const auto g = testkit::random_graph(rng, 80, 300, 4);
    for (auto mode : kAllSwapModes) {
        EnsembleSpec spec{mode, 20, 9, 100};
        for (std::size_t i = 0; i < spec.replicas; ++i) {
            const auto r = make_replica(g, spec, i);
            CHECK(r.totals().transactions == g.totals().transactions);
            CHECK(r.totals().volume == g.totals().volume);
            CHECK(r.node_count() == g.node_count());
            CHECK(r.link_count() <= g.link_count());
        }
    }
}

TEST_CASE("same seed, same replica; ensemble independent of thread count") {
    std::mt19937_64 rng(4);
    const auto g = testkit::random_graph(rng, 60, 180);
    EnsembleSpec spec{SwapMode::BothSwap, 1, 77, 100};
    const auto a = make_replica(g, spec, 0), b = make_replica(g, spec, 0);
    REQUIRE(a.link_count() == b.link_count());
    for (std::size_t i = 0; i < a.link_count(); ++i) {
        CHECK(a.links()[i].source == b.links()[i].source);
        CHECK(a.links()[i].target == b.links()[i].target);
        CHECK(a.links()[i].record.tx == b.links()[i].record.tx);
    }
    spec.replicas = 12;
    CHECK(run_ensemble(g, spec, 1) == run_ensemble(g, spec, 3));
}

TEST_CASE("self-loop repair gives up with RandomizeError") {
    // swapping the targets of H->A and A->H yields two self-loops
    const auto g = graph_from_edges({{"H", "A"}, {"A", "H"}});
    int thrown = 0;
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        try {
            randomize(g, SwapMode::TargetSwap, seed, 0);
        } catch (const RandomizeError& e) {
            CHECK(e.seed() == seed);
            ++thrown;
        }
        CHECK_NOTHROW(randomize(g, SwapMode::TargetSwap, seed, 100));
    }
    CHECK(thrown > 0);
    CHECK(thrown < 32);
}

TEST_CASE("swap mode names") {
    for (auto m : kAllSwapModes) CHECK(swap_mode_from_name(swap_mode_name(m)) == m);
    CHECK_FALSE(swap_mode_from_name("sideways"));
}

TEST_CASE("z and robust z hand computations") {
    const std::vector<double> a{2, 4, 6};
    const auto sa = stats::summarize(a);
    CHECK(sa.mean == 4.0);
    CHECK(sa.sd == 2.0);
    CHECK(std::abs(*stats::z_score(10, sa) - 3.0) <= 1e-12);
    CHECK(*stats::z_score(4, sa) == 0.0);

    const std::vector<double> b{1, 2, 3, 4, 5};
    const auto sb = stats::summarize(b);
    CHECK(sb.median == 3.0);
    CHECK(sb.q1 == 2.0);
    CHECK(sb.q3 == 4.0);
    CHECK(std::abs(*stats::robust_z_score(10, sb) - 3.5) <= 1e-12);

    const std::vector<double> flat(10, 7.0);
    const auto sf = stats::summarize(flat);
    CHECK_FALSE(stats::z_score(7, sf));
    CHECK_FALSE(stats::robust_z_score(9, sf));

    const std::vector<double> q{1, 2, 3, 4};
    CHECK(stats::quantile_sorted(q, 0.25) == 1.75);
    CHECK(stats::quantile_sorted(q, 0.5) == 2.5);
    CHECK(stats::quantile_sorted(q, 0.75) == 3.25);
}

TEST_CASE("scores are translation covariant") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd(5.0, 2.0);
    std::vector<double> xs(50), shifted(50);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = nd(rng);
        shifted[i] = xs[i] + 100.0;
    }
    const auto a = score_cell(Category::Dag0, "x", 9.0, xs);
    const auto b = score_cell(Category::Dag0, "x", 109.0, shifted);
    CHECK(*a.z == doctest::Approx(*b.z).epsilon(1e-9));
    CHECK(*a.robust_z == doctest::Approx(*b.robust_z).epsilon(1e-9));
}

TEST_CASE("Anderson-Darling on uniform and normal samples") {
    int uniform_rejected = 0, normal_kept = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0, 1);
        std::normal_distribution<double> n(0, 1);
        std::vector<double> us(5000), ns(5000);
        for (auto& v : us) v = u(rng);
        for (auto& v : ns) v = n(rng);
        uniform_rejected += stats::anderson_darling_normal(us).rejected;
        normal_kept += !stats::anderson_darling_normal(ns).rejected;
    }
    CHECK(uniform_rejected == 10);
    CHECK(normal_kept >= 8);

    const std::vector<double> flat(20, 1.0);
    const auto ad = stats::anderson_darling_normal(flat);
    CHECK(ad.rejected);
    CHECK(std::isinf(ad.a2_star));
    CHECK_THROWS_AS(stats::anderson_darling_normal(std::vector<double>(5, 1.0)), std::invalid_argument);
    // p-value is monotone decreasing in the statistic
    CHECK(stats::anderson_darling_p_value(0.1) > stats::anderson_darling_p_value(0.5));
    CHECK(stats::anderson_darling_p_value(0.5) > stats::anderson_darling_p_value(1.0));
    CHECK(stats::anderson_darling_p_value(200.0) == 0.0);
}

TEST_CASE("significance needs at least eight replicas and covers every cell") {
    std::mt19937_64 rng(12);
    const auto g = testkit::random_graph(rng, 50, 120);
    const auto empirical = category_stats(g, categorize(g));
    EnsembleSpec spec{SwapMode::TargetSwap, 7, 1, 100};
    const auto small = run_ensemble(g, spec);
    CHECK_THROWS_AS(significance(empirical, small), std::invalid_argument);
    spec.replicas = 16;
    const auto ens = run_ensemble(g, spec);
    const auto cells = significance(empirical, ens);
    CHECK(cells.size() == kCategoryCount * kAllFeatures.size());
    for (const auto& c : cells) {
        CHECK(c.null.n == 16);
        if (c.null.sd > 0) CHECK(c.z);
    }
}
