#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ledgertopo/amount.hpp"
#include "ledgertopo/csv.hpp"
#include "ledgertopo/degree_stats.hpp"
#include "ledgertopo/errors.hpp"
#include "ledgertopo/graph.hpp"
#include "ledgertopo/ledger.hpp"
#include "ledgertopo/timestamp.hpp"
#include "support.hpp"

using namespace ledgertopo;

TEST_CASE("amount parsing and rendering") {
    CHECK(Amount::parse("12")->micros() == 12'000'000);
    CHECK(Amount::parse("12.5")->micros() == 12'500'000);
    CHECK(Amount::parse("-0.25")->micros() == -250'000);
    CHECK(Amount::parse("1e3")->micros() == 1'000'000'000);
    CHECK(Amount::parse("1.5E-2")->micros() == 15'000);
    CHECK(Amount::parse(".5")->micros() == 500'000);
    CHECK(Amount::parse("0.0000005")->micros() == 1);  // half rounds away from zero
    CHECK(Amount::parse("0.0000004")->micros() == 0);
    CHECK(Amount::parse("-0.0000005")->micros() == -1);
    CHECK_FALSE(Amount::parse(""));
    CHECK_FALSE(Amount::parse("abc"));
    CHECK_FALSE(Amount::parse("1.2.3"));
    CHECK_FALSE(Amount::parse("1e"));

    CHECK(Amount::from_units(12).to_string() == "12.00");
    CHECK(Amount::from_micros(125'000).to_string() == "0.125");
    CHECK(Amount::from_micros(-1'500'000).to_string() == "-1.50");
    CHECK(Amount::parse("182605612.73")->to_string() == "182605612.73");
    CHECK((Amount::from_units(5) + Amount::from_units(7)).micros() == 12'000'000);
}

TEST_CASE("timestamp parsing") {
    const Instant base{Seconds{1579910400}}; // 2020-01-25T00:00:00Z
    CHECK(parse_iso8601("2020-01-25") == base);
    CHECK(parse_iso8601("2020-01-25 00:00:10") == base + Seconds{10});
    CHECK(parse_iso8601("2020-01-25T00:00:10.999Z") == base + Seconds{10});
    CHECK(parse_iso8601("2020-01-25T03:00:00+03:00") == base);
    CHECK(parse_iso8601("2020-01-24T21:30:00-02:30") == base);
    CHECK_FALSE(parse_iso8601("2020-02-30"));
    CHECK_FALSE(parse_iso8601("2020-01-25T25:00:00"));
    CHECK_FALSE(parse_iso8601("yesterday"));

    CHECK(parse_timestamp("1579910400", TimestampFormat::Auto) == base);
    CHECK(parse_timestamp("2020-01-25", TimestampFormat::Auto) == base);
    CHECK_FALSE(parse_timestamp("2020-01-25", TimestampFormat::Epoch));
    CHECK(format_iso8601(base + Seconds{3723}) == "2020-01-25T01:02:03Z");
    CHECK(format_iso8601(*parse_iso8601("1969-12-31T23:59:59Z")) == "1969-12-31T23:59:59Z");
}

TEST_CASE("csv reader") {
    std::istringstream in("\xEF\xBB\xBF" "a,b,c\r\n1,\"x,y\",\"he said \"\"hi\"\"\"\n\n2,\"multi\nline\",3\n");
    csv::Reader r(in);
    std::vector<std::string> f;
    REQUIRE(r.next(f));
    CHECK(f == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(r.next(f));
    CHECK(f == std::vector<std::string>{"1", "x,y", "he said \"hi\""});
    CHECK(r.line() == 2);
    REQUIRE(r.next(f));
    CHECK(f == std::vector<std::string>{"2", "multi\nline", "3"});
    CHECK(r.line() == 4);
    CHECK_FALSE(r.next(f));

    std::istringstream bad("a\n\"open\n");
    csv::Reader rb(bad);
    REQUIRE(rb.next(f));
    CHECK_THROWS_AS(rb.next(f), DataError);

    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("q\"") == "\"q\"\"\"");
}

TEST_CASE("parse_ledger: three standard rows come back in time order") {
    std::istringstream in("tx_id,timestamp,source,target,amount,subtype\n"
                          "t3,2020-01-25T00:00:03Z,C,A,3.00,STANDARD\n"
                          "t1,2020-01-25T00:00:01Z,A,B,1.00,STANDARD\n"
                          "t2,2020-01-25T00:00:02Z,B,C,2.00,STANDARD\n");
    IngestDiagnostics d;
    const auto txs = parse_ledger(in, ColumnMapping{}, FilterSpec{}, &d);
    REQUIRE(txs.size() == 3);
    CHECK(txs[0].tx_id == "t1");
    CHECK(txs[1].tx_id == "t2");
    CHECK(txs[2].tx_id == "t3");
    CHECK(txs[2].amount == Amount::from_units(3));
    CHECK(d.rows_read == 3);
    CHECK(d.rows_filtered == 0);
}

TEST_CASE("parse_ledger: filters, duplicates, custom columns") {
    std::istringstream in("id,timeset,source,target,weight,transfer_subtype\n"
                          "1,1579910400,A,B,5,STANDARD\n"
                          "2,1579910401,A,B,7,DISBURSEMENT\n"
                          "3,1579910402,X,B,1,STANDARD\n"
                          "1,1579910403,B,A,9,STANDARD\n");
    FilterSpec f;
    f.excluded_accounts = {"X"};
    IngestDiagnostics d;
    const auto txs = parse_ledger(in, ColumnMapping::sarafu(), f, &d);
    REQUIRE(txs.size() == 1);
    CHECK(txs[0].tx_id == "1");
    CHECK(txs[0].amount == Amount::from_units(5));
    CHECK(d.rows_read == 4);
    CHECK(d.rows_filtered == 2);
    CHECK(d.duplicate_tx_ids == 1);
}

TEST_CASE("parse_ledger: errors") {
    auto parse = [](const std::string& text, ColumnMapping m = {}, FilterSpec f = {}) {
        std::istringstream in(text);
        return parse_ledger(in, m, f);
    };
    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(parse("tx_id,timestamp,source,target\n"), ConfigError);
    try {
        parse("tx_id,timestamp,source,target,amount,subtype\n"
              "a,2020-01-25,A,B,1,STANDARD\n"
              "b,not-a-date,A,B,1,STANDARD\n");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(e.row() == 3);
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("tx_id,timestamp,source,target,amount,subtype\na,2020-01-25,A,B,-1,STANDARD\n"), DataError);
    CHECK_THROWS_AS(parse("tx_id,timestamp,source,target,amount,subtype\na,2020-01-25,A,B,x,STANDARD\n"), DataError);
    CHECK_THROWS_AS(parse("tx_id,timestamp,source,target,amount,subtype\na,2020-01-25,A\n"), DataError);

    ColumnMapping no_subtype;
    no_subtype.subtype = "";
    CHECK_THROWS_AS(parse("tx_id,timestamp,source,target,amount\na,2020-01-25,A,B,1\n", no_subtype), ConfigError);
    FilterSpec accept_all;
    accept_all.standard_subtype = "";
    CHECK(parse("tx_id,timestamp,source,target,amount\na,2020-01-25,A,B,1\n", no_subtype, accept_all).size() == 1);
}

TEST_CASE("parse_ledger: missing tx_id column gets row ids; write/read round trip") {
    ColumnMapping m;
    m.tx_id = "";
    FilterSpec f;
    f.standard_subtype = "";
    std::istringstream in("timestamp,source,target,amount\n2020-01-25,A,B,1.5\n");
    const auto txs = parse_ledger(in, m, f);
    REQUIRE(txs.size() == 1);
    CHECK(txs[0].tx_id == "row-0000000002");

    std::mt19937_64 rng(3);
    const auto original = testkit::random_ledger(rng, 20, 40);
    std::stringstream buf;
    write_ledger(buf, original);
    auto back = parse_ledger(buf, ColumnMapping{}, FilterSpec{});
    auto sorted = original;
    std::stable_sort(sorted.begin(), sorted.end(), time_order);
    CHECK(back == sorted);
}

TEST_CASE("aggregate: parallel transactions merge into one link") {
    const auto g = aggregate({testkit::tx("1", 0, "A", "B", 500), testkit::tx("2", 1, "A", "B", 700)});
    REQUIRE(g.link_count() == 1);
    const auto& l = g.links()[0];
    CHECK(g.name(l.source) == "A");
    CHECK(g.name(l.target) == "B");
    CHECK(l.record.count() == 2);
    CHECK(l.record.volume == Amount::from_units(12));
}

TEST_CASE("aggregate: a lone self-transfer leaves an empty graph") {
    const auto g = aggregate({testkit::tx("1", 0, "A", "A", 500)});
    CHECK(g.empty());
    CHECK(g.link_count() == 0);
    CHECK(g.self_transfers_dropped() == 1);
}

TEST_CASE("aggregate conserves transactions and volume") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto txs = testkit::random_ledger(rng, 30, 80);
        txs.push_back(testkit::tx("self", 5, "n0001", "n0001", 999));
        Amount total;
        for (const auto& t : txs)
            if (t.source != t.target) total += t.amount;
        const auto g = aggregate(txs);
        CHECK(g.totals().transactions == txs.size() - 1);
        CHECK(g.totals().volume == total);
        CHECK(g.totals().links == 80);
        std::size_t carried = 0;
        for (const auto& l : g.links()) carried += l.record.count();
        CHECK(carried == txs.size() - 1);
    }
}

TEST_CASE("pearson") {
    const std::vector<double> x{1, 2, 3, 4, 10};
    CHECK(*pearson(x, x).r == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> y{2, 1, 4, 3, 6};
    const auto a = pearson(x, y), b = pearson(y, x);
    CHECK(*a.r == doctest::Approx(*b.r).epsilon(1e-12));
    std::vector<double> ya;
    for (double v : y) ya.push_back(3.0 * v - 7.0);
    CHECK(*pearson(x, ya).r == doctest::Approx(*a.r).epsilon(1e-12));
    const std::vector<double> flat{1, 1, 1, 1, 1};
    CHECK_FALSE(pearson(x, flat).r);

    // graph with count == volume on every link
    std::vector<Transaction> txs;
    for (int k = 1; k <= 6; ++k)
        for (int r = 0; r < k; ++r)
            txs.push_back(testkit::tx(std::to_string(k) + "-" + std::to_string(r), r, "s" + std::to_string(k),
                                      "t" + std::to_string(k), 100));
    const auto ds = degree_stats(aggregate(txs));
    REQUIRE(ds.tx_vs_volume.r);
    CHECK(*ds.tx_vs_volume.r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hurwitz zeta") {
    CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-12));
    CHECK(hurwitz_zeta(2.0, 2.0) == doctest::Approx(M_PI * M_PI / 6 - 1).epsilon(1e-12));
    CHECK(hurwitz_zeta(3.0, 1.0) == doctest::Approx(1.2020569031595942).epsilon(1e-12));
}

namespace {

// Inverse-CDF sampler for the discrete power law p(k) = k^-alpha / zeta(alpha, kmin), k >= kmin.
std::vector<std::uint64_t> sample_discrete_power_law(double alpha, std::uint64_t kmin, std::size_t n,
                                                     std::uint64_t seed) {
    // Tabulate the CDF up to a point where the remaining mass is negligible,
    // then fall back to the continuous approximation for the far tail.
    const double norm = hurwitz_zeta(alpha, double(kmin));
    std::vector<double> cdf;
    double acc = 0.0;
    for (std::uint64_t k = kmin; k < kmin + 200000; ++k) {
        acc += std::pow(double(k), -alpha) / norm;
        cdf.push_back(acc);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = u(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), r);
        if (it != cdf.end()) {
            out.push_back(kmin + std::uint64_t(it - cdf.begin()));
        } else {
            const double x0 = double(kmin + cdf.size()) - 0.5;
            const double tail = (1.0 - r) / (1.0 - cdf.back());
            out.push_back(std::uint64_t(x0 * std::pow(tail, -1.0 / (alpha - 1.0)) + 0.5));
        }
    }
    return out;
}

} // namespace

TEST_CASE("discrete power-law fit recovers alpha = 2.5") {
    const auto xs = sample_discrete_power_law(2.5, 1, 100000, 2024);
    const auto fit = fit_discrete_power_law(xs);
    REQUIRE(fit.fitted);
    CHECK(std::abs(fit.alpha - 2.5) <= 0.05);
}

TEST_CASE("continuous power-law fit recovers alpha") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs;
    for (int i = 0; i < 50000; ++i) xs.push_back(std::pow(1.0 - u(rng), -1.0 / 1.5)); // alpha = 2.5, xmin = 1
    const auto fit = fit_continuous_power_law(xs);
    REQUIRE(fit.fitted);
    CHECK(std::abs(fit.alpha - 2.5) <= 0.05);
}

TEST_CASE("degree_stats on an empty graph throws") {
    CHECK_THROWS_AS(degree_stats(LedgerGraph{}), std::invalid_argument);
}
