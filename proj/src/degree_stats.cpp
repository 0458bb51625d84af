#include "ledgertopo/degree_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/tools/minima.hpp>

namespace ledgertopo {

namespace {

constexpr std::size_t kMinDistinctForReliableFit = 10;
constexpr std::size_t kMinTail = 10;
constexpr std::size_t kMaxXminCandidates = 400;

// Candidate xmin values: distinct sorted values leaving at least kMinTail
// samples in the tail, thinned to at most kMaxXminCandidates.
template <typename T>
std::vector<T> xmin_candidates(const std::vector<T>& sorted) {
    std::vector<T> distinct;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) continue;
        if (sorted.size() - i < std::min(kMinTail, sorted.size())) break;
        distinct.push_back(sorted[i]);
    }
    if (distinct.size() <= kMaxXminCandidates) return distinct;
    std::vector<T> thinned;
    for (std::size_t k = 0; k < kMaxXminCandidates; ++k)
        thinned.push_back(distinct[k * distinct.size() / kMaxXminCandidates]);
    return thinned;
}

template <typename T>
std::size_t distinct_count(const std::vector<T>& sorted) {
    if (sorted.empty()) return 0;
    std::size_t d = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) d += sorted[i] != sorted[i - 1];
    return d;
}

} // namespace

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) throw std::domain_error("hurwitz_zeta requires s > 1, q > 0");
    constexpr int N = 12;
    // B_{2j} / (2j)!
    constexpr double kCoeff[] = {1.0 / 12.0,       -1.0 / 720.0,          1.0 / 30240.0,
                                 -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0};
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::pow(q + k, -s);
    const double a = q + N;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    double term = s * std::pow(a, -s - 1.0);
    for (int j = 1; j <= 6; ++j) {
        sum += kCoeff[j - 1] * term;
        term *= (s + 2 * j - 1) * (s + 2 * j) / (a * a);
    }
    return sum;
}

PowerLawFit fit_discrete_power_law(std::span<const std::uint64_t> samples) {
    std::vector<std::uint64_t> xs;
    for (auto v : samples)
        if (v >= 1) xs.push_back(v);
    std::sort(xs.begin(), xs.end());

    PowerLawFit best;
    const std::size_t distinct = distinct_count(xs);
    if (distinct < 2) return best;

    // Suffix sums of log(x) so each candidate's likelihood is O(1) to set up.
    std::vector<double> log_suffix(xs.size() + 1, 0.0);
    for (std::size_t i = xs.size(); i-- > 0;) log_suffix[i] = log_suffix[i + 1] + std::log(static_cast<double>(xs[i]));

    for (const auto xmin : xmin_candidates(xs)) {
        const std::size_t start = std::lower_bound(xs.begin(), xs.end(), xmin) - xs.begin();
        const std::size_t n = xs.size() - start;
        if (n < 2 || xs[start] == xs.back()) continue;
        const double sum_log = log_suffix[start];
        const double q = static_cast<double>(xmin);

        auto neg_loglik = [&](double alpha) { return n * std::log(hurwitz_zeta(alpha, q)) + alpha * sum_log; };
        const auto [alpha, _] = boost::math::tools::brent_find_minima(neg_loglik, 1.0001, 20.0, 40);

        const double norm = hurwitz_zeta(alpha, q);
        double ks = 0.0;
        for (std::size_t i = start; i < xs.size();) {
            std::size_t j = i;
            while (j < xs.size() && xs[j] == xs[i]) ++j;
            const double empirical_below = static_cast<double>(i - start) / n;
            const double empirical_upto = static_cast<double>(j - start) / n;
            const double model_below = 1.0 - hurwitz_zeta(alpha, static_cast<double>(xs[i])) / norm;
            const double model_upto = 1.0 - hurwitz_zeta(alpha, static_cast<double>(xs[i]) + 1.0) / norm;
            ks = std::max({ks, std::abs(empirical_below - model_below), std::abs(empirical_upto - model_upto)});
            i = j;
        }
        if (!best.fitted || ks < best.ks_distance) {
            best.fitted = true;
            best.alpha = alpha;
            best.xmin = q;
            best.ks_distance = ks;
            best.n_tail = n;
        }
    }
    best.reliable = best.fitted && distinct >= kMinDistinctForReliableFit;
    return best;
}

PowerLawFit fit_continuous_power_law(std::span<const double> samples) {
    std::vector<double> xs;
    for (double v : samples)
        if (v > 0.0 && std::isfinite(v)) xs.push_back(v);
    std::sort(xs.begin(), xs.end());

    PowerLawFit best;
    const std::size_t distinct = distinct_count(xs);
    if (distinct < 2) return best;

    std::vector<double> log_suffix(xs.size() + 1, 0.0);
    for (std::size_t i = xs.size(); i-- > 0;) log_suffix[i] = log_suffix[i + 1] + std::log(xs[i]);

    for (const double xmin : xmin_candidates(xs)) {
        const std::size_t start = std::lower_bound(xs.begin(), xs.end(), xmin) - xs.begin();
        const std::size_t n = xs.size() - start;
        const double denom = log_suffix[start] - n * std::log(xmin);
        if (n < 2 || !(denom > 0.0)) continue;
        const double alpha = 1.0 + n / denom;

        double ks = 0.0;
        for (std::size_t i = start; i < xs.size(); ++i) {
            const double model = 1.0 - std::pow(xs[i] / xmin, 1.0 - alpha);
            const double lo = static_cast<double>(i - start) / n;
            const double hi = static_cast<double>(i - start + 1) / n;
            ks = std::max({ks, std::abs(model - lo), std::abs(hi - model)});
        }
        if (!best.fitted || ks < best.ks_distance) {
            best.fitted = true;
            best.alpha = alpha;
            best.xmin = xmin;
            best.ks_distance = ks;
            best.n_tail = n;
        }
    }
    best.reliable = best.fitted && distinct >= kMinDistinctForReliableFit;
    return best;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: series lengths differ");
    Correlation out;
    out.n = x.size();
    if (out.n < 2) return out;
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / out.n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / out.n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < out.n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return out;
    const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    out.r = r;
    if (out.n > 2 && std::abs(r) < 1.0) {
        const double df = static_cast<double>(out.n - 2);
        const double t = r * std::sqrt(df / (1.0 - r * r));
        boost::math::students_t dist(df);
        out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    } else {
        out.p_value = out.n > 2 ? 0.0 : 1.0;
    }
    return out;
}

DegreeStats degree_stats(const LedgerGraph& g) {
    if (g.empty()) throw std::invalid_argument("degree_stats: empty graph");
    DegreeStats out;
    std::vector<std::uint64_t> in_deg, out_deg, tx_count;
    std::vector<double> counts, volumes;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto din = g.in_links(v).size();
        const auto dout = g.out_links(v).size();
        ++out.in_degree_histogram[din];
        ++out.out_degree_histogram[dout];
        in_deg.push_back(din);
        out_deg.push_back(dout);
    }
    for (const auto& l : g.links()) {
        tx_count.push_back(l.record.count());
        counts.push_back(static_cast<double>(l.record.count()));
        volumes.push_back(l.record.volume.to_double());
    }
    out.in_degree = fit_discrete_power_law(in_deg);
    out.out_degree = fit_discrete_power_law(out_deg);
    out.tx_per_link = fit_discrete_power_law(tx_count);
    out.volume_per_link = fit_continuous_power_law(volumes);
    out.tx_vs_volume = pearson(counts, volumes);
    return out;
}

} // namespace ledgertopo
