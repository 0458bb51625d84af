#include "ledgertopo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ledgertopo::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::span<const double> xs) {
    Summary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    s.mean = mean(xs);
    s.sd = sample_sd(xs);
    // Constant samples must give sd exactly 0 so that z is reported undefined.
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) s.sd = 0.0;
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    return s;
}

std::optional<double> z_score(double x, const Summary& null) {
    if (null.sd == 0.0) return std::nullopt;
    return (x - null.mean) / null.sd;
}

std::optional<double> robust_z_score(double x, const Summary& null) {
    const double iqr = null.iqr();
    if (iqr == 0.0) return std::nullopt;
    return (x - null.median) / iqr;
}

double anderson_darling_p_value(double a) {
    if (a >= 153.467) return 0.0; // the quadratic turns upward beyond its vertex
    if (a >= 0.6) return std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
    if (a >= 0.34) return std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
    if (a >= 0.2) return 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
    return 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
}

AndersonDarling anderson_darling_normal(std::span<const double> xs, double alpha) {
    const std::size_t n = xs.size();
    if (n < 8) throw std::invalid_argument("Anderson-Darling test needs at least 8 observations");
    AndersonDarling out;
    const double m = mean(xs);
    const double sd = sample_sd(xs);
    if (!(sd > 0.0) || std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
        out.a2 = out.a2_star = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        out.rejected = true;
        return out;
    }

    std::vector<double> y(xs.begin(), xs.end());
    std::sort(y.begin(), y.end());
    // log Phi(z) and log(1 - Phi(z)) through erfc to keep the tails accurate.
    auto log_cdf = [](double z) { return std::log(0.5 * std::erfc(-z / std::sqrt(2.0))); };
    auto log_sf = [](double z) { return std::log(0.5 * std::erfc(z / std::sqrt(2.0))); };
    constexpr double kFloor = -745.0;

    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = (y[i] - m) / sd;
        const double zr = (y[n - 1 - i] - m) / sd;
        const double term = std::max(log_cdf(zi), kFloor) + std::max(log_sf(zr), kFloor);
        s += (2.0 * static_cast<double>(i) + 1.0) * term;
    }
    const double nd = static_cast<double>(n);
    out.a2 = -nd - s / nd;
    out.a2_star = out.a2 * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
    out.p_value = std::clamp(anderson_darling_p_value(out.a2_star), 0.0, 1.0);
    out.rejected = out.p_value < alpha;
    return out;
}

} // namespace ledgertopo::stats
