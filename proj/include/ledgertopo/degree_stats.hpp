#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "ledgertopo/graph.hpp"

namespace ledgertopo {

/// Power-law tail fit p(x) ~ x^-alpha for x >= xmin.
struct PowerLawFit {
    bool fitted = false;   ///< false when fewer than two distinct values are available
    bool reliable = false; ///< false when fewer than 10 distinct values were observed
    double alpha = 0.0;
    double xmin = 0.0;
    double ks_distance = 0.0;
    std::size_t n_tail = 0;
};

struct Correlation {
    std::optional<double> r; ///< nullopt when either series has zero variance
    double p_value = 1.0;    ///< two-sided, Student t with n-2 degrees of freedom
    std::size_t n = 0;
};

struct DegreeStats {
    std::map<std::size_t, std::size_t> in_degree_histogram;
    std::map<std::size_t, std::size_t> out_degree_histogram;
    PowerLawFit in_degree;
    PowerLawFit out_degree;
    PowerLawFit tx_per_link;
    PowerLawFit volume_per_link;
    Correlation tx_vs_volume;
};

/// Hurwitz zeta sum_{k>=0} (k+q)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Discrete maximum-likelihood fit with xmin chosen by minimum KS distance.
/// Values < 1 are ignored.
PowerLawFit fit_discrete_power_law(std::span<const std::uint64_t> samples);

/// Continuous counterpart (closed-form MLE). Values <= 0 are ignored.
PowerLawFit fit_continuous_power_law(std::span<const double> samples);

Correlation pearson(std::span<const double> x, std::span<const double> y);

/// In/out degrees over nodes (zero degrees are excluded from the fits),
/// transactions per link, volume per link and their Pearson correlation.
/// Throws std::invalid_argument on an empty graph.
DegreeStats degree_stats(const LedgerGraph& g);

} // namespace ledgertopo
