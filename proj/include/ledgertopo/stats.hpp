#pragma once

#include <optional>
#include <span>
#include <vector>

namespace ledgertopo::stats {

double mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

/// Linear-interpolation quantile on sorted data: h = (n - 1) p.
double quantile_sorted(std::span<const double> sorted, double p);

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr() const { return q3 - q1; }
};

Summary summarize(std::span<const double> xs);

/// (x - mean) / sd, undefined when sd == 0.
std::optional<double> z_score(double x, const Summary& null);

/// (x - median) / IQR, undefined when IQR == 0.
std::optional<double> robust_z_score(double x, const Summary& null);

struct AndersonDarling {
    double a2 = 0.0;        ///< raw statistic
    double a2_star = 0.0;   ///< small-sample corrected A*^2 = A^2 (1 + 0.75/n + 2.25/n^2)
    double p_value = 0.0;
    bool rejected = false;  ///< p < alpha
};

/// Anderson-Darling test of normality with mean and variance estimated from
/// the data. Requires n >= 8. A constant sample is reported as rejected with
/// an infinite statistic.
AndersonDarling anderson_darling_normal(std::span<const double> xs, double alpha = 0.05);

/// p-value approximation for the corrected statistic (D'Agostino and Stephens).
double anderson_darling_p_value(double a2_star);

} // namespace ledgertopo::stats
