#include "spikeslab/special.hpp"

#include <algorithm>

namespace spikeslab {

namespace {

// Asymptotic expansion of the Mills ratio correction: Phi(z) ~ phi(z)/|z| * S(1/z^2).
double mills_series(double z) {
    const double w = 1.0 / (z * z);
    // 1 - w + 3w^2 - 15w^3 + 105w^4 - 945w^5 + 10395w^6
    return 1.0 + w * (-1.0 + w * (3.0 + w * (-15.0 + w * (105.0 + w * (-945.0 + w * 10395.0)))));
}

}  // namespace

double log_norm_cdf(double z) {
    if (std::isnan(z)) return z;
    if (z > 5.0) return std::log1p(-0.5 * std::erfc(z / std::numbers::sqrt2));
    if (z > -35.0) return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
    if (z == -std::numeric_limits<double>::infinity()) return kNegInf;
    return log_norm_pdf(z) - std::log(-z) + std::log(mills_series(z));
}

double log_positive_part_mean(double m) {
    if (m >= 0.0) return std::log(m * std::exp(log_norm_cdf(m)) + std::exp(log_norm_pdf(m)));
    if (m > -35.0) {
        // phi(m) - |m| Phi(m); relative cancellation is of order eps * m^2.
        const double phi = std::exp(log_norm_pdf(m));
        const double cdf = 0.5 * std::erfc(-m / std::numbers::sqrt2);
        const double v = phi + m * cdf;
        if (v > 0.0) return std::log(v);
    }
    // phi(m) (w - 3w^2 + 15w^3 - 105w^4 + 945w^5), w = 1/m^2
    const double w = 1.0 / (m * m);
    const double s = w * (1.0 + w * (-3.0 + w * (15.0 + w * (-105.0 + w * 945.0))));
    return log_norm_pdf(m) + std::log(s);
}

double log_sum_exp(std::span<const double> v) {
    if (v.empty()) return kNegInf;
    const double mx = *std::max_element(v.begin(), v.end());
    if (mx == kNegInf) return kNegInf;
    double sum = 0.0;
    for (double e : v) sum += std::exp(e - mx);
    return mx + std::log(sum);
}

}  // namespace spikeslab
