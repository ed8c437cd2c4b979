#pragma once

// Log-domain scalar helpers shared by every module.

#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace spikeslab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

/// log of the standard normal density.
inline double log_norm_pdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

/// log Phi(z), accurate deep into the lower tail.
double log_norm_cdf(double z);

/// log of E[max(Y, 0)] for Y ~ N(m, 1), i.e. m Phi(m) + phi(m).
double log_positive_part_mean(double m);

/// log(exp(a) + exp(b)); -inf operands allowed.
inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

/// log(1 - exp(x)) for x <= 0.
inline double log1m_exp(double x) {
    if (x > -std::numbers::ln2) return std::log(-std::expm1(x));
    return std::log1p(-std::exp(x));
}

/// log(exp(a) - exp(b)) for a >= b.
inline double log_sub_exp(double a, double b) {
    if (b == kNegInf) return a;
    return a + log1m_exp(b - a);
}

/// log sum_i exp(v_i); returns -inf on an empty or all -inf input.
double log_sum_exp(std::span<const double> v);

/// log C(n, k) via lgamma.
inline double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace spikeslab
