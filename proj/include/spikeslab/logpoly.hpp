#pragma once

// Polynomials with nonnegative coefficients held as log-coefficients.
//
// The posterior needs the elementary symmetric polynomials e_p(r) of the
// likelihood ratios r_i, i.e. the coefficients of prod_i (1 + r_i Z). At
// n in the hundreds these overflow doubles, so every coefficient lives on the
// log scale and multiplication is a log-sum-exp convolution. No subtraction
// ever happens, so there is no sign to track and no cancellation.

#include <span>
#include <vector>

namespace spikeslab {

class LogPoly {
public:
    LogPoly() : log_coeffs_{0.0} {}  // the constant 1
    explicit LogPoly(std::vector<double> log_coeffs);

    /// 1 + r Z, with r = exp(log_r).
    static LogPoly linear(double log_r);

    int degree() const noexcept { return static_cast<int>(log_coeffs_.size()) - 1; }
    double operator[](int k) const { return log_coeffs_[static_cast<std::size_t>(k)]; }
    std::span<const double> log_coeffs() const noexcept { return log_coeffs_; }

    /// log P(1) = log of the coefficient sum.
    double log_eval_at_one() const;

private:
    std::vector<double> log_coeffs_;
};

enum class ProductStrategy { Schoolbook, DivideAndConquer };

/// Coefficient k of a * b, computed as log-sum-exp over i + j = k.
LogPoly logsumexp_convolve(const LogPoly& a, const LogPoly& b);

/// prod_i (1 + exp(log_r[i]) Z).
LogPoly product_of_linear_factors(std::span<const double> log_r,
                                  ProductStrategy strategy = ProductStrategy::DivideAndConquer);

/// prefix[i] = prod_{j < i} (1 + r_j Z) and suffix[i] = prod_{j > i} (1 + r_j Z),
/// for i = 0..n (suffix[n] and suffix[n-1] are both the empty product).
struct LeaveOneOutTable {
    std::vector<LogPoly> prefix;
    std::vector<LogPoly> suffix;

    int size() const noexcept { return static_cast<int>(prefix.size()) - 1; }
    /// prod_{j != i} (1 + r_j Z).
    LogPoly leave_one_out(int i) const;
};

LeaveOneOutTable leave_one_out_table(std::span<const double> log_r);

/// log sum_p exp(log_w[p] + poly[p]). Throws on a length mismatch.
double weighted_coeff_sum(const LogPoly& poly, std::span<const double> log_w);

}  // namespace spikeslab
