#pragma once

// Thresholding comparators and d_q losses.

#include <span>
#include <vector>

namespace spikeslab {

/// d_q(a, b) = sum_i |a_i - b_i|^q, 0 < q <= 2, without the q-th root.
struct LossSpec {
    double q = 2.0;

    explicit LossSpec(double q_ = 2.0);
};

/// Keeps x_i when |x_i| > sqrt(2 log n); needs n >= 2.
std::vector<double> hard_threshold(std::span<const double> x);

/// Keeps x_i when |x_i| > sqrt(2 log(n / p_n)); needs 1 <= p_n < n.
std::vector<double> hard_threshold_oracle(std::span<const double> x, int p_n);

/// Entrywise x_i 1{|x_i| > threshold}.
std::vector<double> threshold_at(std::span<const double> x, double threshold);

double dq_loss(std::span<const double> a, std::span<const double> b, LossSpec spec);

}  // namespace spikeslab
