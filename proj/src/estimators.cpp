#include "spikeslab/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace spikeslab {

LossSpec::LossSpec(double q_) : q(q_) {
    if (!(q > 0.0 && q <= 2.0)) throw std::invalid_argument("loss exponent q must lie in (0, 2]");
}

std::vector<double> threshold_at(std::span<const double> x, double threshold) {
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) > threshold) out[i] = x[i];
    return out;
}

std::vector<double> hard_threshold(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("hard thresholding needs n >= 2");
    return threshold_at(x, std::sqrt(2.0 * std::log(static_cast<double>(x.size()))));
}

std::vector<double> hard_threshold_oracle(std::span<const double> x, int p_n) {
    const auto n = static_cast<int>(x.size());
    if (p_n < 1 || p_n >= n) throw std::invalid_argument("oracle sparsity must satisfy 1 <= p_n < n");
    return threshold_at(x, std::sqrt(2.0 * std::log(static_cast<double>(n) / p_n)));
}

double dq_loss(std::span<const double> a, std::span<const double> b, LossSpec spec) {
    if (a.size() != b.size()) throw std::invalid_argument("loss arguments differ in length");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        s += spec.q == 2.0 ? d * d : spec.q == 1.0 ? d : std::pow(d, spec.q);
    }
    return s;
}

}  // namespace spikeslab
