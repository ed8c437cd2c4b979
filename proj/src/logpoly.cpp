#include "spikeslab/logpoly.hpp"

#include "spikeslab/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spikeslab {

LogPoly::LogPoly(std::vector<double> log_coeffs) : log_coeffs_(std::move(log_coeffs)) {
    if (log_coeffs_.empty()) throw std::invalid_argument("LogPoly needs at least one coefficient");
    for (double c : log_coeffs_)
        if (std::isnan(c)) throw std::invalid_argument("LogPoly coefficient is NaN");
}

LogPoly LogPoly::linear(double log_r) { return LogPoly({0.0, log_r}); }

double LogPoly::log_eval_at_one() const { return log_sum_exp(log_coeffs_); }

LogPoly logsumexp_convolve(const LogPoly& a, const LogPoly& b) {
    const int da = a.degree(), db = b.degree();
    const auto ca = a.log_coeffs(), cb = b.log_coeffs();
    std::vector<double> out(static_cast<std::size_t>(da + db) + 1);
    for (int k = 0; k <= da + db; ++k) {
        const int lo = std::max(0, k - db), hi = std::min(k, da);
        double mx = kNegInf;
        for (int i = lo; i <= hi; ++i) mx = std::max(mx, ca[i] + cb[k - i]);
        if (mx == kNegInf) {
            out[k] = kNegInf;
            continue;
        }
        double sum = 0.0;
        for (int i = lo; i <= hi; ++i) sum += std::exp(ca[i] + cb[k - i] - mx);
        out[k] = mx + std::log(sum);
    }
    return LogPoly(std::move(out));
}

namespace {

LogPoly schoolbook(std::span<const double> log_r) {
    std::vector<double> c(log_r.size() + 1, kNegInf);
    c[0] = 0.0;
    for (std::size_t m = 0; m < log_r.size(); ++m) {
        // multiply the degree-m polynomial in c by (1 + r Z), top down
        for (std::size_t k = m + 1; k >= 1; --k) c[k] = log_add_exp(c[k], c[k - 1] + log_r[m]);
    }
    return LogPoly(std::move(c));
}

LogPoly product_tree(std::span<const double> log_r) {
    if (log_r.empty()) return LogPoly();
    if (log_r.size() == 1) return LogPoly::linear(log_r[0]);
    const std::size_t half = log_r.size() / 2;
    return logsumexp_convolve(product_tree(log_r.first(half)), product_tree(log_r.subspan(half)));
}

}  // namespace

LogPoly product_of_linear_factors(std::span<const double> log_r, ProductStrategy strategy) {
    for (double v : log_r)
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("log ratio must be finite or -inf");
    return strategy == ProductStrategy::Schoolbook ? schoolbook(log_r) : product_tree(log_r);
}

LogPoly LeaveOneOutTable::leave_one_out(int i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("leave-one-out index out of range");
    return logsumexp_convolve(prefix[i], suffix[i]);
}

LeaveOneOutTable leave_one_out_table(std::span<const double> log_r) {
    const std::size_t n = log_r.size();
    LeaveOneOutTable t;
    t.prefix.reserve(n + 1);
    t.suffix.resize(n + 1);
    t.prefix.emplace_back();
    for (std::size_t i = 0; i < n; ++i)
        t.prefix.push_back(logsumexp_convolve(t.prefix.back(), LogPoly::linear(log_r[i])));
    // suffix[n] and suffix[n-1] stay the empty product
    for (std::size_t i = n; i-- > 1;)
        t.suffix[i - 1] = logsumexp_convolve(t.suffix[i], LogPoly::linear(log_r[i]));
    return t;
}

double weighted_coeff_sum(const LogPoly& poly, std::span<const double> log_w) {
    if (log_w.size() != poly.log_coeffs().size())
        throw std::invalid_argument("weight vector length does not match polynomial degree");
    std::vector<double> terms(log_w.size());
    for (std::size_t p = 0; p < terms.size(); ++p) terms[p] = log_w[p] + poly[static_cast<int>(p)];
    return log_sum_exp(terms);
}

}  // namespace spikeslab
