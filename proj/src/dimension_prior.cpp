#include "spikeslab/dimension_prior.hpp"

#include "spikeslab/special.hpp"

#include <cmath>
#include <stdexcept>

namespace spikeslab {

namespace {

void require_n(int n) {
    if (n < 1) throw std::invalid_argument("dimension prior needs n >= 1");
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
}

void require_open_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

}  // namespace

std::string to_string(DimensionFamily family) {
    switch (family) {
        case DimensionFamily::Complexity: return "complexity";
        case DimensionFamily::BetaBinomialPower: return "betabin";
        case DimensionFamily::Binomial: return "binomial";
        case DimensionFamily::Poisson: return "poisson";
        case DimensionFamily::Geometric: return "geometric";
        case DimensionFamily::Custom: return "custom";
    }
    return "unknown";
}

DimensionPrior::DimensionPrior(std::vector<double> log_weights, DimensionFamily family, std::vector<double> params)
    : log_pmf_(std::move(log_weights)), family_(family), params_(std::move(params)) {
    if (log_pmf_.size() < 2) throw std::invalid_argument("dimension prior needs n >= 1");
    for (double w : log_pmf_)
        if (std::isnan(w) || w == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("dimension prior weights must be finite or -inf");
    const double z = log_sum_exp(log_pmf_);
    if (!std::isfinite(z)) throw std::invalid_argument("dimension prior has no positive weight");
    for (double& w : log_pmf_) w -= z;
}

DimensionPrior DimensionPrior::custom(std::vector<double> log_weights) {
    return DimensionPrior(std::move(log_weights), DimensionFamily::Custom, {});
}

DimensionPrior complexity_prior(int n, double kappa, double b) {
    require_n(n);
    require_positive(kappa, "kappa");
    require_positive(b, "b");
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    for (int p = 1; p <= n; ++p) w[p] = -kappa * p * std::log(b * n / p);
    return DimensionPrior(std::move(w), DimensionFamily::Complexity, {kappa, b});
}

DimensionPrior betabin_power_prior(int n, double kappa) {
    require_n(n);
    require_positive(kappa, "kappa");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) w[p] = kappa * log_binomial(2 * n - p, n);
    return DimensionPrior(std::move(w), DimensionFamily::BetaBinomialPower, {kappa});
}

DimensionPrior binomial_prior(int n, double alpha) {
    require_n(n);
    require_open_unit(alpha, "alpha");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    const double la = std::log(alpha), lb = std::log1p(-alpha);
    for (int p = 0; p <= n; ++p) w[p] = log_binomial(n, p) + p * la + (n - p) * lb;
    return DimensionPrior(std::move(w), DimensionFamily::Binomial, {alpha});
}

DimensionPrior poisson_prior(int n, double alpha) {
    require_n(n);
    require_positive(alpha, "alpha");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    const double la = std::log(alpha);
    for (int p = 0; p <= n; ++p) w[p] = p * la - std::lgamma(p + 1.0);
    return DimensionPrior(std::move(w), DimensionFamily::Poisson, {alpha});
}

DimensionPrior geometric_prior(int n, double lam) {
    require_n(n);
    require_open_unit(lam, "geometric success probability");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    const double l = std::log1p(-lam);
    for (int p = 0; p <= n; ++p) w[p] = p * l;
    return DimensionPrior(std::move(w), DimensionFamily::Geometric, {lam});
}

double log_model_weight(const DimensionPrior& prior, int p) {
    if (p < 0 || p > prior.n()) throw std::out_of_range("model size outside {0, ..., n}");
    return prior.log_pmf(p) - log_binomial(prior.n(), p);
}

}  // namespace spikeslab
