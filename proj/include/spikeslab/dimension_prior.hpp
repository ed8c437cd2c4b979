#pragma once

// Priors pi_n on the number of nonzero coordinates p in {0, ..., n}.

#include <span>
#include <string>
#include <vector>

namespace spikeslab {

enum class DimensionFamily { Complexity, BetaBinomialPower, Binomial, Poisson, Geometric, Custom };

std::string to_string(DimensionFamily family);

/// A normalised log-pmf over {0, ..., n}. Immutable after construction.
class DimensionPrior {
public:
    int n() const noexcept { return static_cast<int>(log_pmf_.size()) - 1; }
    DimensionFamily family() const noexcept { return family_; }
    const std::vector<double>& params() const noexcept { return params_; }
    std::span<const double> log_pmf() const noexcept { return log_pmf_; }
    double log_pmf(int p) const { return log_pmf_.at(static_cast<std::size_t>(p)); }

    /// Normalises an arbitrary log-weight vector of length n + 1.
    /// -inf entries are accepted (degenerate priors); at least one must be finite.
    static DimensionPrior custom(std::vector<double> log_weights);

private:
    DimensionPrior(std::vector<double> log_weights, DimensionFamily family, std::vector<double> params);

    std::vector<double> log_pmf_;
    DimensionFamily family_;
    std::vector<double> params_;

    friend DimensionPrior complexity_prior(int, double, double);
    friend DimensionPrior betabin_power_prior(int, double);
    friend DimensionPrior binomial_prior(int, double);
    friend DimensionPrior poisson_prior(int, double);
    friend DimensionPrior geometric_prior(int, double);
};

/// pi(p) proportional to exp(-kappa p log(b n / p)), with the p = 0 weight set to 1.
DimensionPrior complexity_prior(int n, double kappa, double b = 3.0);

/// pi(p) proportional to C(2n - p, n)^kappa.
DimensionPrior betabin_power_prior(int n, double kappa);

/// Binomial(n, alpha), 0 < alpha < 1.
DimensionPrior binomial_prior(int n, double alpha);

/// Poisson(alpha) truncated to {0, ..., n}.
DimensionPrior poisson_prior(int n, double alpha);

/// Geometric pi(p) proportional to (1 - lam)^p, success probability 0 < lam < 1.
DimensionPrior geometric_prior(int n, double lam);

/// log pi(p) - log C(n, p): the prior weight of one particular support of size p.
double log_model_weight(const DimensionPrior& prior, int p);

}  // namespace spikeslab
