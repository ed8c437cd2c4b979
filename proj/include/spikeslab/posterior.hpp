#pragma once

// Exact posterior functionals for the sparse normal-means model
//
//   X_i = theta_i + eps_i,  eps_i ~ N(0, 1),
//
// under the hierarchical spike-and-slab prior: a model size p ~ pi_n, a
// uniformly chosen support of size p, and i.i.d. slab draws on the support.
//
// Summing the posterior over all 2^n supports reduces to coefficients of
// prod_i (phi(X_i) + psi(X_i) Z). We factor out prod_i phi(X_i), which cancels
// in every posterior quantity, and work with prod_i (1 + r_i Z) for the
// likelihood ratios r_i = psi(X_i) / phi(X_i), on the log scale.

#include "spikeslab/dimension_prior.hpp"
#include "spikeslab/logpoly.hpp"
#include "spikeslab/slab.hpp"

#include <array>
#include <span>
#include <vector>

namespace spikeslab {

struct FitOptions {
    ProductStrategy strategy = ProductStrategy::DivideAndConquer;
    std::array<double, 2> credible_levels{0.025, 0.975};
    /// Inclusion probabilities and means are always computed; medians and
    /// credible intervals cost a root-find per coordinate and can be skipped.
    bool medians = true;
    bool intervals = true;
    unsigned threads = 1;
};

/// The prior-independent part of a fit: per-coordinate slab functionals and
/// the full and leave-one-out products. One Evidence can be contracted
/// against any number of dimension priors.
struct Evidence {
    SlabPrior slab;
    std::vector<double> x;
    std::vector<double> log_phi;
    std::vector<double> log_psi;
    std::vector<double> log_ratio;   ///< log psi - log phi
    std::vector<double> slab_mean;   ///< zeta / psi
    LogPoly full;
    std::vector<LogPoly> leave_one_out;  ///< empty when not requested

    int n() const noexcept { return static_cast<int>(x.size()); }
};

/// Throws std::invalid_argument on empty or non-finite data.
Evidence compute_evidence(std::span<const double> x, const SlabPrior& slab, const FitOptions& options = {},
                          bool with_leave_one_out = true);

struct DimensionPosterior {
    double log_partition;           ///< log Q_n - sum_i log phi(X_i)
    std::vector<double> log_pmf;    ///< posterior of |S_theta|, normalised
};

DimensionPosterior dimension_posterior(const Evidence& evidence, const DimensionPrior& prior);

struct PosteriorSummary {
    SlabPrior slab;
    std::vector<double> x;
    double log_partition = 0.0;
    std::vector<double> dim_log_pmf;
    std::vector<double> inclusion_prob;
    std::vector<double> exclusion_prob;  ///< 1 - inclusion_prob without the cancellation
    std::vector<double> mean;
    std::vector<double> median;
    std::vector<double> credible_lo;
    std::vector<double> credible_hi;
    std::array<double, 2> levels{0.025, 0.975};

    int n() const noexcept { return static_cast<int>(x.size()); }
    /// sum_p p Pi(|S| = p | X).
    double expected_dimension() const;
};

PosteriorSummary summarize(const Evidence& evidence, const DimensionPrior& prior, const FitOptions& options = {});

PosteriorSummary fit(std::span<const double> x, const DimensionPrior& prior, const SlabPrior& slab,
                     const FitOptions& options = {});

/// Marginal posterior of one coordinate: an atom of mass 1 - q at zero plus
/// q times the slab posterior with cdf H(u) = psi(x, u) / psi(x).
struct CoordinateMarginal {
    SlabPrior slab;
    double x;
    double inclusion_prob;
    double exclusion_prob = 1.0 - inclusion_prob;

    double cdf(double u) const;
    /// Generalised inverse of cdf; level must lie in (0, 1).
    double quantile(double level) const;
    /// [H^{-1}(1 - 1/(2q)) v 0] + [H^{-1}(1/(2q)) ^ 0].
    double median() const;
};

CoordinateMarginal marginal(const PosteriorSummary& summary, int i);
double marginal_cdf(const PosteriorSummary& summary, int i, double u);
double marginal_quantile(const PosteriorSummary& summary, int i, double level);
double coordinatewise_median(const PosteriorSummary& summary, int i);

/// Residuals of the two algebraic identities every fit must satisfy:
/// sum_i q_i against the posterior expected dimension (relative), and the
/// worst |mean_i - q_i zeta(x_i) / psi(x_i)| (relative to max(1, |mean_i|)),
/// with zeta and psi re-evaluated from the slab functions.
struct IdentityResiduals {
    double dimension;
    double mean;
};

IdentityResiduals identity_residuals(const PosteriorSummary& summary);

/// Marginal maximum-likelihood mixing weight for the independent
/// (binomial) prior, by golden-section search over [1/n, 1 - 1e-6].
double eb_binomial_weight(std::span<const double> x, const SlabPrior& slab);
/// Same, reusing precomputed log likelihood ratios.
double eb_binomial_weight_from_ratios(std::span<const double> log_ratio);

}  // namespace spikeslab
