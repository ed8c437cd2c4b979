#include "spikeslab/posterior.hpp"

#include "spikeslab/parallel.hpp"
#include "spikeslab/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spikeslab {

Evidence compute_evidence(std::span<const double> x, const SlabPrior& slab, const FitOptions& options,
                          bool with_leave_one_out) {
    slab.validate();
    if (x.empty()) throw std::invalid_argument("posterior needs at least one observation");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("observations must be finite");

    const std::size_t n = x.size();
    Evidence ev;
    ev.slab = slab;
    ev.x.assign(x.begin(), x.end());
    ev.log_phi.resize(n);
    ev.log_psi.resize(n);
    ev.log_ratio.resize(n);
    ev.slab_mean.resize(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
        ev.log_phi[i] = log_norm_pdf(x[i]);
        ev.log_psi[i] = log_psi(slab, x[i]);
        ev.log_ratio[i] = ev.log_psi[i] - ev.log_phi[i];
        ev.slab_mean[i] = slab_posterior_mean(slab, x[i]);
    });
    ev.full = product_of_linear_factors(ev.log_ratio, options.strategy);

    if (with_leave_one_out) {
        const LeaveOneOutTable table = leave_one_out_table(ev.log_ratio);
        ev.leave_one_out.resize(n);
        parallel_for(n, options.threads,
                     [&](std::size_t i) { ev.leave_one_out[i] = table.leave_one_out(static_cast<int>(i)); });
    }
    return ev;
}

namespace {

std::vector<double> model_weights(const DimensionPrior& prior) {
    std::vector<double> w(static_cast<std::size_t>(prior.n()) + 1);
    for (int p = 0; p <= prior.n(); ++p) w[p] = log_model_weight(prior, p);
    return w;
}

}  // namespace

DimensionPosterior dimension_posterior(const Evidence& evidence, const DimensionPrior& prior) {
    if (prior.n() != evidence.n()) throw std::invalid_argument("dimension prior size does not match data length");
    const std::vector<double> w = model_weights(prior);
    DimensionPosterior out;
    out.log_pmf.resize(w.size());
    for (std::size_t p = 0; p < w.size(); ++p) out.log_pmf[p] = w[p] + evidence.full[static_cast<int>(p)];
    out.log_partition = log_sum_exp(out.log_pmf);
    for (double& v : out.log_pmf) v -= out.log_partition;
    return out;
}

double PosteriorSummary::expected_dimension() const {
    double e = 0.0;
    for (std::size_t p = 1; p < dim_log_pmf.size(); ++p) e += static_cast<double>(p) * std::exp(dim_log_pmf[p]);
    return e;
}

PosteriorSummary summarize(const Evidence& evidence, const DimensionPrior& prior, const FitOptions& options) {
    if (evidence.leave_one_out.size() != evidence.x.size())
        throw std::invalid_argument("evidence was computed without leave-one-out products");
    const std::size_t n = evidence.x.size();
    DimensionPosterior dim = dimension_posterior(evidence, prior);

    PosteriorSummary s;
    s.slab = evidence.slab;
    s.x = evidence.x;
    s.log_partition = dim.log_partition;
    s.dim_log_pmf = std::move(dim.log_pmf);
    s.levels = options.credible_levels;
    s.inclusion_prob.resize(n);
    s.exclusion_prob.resize(n);
    s.mean.resize(n);
    s.median.assign(n, 0.0);
    s.credible_lo.assign(n, 0.0);
    s.credible_hi.assign(n, 0.0);

    // Supports containing i: weight of size p+1 times r_i times coefficient p of the
    // leave-one-out product.
    const std::vector<double> w = model_weights(prior);
    const std::span<const double> shifted(w.data() + 1, n);
    const std::span<const double> unshifted(w.data(), n);

    parallel_for(n, options.threads, [&](std::size_t i) {
        const double log_q =
            evidence.log_ratio[i] + weighted_coeff_sum(evidence.leave_one_out[i], shifted) - s.log_partition;
        const double log_not_q = weighted_coeff_sum(evidence.leave_one_out[i], unshifted) - s.log_partition;
        const double q = std::min(1.0, std::exp(log_q));
        s.inclusion_prob[i] = q;
        s.exclusion_prob[i] = std::min(1.0, std::exp(log_not_q));
        s.mean[i] = q * evidence.slab_mean[i];
        const CoordinateMarginal m{evidence.slab, evidence.x[i], q, s.exclusion_prob[i]};
        if (options.medians) s.median[i] = m.median();
        if (options.intervals) {
            s.credible_lo[i] = m.quantile(options.credible_levels[0]);
            s.credible_hi[i] = m.quantile(options.credible_levels[1]);
        }
    });
    return s;
}

PosteriorSummary fit(std::span<const double> x, const DimensionPrior& prior, const SlabPrior& slab,
                     const FitOptions& options) {
    if (prior.n() != static_cast<int>(x.size()))
        throw std::invalid_argument("dimension prior size does not match data length");
    return summarize(compute_evidence(x, slab, options), prior, options);
}

double CoordinateMarginal::cdf(double u) const {
    if (std::isnan(u)) throw std::invalid_argument("cdf argument is NaN");
    const double atom = u >= 0.0 ? exclusion_prob : 0.0;
    if (inclusion_prob == 0.0) return atom;
    const double lower = atom + inclusion_prob * std::exp(log_slab_cdf(slab, x, u));
    // near one, the upper tail carries the precision
    if (u >= 0.0 && lower > 0.5) return 1.0 - inclusion_prob * std::exp(log_slab_ccdf(slab, x, u));
    return std::min(1.0, lower);
}

double CoordinateMarginal::quantile(double level) const {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1)");
    const double q = inclusion_prob;
    if (q == 0.0) return 0.0;
    const double below = q * std::exp(log_slab_cdf(slab, x, 0.0));   // mass on (-inf, 0)
    const double above = q * std::exp(log_slab_ccdf(slab, x, 0.0));  // mass on (0, inf)
    if (level <= below) return std::min(0.0, slab_quantile_lower(slab, x, level / q));
    if (level <= cdf(0.0) || !(1.0 - level < above)) return 0.0;
    return std::max(0.0, slab_quantile_upper(slab, x, (1.0 - level) / q));
}

double CoordinateMarginal::median() const {
    const double q = inclusion_prob;
    if (q <= 0.5) return 0.0;
    const double t = 1.0 / (2.0 * q);
    // H^{-1}(1 - t) written as the upper-tail inverse at t
    const double upper = slab_quantile_upper(slab, x, t);
    const double lower = slab_quantile_lower(slab, x, t);
    return std::max(upper, 0.0) + std::min(lower, 0.0);
}

CoordinateMarginal marginal(const PosteriorSummary& summary, int i) {
    if (i < 0 || i >= summary.n()) throw std::out_of_range("coordinate index out of range");
    return {summary.slab, summary.x[i], summary.inclusion_prob[i], summary.exclusion_prob.at(i)};
}

double marginal_cdf(const PosteriorSummary& summary, int i, double u) { return marginal(summary, i).cdf(u); }

double marginal_quantile(const PosteriorSummary& summary, int i, double level) {
    return marginal(summary, i).quantile(level);
}

double coordinatewise_median(const PosteriorSummary& summary, int i) { return marginal(summary, i).median(); }

IdentityResiduals identity_residuals(const PosteriorSummary& summary) {
    double total_q = 0.0;
    for (double q : summary.inclusion_prob) total_q += q;
    const double expected = summary.expected_dimension();
    IdentityResiduals r{std::abs(total_q - expected) / std::max(1.0, expected), 0.0};
    for (int i = 0; i < summary.n(); ++i) {
        const double xi = summary.x[i];
        const double ratio = zeta(summary.slab, xi) / std::exp(log_psi(summary.slab, xi));
        const double dev = std::abs(summary.mean[i] - summary.inclusion_prob[i] * ratio);
        r.mean = std::max(r.mean, dev / std::max(1.0, std::abs(summary.mean[i])));
    }
    return r;
}

double eb_binomial_weight_from_ratios(std::span<const double> log_ratio) {
    const std::size_t n = log_ratio.size();
    if (n == 0) throw std::invalid_argument("empirical Bayes weight needs data");
    // sum_i log((1 - a) phi_i + a psi_i), dropping the constant sum_i log phi_i
    auto loglik = [&](double a) {
        const double la = std::log(a), lb = std::log1p(-a);
        double s = 0.0;
        for (double lr : log_ratio) s += log_add_exp(lb, la + lr);
        return s;
    };
    double lo = std::min(1.0 / static_cast<double>(n), 1.0 - 1e-6), hi = 1.0 - 1e-6;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
    double fc = loglik(c), fd = loglik(d);
    while (hi - lo > 1e-8) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = loglik(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = loglik(d);
        }
    }
    // the likelihood is concave in a, so the maximiser may sit on a boundary
    double best = 0.5 * (lo + hi), fbest = loglik(best);
    for (double edge : {std::min(1.0 / static_cast<double>(n), 1.0 - 1e-6), 1.0 - 1e-6}) {
        const double fe = loglik(edge);
        if (fe > fbest) best = edge, fbest = fe;
    }
    return best;
}

double eb_binomial_weight(std::span<const double> x, const SlabPrior& slab) {
    std::vector<double> lr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) throw std::invalid_argument("observations must be finite");
        lr[i] = log_psi(slab, x[i]) - log_norm_pdf(x[i]);
    }
    return eb_binomial_weight_from_ratios(lr);
}

}  // namespace spikeslab
