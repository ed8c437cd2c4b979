#include "spikeslab/harness.hpp"

#include "spikeslab/estimators.hpp"
#include "spikeslab/parallel.hpp"
#include "spikeslab/rng.hpp"
#include "spikeslab/special.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spikeslab {

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    int count = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    double mean() const { return count ? sum / count : 0.0; }
    double se() const {
        if (count < 2) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sum_sq - count * m * m) / (count - 1));
        return std::sqrt(var / count);
    }
};

void audit(IdentityAudit& a, const PosteriorSummary& s) {
    const IdentityResiduals r = identity_residuals(s);
    ++a.fits;
    a.worst_dimension = std::max(a.worst_dimension, r.dimension);
    a.worst_mean = std::max(a.worst_mean, r.mean);
    if (!(r.dimension <= IdentityAudit::kDimensionTol) || !(r.mean <= IdentityAudit::kMeanTol)) ++a.violations;
}

void merge(IdentityAudit& into, const IdentityAudit& from) {
    into.fits += from.fits;
    into.violations += from.violations;
    into.worst_dimension = std::max(into.worst_dimension, from.worst_dimension);
    into.worst_mean = std::max(into.worst_mean, from.worst_mean);
}

bool uses(const std::vector<Estimator>& list, Estimator e) {
    return std::find(list.begin(), list.end(), e) != list.end();
}

}  // namespace

void SignalSpec::validate() const {
    if (n < 1) throw std::invalid_argument("signal length must be positive");
    if (p_n < 0 || p_n > n) throw std::invalid_argument("p_n must lie in [0, n]");
    if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be finite");
}

Dataset generate_data(const SignalSpec& spec, std::uint64_t seed, std::uint64_t replication, double noise_scale) {
    spec.validate();
    const auto n = static_cast<std::size_t>(spec.n);
    CounterRng rng(derive_key({seed, replication}));
    Dataset d;
    d.theta.assign(n, 0.0);
    if (spec.placement == Placement::Tail) {
        std::fill(d.theta.end() - spec.p_n, d.theta.end(), spec.amplitude);
    } else {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t k = 0; k < static_cast<std::size_t>(spec.p_n); ++k) {
            std::swap(idx[k], idx[k + rng.below(n - k)]);
            d.theta[idx[k]] = spec.amplitude;
        }
    }
    d.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.x[i] = d.theta[i] + noise_scale * rng.normal();
    return d;
}

DimensionPrior PriorSpec::make(int n) const {
    switch (family) {
        case DimensionFamily::Complexity: return complexity_prior(n, kappa, b);
        case DimensionFamily::BetaBinomialPower: return betabin_power_prior(n, kappa);
        case DimensionFamily::Binomial: return binomial_prior(n, alpha);
        case DimensionFamily::Poisson: return poisson_prior(n, alpha);
        case DimensionFamily::Geometric: return geometric_prior(n, alpha);
        case DimensionFamily::Custom:
            if (custom_log_weights.size() != static_cast<std::size_t>(n) + 1)
                throw std::invalid_argument("custom prior weights must have length n + 1");
            return DimensionPrior::custom(custom_log_weights);
    }
    throw std::invalid_argument("unknown dimension family");
}

DimensionFamily dimension_family_from_string(const std::string& name) {
    if (name == "complexity") return DimensionFamily::Complexity;
    if (name == "betabin") return DimensionFamily::BetaBinomialPower;
    if (name == "binomial") return DimensionFamily::Binomial;
    if (name == "poisson") return DimensionFamily::Poisson;
    if (name == "geometric") return DimensionFamily::Geometric;
    throw std::invalid_argument("unknown dimension prior '" + name + "'");
}

std::string to_string(Estimator e) {
    switch (e) {
        case Estimator::PM1: return "PM1";
        case Estimator::PM2: return "PM2";
        case Estimator::PMed1: return "PMed1";
        case Estimator::PMed2: return "PMed2";
        case Estimator::EBM: return "EBM";
        case Estimator::EBMed: return "EBMed";
        case Estimator::HT: return "HT";
        case Estimator::HTO: return "HTO";
    }
    return "?";
}

Estimator estimator_from_string(const std::string& name) {
    for (Estimator e : all_estimators())
        if (to_string(e) == name) return e;
    throw std::invalid_argument("unknown estimator '" + name + "'");
}

const std::vector<Estimator>& all_estimators() {
    static const std::vector<Estimator> all{Estimator::PM1,   Estimator::PM2,   Estimator::EBM, Estimator::PMed1,
                                            Estimator::PMed2, Estimator::EBMed, Estimator::HT,  Estimator::HTO};
    return all;
}

void ExperimentConfig::validate() const {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (estimators.empty()) throw std::invalid_argument("no estimators requested");
    for (int p : pn_grid)
        if (p < 0 || p > n) throw std::invalid_argument("p_n outside [0, n]");
    if (uses(estimators, Estimator::HTO))
        for (int p : pn_grid)
            if (p < 1 || p >= n) throw std::invalid_argument("HTO needs 1 <= p_n < n");
    for (double a : amplitude_grid)
        if (!std::isfinite(a)) throw std::invalid_argument("amplitude must be finite");
    for (double q : losses) LossSpec{q};
    slab.validate();
    complexity_prior(n, kappa, b);
}

const ResultCell* ResultTable::find(Estimator e, int p_n, double amplitude, double q) const {
    for (const ResultCell& c : cells)
        if (c.estimator == e && c.p_n == p_n && c.amplitude == amplitude && c.q == q) return &c;
    return nullptr;
}

ResultTable run_table(const ExperimentConfig& config) {
    config.validate();
    const std::size_t n_cells = config.pn_grid.size() * config.amplitude_grid.size();
    const std::size_t reps = static_cast<std::size_t>(config.replications);
    const std::size_t n_est = config.estimators.size();
    const std::size_t n_loss = config.losses.size();

    struct TaskResult {
        bool ok = false;
        std::string error;
        std::vector<double> losses;  // [estimator][loss]
        IdentityAudit audit;
    };
    std::vector<TaskResult> results(n_cells * reps);

    const DimensionPrior prior1 = complexity_prior(config.n, config.kappa, config.b);
    const DimensionPrior prior2 = betabin_power_prior(config.n, config.kappa);
    const auto& est = config.estimators;
    const bool want1 = uses(est, Estimator::PM1) || uses(est, Estimator::PMed1);
    const bool want2 = uses(est, Estimator::PM2) || uses(est, Estimator::PMed2);
    const bool want_eb = uses(est, Estimator::EBM) || uses(est, Estimator::EBMed);
    const bool need_evidence = want1 || want2 || want_eb;

    parallel_for(results.size(), config.threads, [&](std::size_t task) {
        const std::size_t cell = task / reps, rep = task % reps;
        const int p_n = config.pn_grid[cell / config.amplitude_grid.size()];
        const double amp = config.amplitude_grid[cell % config.amplitude_grid.size()];
        TaskResult& out = results[task];
        try {
            const SignalSpec spec{config.n, p_n, amp, config.placement};
            const Dataset d = generate_data(spec, derive_key({config.seed, cell}), rep, config.noise_scale);

            FitOptions opts;
            opts.intervals = false;
            opts.medians = uses(est, Estimator::PMed1) || uses(est, Estimator::PMed2) || uses(est, Estimator::EBMed);

            std::optional<Evidence> ev;
            if (need_evidence) ev = compute_evidence(d.x, config.slab, opts);
            std::optional<PosteriorSummary> s1, s2, seb;
            if (want1) s1 = summarize(*ev, prior1, opts);
            if (want2) s2 = summarize(*ev, prior2, opts);
            if (want_eb) seb = summarize(*ev, binomial_prior(config.n, eb_binomial_weight_from_ratios(ev->log_ratio)), opts);
            for (const auto* s : {&s1, &s2, &seb})
                if (s->has_value()) audit(out.audit, **s);

            out.losses.resize(n_est * n_loss);
            for (std::size_t k = 0; k < n_est; ++k) {
                std::vector<double> estimate;
                switch (est[k]) {
                    case Estimator::PM1: estimate = s1->mean; break;
                    case Estimator::PM2: estimate = s2->mean; break;
                    case Estimator::PMed1: estimate = s1->median; break;
                    case Estimator::PMed2: estimate = s2->median; break;
                    case Estimator::EBM: estimate = seb->mean; break;
                    case Estimator::EBMed: estimate = seb->median; break;
                    case Estimator::HT: estimate = hard_threshold(d.x); break;
                    case Estimator::HTO: estimate = hard_threshold_oracle(d.x, p_n); break;
                }
                for (std::size_t l = 0; l < n_loss; ++l)
                    out.losses[k * n_loss + l] = dq_loss(estimate, d.theta, LossSpec{config.losses[l]});
            }
            out.ok = true;
        } catch (const std::exception& e) {
            out.error = "p_n=" + std::to_string(p_n) + " A=" + std::to_string(amp) + " rep=" + std::to_string(rep) +
                        ": " + e.what();
        }
    });

    ResultTable table;
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        const int p_n = config.pn_grid[cell / config.amplitude_grid.size()];
        const double amp = config.amplitude_grid[cell % config.amplitude_grid.size()];
        std::vector<Accumulator> acc(n_est * n_loss);
        bool complete = true;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const TaskResult& r = results[cell * reps + rep];
            if (!r.ok) {
                complete = false;
                table.failures.push_back(r.error);
                continue;
            }
            merge(table.audit, r.audit);
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j].add(r.losses[j]);
        }
        for (std::size_t k = 0; k < n_est; ++k)
            for (std::size_t l = 0; l < n_loss; ++l) {
                const Accumulator& a = acc[k * n_loss + l];
                table.cells.push_back({est[k], p_n, amp, config.losses[l], a.mean(), a.se(), a.count, complete});
            }
    }
    return table;
}

DimensionCheckReport run_dimension_check(const DimensionCheckConfig& config) {
    const DimensionPrior prior = config.prior.make(config.n);
    const SignalSpec spec{config.n, config.p_n, config.amplitude};
    const std::size_t reps = static_cast<std::size_t>(config.replications);
    if (reps < 1) throw std::invalid_argument("replications must be >= 1");

    // tail[rep][m]
    std::vector<std::vector<double>> tail(reps, std::vector<double>(config.m_grid.size()));
    parallel_for(reps, config.threads, [&](std::size_t rep) {
        const Dataset d = generate_data(spec, config.seed, rep);
        const Evidence ev = compute_evidence(d.x, config.slab, {}, false);
        const DimensionPosterior post = dimension_posterior(ev, prior);
        for (std::size_t k = 0; k < config.m_grid.size(); ++k) {
            const double cut = config.m_grid[k] * config.p_n;
            std::vector<double> terms;
            for (int p = 0; p <= config.n; ++p)
                if (p > cut) terms.push_back(post.log_pmf[p]);
            tail[rep][k] = std::min(1.0, std::exp(log_sum_exp(terms)));
        }
    });

    DimensionCheckReport report;
    for (std::size_t k = 0; k < config.m_grid.size(); ++k) {
        Accumulator a;
        for (std::size_t rep = 0; rep < reps; ++rep) a.add(tail[rep][k]);
        report.rows.push_back({config.m_grid[k], a.mean(), a.se()});
        if (!report.smallest_m && a.mean() < 0.01) report.smallest_m = config.m_grid[k];
    }
    return report;
}

double posterior_risk(const PosteriorSummary& summary, std::span<const double> theta0) {
    if (theta0.size() != summary.x.size()) throw std::invalid_argument("theta0 length does not match data");
    double risk = 0.0;
    for (int i = 0; i < summary.n(); ++i) {
        const double q = summary.inclusion_prob[i];
        const double m = summary.mean[i];
        const double second = q > 0.0 ? q * slab_posterior_second_moment(summary.slab, summary.x[i]) : 0.0;
        const double variance = std::max(0.0, second - m * m);
        risk += variance + (m - theta0[i]) * (m - theta0[i]);
    }
    return risk;
}

ContractionCheckReport run_contraction_check(const ContractionCheckConfig& config) {
    const DimensionPrior prior = config.prior.make(config.n);
    const std::size_t reps = static_cast<std::size_t>(config.replications);
    if (reps < 1) throw std::invalid_argument("replications must be >= 1");
    for (int p : config.pn_grid)
        if (p <= 0 || 2 * p >= config.n) throw std::invalid_argument("contraction grid needs 0 < p_n < n/2");

    const std::size_t cells = config.pn_grid.size();
    std::vector<double> risk(cells * reps);
    FitOptions opts;
    opts.medians = false;
    opts.intervals = false;
    parallel_for(risk.size(), config.threads, [&](std::size_t task) {
        const std::size_t cell = task / reps, rep = task % reps;
        const SignalSpec spec{config.n, config.pn_grid[cell], config.amplitude};
        const Dataset d = generate_data(spec, derive_key({config.seed, cell}), rep);
        risk[task] = posterior_risk(fit(d.x, prior, config.slab, opts), d.theta);
    });

    ContractionCheckReport report{};
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        Accumulator a;
        for (std::size_t rep = 0; rep < reps; ++rep) a.add(risk[cell * reps + rep]);
        const int p = config.pn_grid[cell];
        const double rate = p * std::log(static_cast<double>(config.n) / p);
        const double ratio = a.mean() / rate;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        report.rows.push_back({p, a.mean(), a.se(), rate, ratio});
    }
    report.ratio_spread = hi / lo;
    report.bounded = report.ratio_spread < 3.0;
    return report;
}

std::vector<ShrinkageRow> run_shrinkage_demo(const ShrinkageConfig& config) {
    const DimensionPrior prior = config.prior.make(config.n);
    const SlabPrior laplace = SlabPrior::laplace(config.laplace_rate);
    const SlabPrior gaussian = SlabPrior::gaussian(config.gaussian_sd);
    const std::size_t reps = static_cast<std::size_t>(config.replications);
    if (reps < 1) throw std::invalid_argument("replications must be >= 1");
    for (std::size_t k = 1; k < config.amplitude_grid.size(); ++k)
        if (!(config.amplitude_grid[k] > config.amplitude_grid[k - 1]))
            throw std::invalid_argument("amplitude grid must be increasing");

    const std::size_t cells = config.amplitude_grid.size();
    std::vector<std::array<double, 2>> loss(cells * reps);
    FitOptions opts;
    opts.medians = false;
    opts.intervals = false;
    parallel_for(loss.size(), config.threads, [&](std::size_t task) {
        const std::size_t cell = task / reps, rep = task % reps;
        const SignalSpec spec{config.n, config.p_n, config.amplitude_grid[cell]};
        // both slabs see the same noise
        const Dataset d = generate_data(spec, derive_key({config.seed, cell}), rep);
        loss[task][0] = dq_loss(fit(d.x, prior, laplace, opts).mean, d.theta, LossSpec{2.0});
        loss[task][1] = dq_loss(fit(d.x, prior, gaussian, opts).mean, d.theta, LossSpec{2.0});
    });

    std::vector<ShrinkageRow> rows;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        Accumulator l, g;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            l.add(loss[cell * reps + rep][0]);
            g.add(loss[cell * reps + rep][1]);
        }
        rows.push_back({config.amplitude_grid[cell], l.mean(), g.mean(), g.mean() / l.mean()});
    }
    return rows;
}

std::vector<IntervalRecord> emit_interval_data(std::span<const double> x, const DimensionPrior& prior,
                                               const SlabPrior& slab, const FitOptions& options) {
    FitOptions opts = options;
    opts.medians = true;
    opts.intervals = true;
    const PosteriorSummary s = fit(x, prior, slab, opts);
    std::vector<IntervalRecord> rows(x.size());
    for (int i = 0; i < s.n(); ++i)
        rows[i] = {i, s.x[i], s.median[i], s.credible_lo[i], s.credible_hi[i], s.inclusion_prob[i]};
    return rows;
}

}  // namespace spikeslab
