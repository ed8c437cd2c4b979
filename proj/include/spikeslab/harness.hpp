#pragma once

// Simulation study and desk-scale theory checks.

#include "spikeslab/dimension_prior.hpp"
#include "spikeslab/posterior.hpp"
#include "spikeslab/slab.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spikeslab {

enum class Placement { Tail, RandomSupport };

/// theta has exactly p_n entries equal to `amplitude`, the rest zero.
struct SignalSpec {
    int n = 500;
    int p_n = 25;
    double amplitude = 5.0;
    Placement placement = Placement::Tail;

    void validate() const;
};

struct Dataset {
    std::vector<double> theta;
    std::vector<double> x;
};

/// x = theta + noise_scale * N(0, I). The noise is drawn from the counter
/// stream keyed by (seed, replication) and is bit-reproducible.
/// `noise_scale` exists so tests can force noiseless data.
Dataset generate_data(const SignalSpec& spec, std::uint64_t seed, std::uint64_t replication,
                      double noise_scale = 1.0);

/// A dimension-prior family with its parameters, instantiated per n.
struct PriorSpec {
    DimensionFamily family = DimensionFamily::Complexity;
    double kappa = 0.1;
    double b = 3.0;
    double alpha = 0.05;  ///< binomial/Poisson rate, geometric success probability
    /// Unnormalised log weights for DimensionFamily::Custom; length must be n + 1.
    std::vector<double> custom_log_weights;

    DimensionPrior make(int n) const;
};

DimensionFamily dimension_family_from_string(const std::string& name);

// ---- run_table ---------------------------------------------------------------

enum class Estimator { PM1, PM2, PMed1, PMed2, EBM, EBMed, HT, HTO };

std::string to_string(Estimator e);
Estimator estimator_from_string(const std::string& name);
const std::vector<Estimator>& all_estimators();

struct ExperimentConfig {
    int n = 500;
    std::vector<int> pn_grid{25, 50, 100};
    std::vector<double> amplitude_grid{3.0, 4.0, 5.0};
    int replications = 100;
    std::vector<Estimator> estimators = all_estimators();
    /// PM1/PMed1 use the complexity prior (kappa, b); PM2/PMed2 the
    /// beta-binomial power prior (kappa).
    double kappa = 0.1;
    double b = 3.0;
    SlabPrior slab = SlabPrior::laplace(1.0);
    std::vector<double> losses{2.0, 1.0};
    std::uint64_t seed = 20240101;
    Placement placement = Placement::Tail;
    double noise_scale = 1.0;
    unsigned threads = 1;

    void validate() const;
};

struct ResultCell {
    Estimator estimator;
    int p_n;
    double amplitude;
    double q;
    double mean_loss;
    double se;  ///< Monte Carlo standard error of mean_loss
    int reps;   ///< successful replications
    bool complete;
};

/// Tally of the identity checks run on every posterior fit of a table.
struct IdentityAudit {
    long fits = 0;
    long violations = 0;
    double worst_dimension = 0.0;
    double worst_mean = 0.0;

    static constexpr double kDimensionTol = 1e-8;
    static constexpr double kMeanTol = 1e-10;
};

struct ResultTable {
    std::vector<ResultCell> cells;
    IdentityAudit audit;
    std::vector<std::string> failures;

    const ResultCell* find(Estimator e, int p_n, double amplitude, double q) const;
};

ResultTable run_table(const ExperimentConfig& config);

// ---- theory checks -------------------------------------------------------------

struct DimensionCheckConfig {
    int n = 500;
    int p_n = 25;
    double amplitude = 5.0;
    std::vector<double> m_grid{0.0, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0};
    int replications = 50;
    PriorSpec prior{};
    SlabPrior slab = SlabPrior::laplace(1.0);
    std::uint64_t seed = 20240101;
    unsigned threads = 1;
};

struct DimensionCheckRow {
    double m;
    double mean_tail_mass;  ///< average of Pi(|S| > m p_n | X) over replications
    double se;
};

struct DimensionCheckReport {
    std::vector<DimensionCheckRow> rows;
    std::optional<double> smallest_m;  ///< first m with mean tail mass below 0.01
};

DimensionCheckReport run_dimension_check(const DimensionCheckConfig& config);

struct ContractionCheckConfig {
    int n = 500;
    std::vector<int> pn_grid{10, 25, 50, 100};
    double amplitude = 5.0;
    int replications = 20;
    PriorSpec prior{};
    SlabPrior slab = SlabPrior::laplace(1.0);
    std::uint64_t seed = 20240101;
    unsigned threads = 1;
};

struct ContractionCheckRow {
    int p_n;
    double mean_risk;  ///< average of int ||theta - theta0||^2 dPi(theta | X)
    double se;
    double rate;       ///< p_n log(n / p_n)
    double ratio;
};

struct ContractionCheckReport {
    std::vector<ContractionCheckRow> rows;
    double ratio_spread;  ///< max ratio / min ratio
    bool bounded;         ///< ratio_spread < 3
};

/// Posterior risk int ||theta - theta0||^2 dPi(theta | X) of one fit.
double posterior_risk(const PosteriorSummary& summary, std::span<const double> theta0);

ContractionCheckReport run_contraction_check(const ContractionCheckConfig& config);

struct ShrinkageConfig {
    int n = 500;
    int p_n = 25;
    std::vector<double> amplitude_grid{3.0, 5.0, 7.0};
    int replications = 50;
    PriorSpec prior{};
    double laplace_rate = 1.0;
    double gaussian_sd = 1.4142135623730951;  ///< variance-matched to Laplace(1)
    std::uint64_t seed = 20240101;
    unsigned threads = 1;
};

struct ShrinkageRow {
    double amplitude;
    double laplace_risk;   ///< mean ||PM - theta0||^2 under the Laplace slab
    double gaussian_risk;  ///< same data, Gaussian slab
    double ratio;
};

std::vector<ShrinkageRow> run_shrinkage_demo(const ShrinkageConfig& config);

// ---- credible-interval data ----------------------------------------------------

struct IntervalRecord {
    int index;
    double x;
    double median;
    double lo;
    double hi;
    double inclusion_prob;
};

std::vector<IntervalRecord> emit_interval_data(std::span<const double> x, const DimensionPrior& prior,
                                               const SlabPrior& slab, const FitOptions& options = {});

}  // namespace spikeslab
