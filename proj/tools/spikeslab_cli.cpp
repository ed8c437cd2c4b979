// spikeslab: exact spike-and-slab posteriors and the simulation study from the command line.

#include "spikeslab/estimators.hpp"
#include "spikeslab/harness.hpp"
#include "spikeslab/io.hpp"
#include "spikeslab/posterior.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace spikeslab;

namespace {

struct Options {
    std::string data;
    int n = 500;
    std::vector<int> pn;
    std::vector<double> amp;
    int reps = 0;
    std::uint64_t seed = 20240101;
    std::string prior = "complexity";
    double kappa = 0.1;
    double b = 3.0;
    double alpha = 0.05;
    std::string slab = "laplace";
    double scale = 1.0;
    double df = 3.0;
    double shape = 1.0;
    std::vector<double> q;
    std::string out;
    std::string format;
    unsigned threads = 1;
};

PriorSpec prior_spec(const Options& o) {
    PriorSpec p;
    p.family = dimension_family_from_string(o.prior);
    p.kappa = o.kappa;
    p.b = o.b;
    p.alpha = o.alpha;
    return p;
}

SlabPrior slab_prior(const Options& o) {
    switch (slab_family_from_string(o.slab)) {
        case SlabFamily::Laplace: return SlabPrior::laplace(o.scale);
        case SlabFamily::Gaussian: return SlabPrior::gaussian(o.scale);
        case SlabFamily::Student: return SlabPrior::student(o.df, o.scale);
        case SlabFamily::ExpPower: return SlabPrior::exp_power(o.shape, o.scale);
    }
    throw std::invalid_argument("unknown slab family");
}

// The whole payload is rendered before the output file is opened, so a
// failure never leaves a partial or empty file behind.
void emit(const Options& o, const std::string& text) {
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open '" + o.out + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + o.out + "'");
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

bool want_csv(const Options& o, bool csv_default) { return o.format.empty() ? csv_default : o.format == "csv"; }

void run_fit(const Options& o) {
    const std::vector<double> x = read_observations(o.data);
    FitOptions opts;
    opts.threads = o.threads;
    const PosteriorSummary s = fit(x, prior_spec(o).make(static_cast<int>(x.size())), slab_prior(o), opts);
    if (!want_csv(o, false)) return emit(o, json_text(to_json(s)));
    std::ostringstream csv;
    csv << "index,x,inclusion_prob,mean,median,lo,hi\n" << std::setprecision(12);
    for (int i = 0; i < s.n(); ++i)
        csv << i << ',' << s.x[i] << ',' << s.inclusion_prob[i] << ',' << s.mean[i] << ',' << s.median[i] << ','
            << s.credible_lo[i] << ',' << s.credible_hi[i] << '\n';
    emit(o, csv.str());
}

void run_intervals(const Options& o) {
    const std::vector<double> x = read_observations(o.data);
    FitOptions opts;
    opts.threads = o.threads;
    const auto rows = emit_interval_data(x, prior_spec(o).make(static_cast<int>(x.size())), slab_prior(o), opts);
    if (!want_csv(o, true)) return emit(o, json_text(to_json(rows)));
    std::ostringstream csv;
    write_intervals_csv(csv, rows);
    emit(o, csv.str());
}

void run_simulate(const Options& o) {
    ExperimentConfig c;
    c.n = o.n;
    if (!o.pn.empty()) c.pn_grid = o.pn;
    if (!o.amp.empty()) c.amplitude_grid = o.amp;
    if (o.reps > 0) c.replications = o.reps;
    if (!o.q.empty()) c.losses = o.q;
    for (double q : c.losses) (void)LossSpec(q);
    c.kappa = o.kappa;
    c.b = o.b;
    c.slab = slab_prior(o);
    c.seed = o.seed;
    c.threads = o.threads;
    const ResultTable t = run_table(c);
    for (const std::string& f : t.failures) std::cerr << "replication failed: " << f << '\n';
    if (t.audit.violations > 0) std::cerr << "identity audit: " << t.audit.violations << " violations\n";
    if (!want_csv(o, true)) return emit(o, json_text(to_json(t)));
    std::ostringstream csv;
    write_result_table_csv(csv, t);
    emit(o, csv.str());
}

void run_dim_check(const Options& o) {
    DimensionCheckConfig c;
    c.n = o.n;
    if (!o.pn.empty()) c.p_n = o.pn.front();
    if (!o.amp.empty()) c.amplitude = o.amp.front();
    if (o.reps > 0) c.replications = o.reps;
    c.prior = prior_spec(o);
    c.slab = slab_prior(o);
    c.seed = o.seed;
    c.threads = o.threads;
    emit(o, json_text(to_json(run_dimension_check(c))));
}

void run_contract_check(const Options& o) {
    ContractionCheckConfig c;
    c.n = o.n;
    if (!o.pn.empty()) c.pn_grid = o.pn;
    if (!o.amp.empty()) c.amplitude = o.amp.front();
    if (o.reps > 0) c.replications = o.reps;
    c.prior = prior_spec(o);
    c.slab = slab_prior(o);
    c.seed = o.seed;
    c.threads = o.threads;
    emit(o, json_text(to_json(run_contraction_check(c))));
}

void run_shrink_demo(const Options& o) {
    ShrinkageConfig c;
    c.n = o.n;
    if (!o.pn.empty()) c.p_n = o.pn.front();
    if (!o.amp.empty()) c.amplitude_grid = o.amp;
    if (o.reps > 0) c.replications = o.reps;
    c.prior = prior_spec(o);
    c.seed = o.seed;
    c.threads = o.threads;
    emit(o, json_text(to_json(run_shrinkage_demo(c))));
}

void add_model_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--prior", o.prior, "Dimension prior")
        ->check(CLI::IsMember({"complexity", "betabin", "binomial", "poisson", "geometric"}))
        ->capture_default_str();
    cmd->add_option("--kappa", o.kappa, "Complexity / beta-binomial decay")->capture_default_str();
    cmd->add_option("--b", o.b, "Complexity prior constant b in log(bn/p)")->capture_default_str();
    cmd->add_option("--alpha", o.alpha, "Binomial/Poisson rate or geometric parameter")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_slab_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--slab", o.slab, "Slab family")
        ->check(CLI::IsMember({"laplace", "gaussian", "student", "exppower"}))
        ->capture_default_str();
    cmd->add_option("--scale", o.scale, "Laplace rate, or scale of the other families")->capture_default_str();
    cmd->add_option("--df", o.df, "Student degrees of freedom")->capture_default_str();
    cmd->add_option("--shape", o.shape, "Exponential-power exponent in (0, 2]")->capture_default_str();
}

void add_sim_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--n", o.n, "Signal length")->capture_default_str();
    cmd->add_option("--pn", o.pn, "Number of nonzero coordinates (repeatable)");
    cmd->add_option("--amp", o.amp, "Signal amplitude A (repeatable)");
    cmd->add_option("--reps", o.reps, "Replications");
    cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Options& o, bool with_format) {
    cmd->add_option("--out", o.out, "Output file (default stdout)");
    if (with_format) cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact posterior inference for sparse normal means under spike-and-slab priors"};
    app.require_subcommand(1);
    Options o;

    auto* fit_cmd = app.add_subcommand("fit", "Posterior summary of a data file");
    fit_cmd->add_option("--data", o.data, "One value per line, or CSV with header x")->required();
    add_model_flags(fit_cmd, o);
    add_slab_flags(fit_cmd, o);
    add_output_flags(fit_cmd, o, true);

    auto* intervals_cmd = app.add_subcommand("intervals", "Per-coordinate medians and credible intervals");
    intervals_cmd->add_option("--data", o.data, "One value per line, or CSV with header x")->required();
    add_model_flags(intervals_cmd, o);
    add_slab_flags(intervals_cmd, o);
    add_output_flags(intervals_cmd, o, true);

    auto* sim_cmd = app.add_subcommand("simulate", "Loss table for the eight estimators");
    add_sim_flags(sim_cmd, o);
    sim_cmd->add_option("--kappa", o.kappa, "Decay of both dimension priors")->capture_default_str();
    sim_cmd->add_option("--b", o.b, "Complexity prior constant b")->capture_default_str();
    sim_cmd->add_option("--q", o.q, "Loss exponents (repeatable, default 2 and 1)");
    sim_cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
    add_slab_flags(sim_cmd, o);
    add_output_flags(sim_cmd, o, true);

    auto* dim_cmd = app.add_subcommand("dim-check", "Posterior tail mass of the model dimension");
    add_sim_flags(dim_cmd, o);
    add_model_flags(dim_cmd, o);
    add_slab_flags(dim_cmd, o);
    add_output_flags(dim_cmd, o, false);

    auto* contract_cmd = app.add_subcommand("contract-check", "Posterior risk against p_n log(n / p_n)");
    add_sim_flags(contract_cmd, o);
    add_model_flags(contract_cmd, o);
    add_slab_flags(contract_cmd, o);
    add_output_flags(contract_cmd, o, false);

    auto* shrink_cmd = app.add_subcommand("shrink-demo", "Gaussian versus Laplace slab risk");
    add_sim_flags(shrink_cmd, o);
    add_model_flags(shrink_cmd, o);
    add_output_flags(shrink_cmd, o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit_cmd) run_fit(o);
        else if (*intervals_cmd) run_intervals(o);
        else if (*sim_cmd) run_simulate(o);
        else if (*dim_cmd) run_dim_check(o);
        else if (*contract_cmd) run_contract_check(o);
        else if (*shrink_cmd) run_shrink_demo(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
