// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include "oracle/brute_force.hpp"
#include "spikeslab/harness.hpp"
#include "spikeslab/parallel.hpp"
#include "spikeslab/posterior.hpp"
#include "spikeslab/rng.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

using namespace spikeslab;

namespace {

// ---- pinned tolerances -----------------------------------------------------------
constexpr double kOracleTol = 1e-8;
constexpr int kOracleConfigs = 50;
constexpr int kOracleMaxN = 12;
constexpr double kOracleSeconds = 60.0;
constexpr double kTableRelTol = 0.15;
constexpr double kTableSeTol = 3.0;
constexpr int kStabilityN = 2000;
constexpr double kStabilitySeconds = 1800.0;
constexpr double kDimensionTailTol = 0.01;
constexpr double kShrinkHigh = 1.5;
constexpr double kShrinkLow = 1.2;
constexpr double kCoverage = 0.95;

unsigned g_threads = 1;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int g_failed = 0;
// Detail lines are held back so they print under the verdict they belong to.
std::vector<std::string> g_notes;

void flush_notes() {
    for (const std::string& line : g_notes) std::printf("      %s\n", line.c_str());
    g_notes.clear();
    std::fflush(stdout);
}

void verdict(bool pass, int id, const std::string& title, const std::string& detail) {
    if (!pass) ++g_failed;
    std::printf("%s  %d  %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    flush_notes();
}

void note(const std::string& line) { g_notes.push_back(line); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Reference loss tables, columns (p_n, A) = (25,3) (25,4) (25,5) (50,3) ... (100,5).
using Row = std::array<double, 9>;
const std::map<Estimator, Row> kSquareErrors{
    {Estimator::PM1, {111, 96, 94, 176, 165, 154, 267, 302, 307}},
    {Estimator::PM2, {106, 92, 82, 169, 165, 152, 269, 280, 274}},
    {Estimator::PMed1, {129, 83, 73, 205, 149, 130, 255, 279, 283}},
    {Estimator::PMed2, {125, 86, 68, 187, 148, 129, 273, 254, 245}},
    {Estimator::HT, {175, 142, 70, 339, 284, 135, 676, 564, 252}},
    {Estimator::HTO, {136, 92, 84, 206, 159, 139, 306, 261, 245}},
};
const std::map<Estimator, Row> kAbsoluteErrors{
    {Estimator::PM1, {80, 101, 110, 127, 145, 147, 240, 268, 270}},
    {Estimator::PM2, {79, 85, 87, 135, 145, 144, 219, 232, 232}},
    {Estimator::PMed1, {51, 43, 45, 86, 80, 78, 178, 225, 230}},
    {Estimator::PMed2, {50, 40, 37, 86, 79, 76, 156, 162, 163}},
    {Estimator::HT, {63, 44, 27, 122, 86, 53, 244, 173, 102}},
    {Estimator::HTO, {53, 41, 40, 91, 79, 74, 157, 148, 144}},
};
// Reported for context only: the reference empirical Bayes rows come from a constrained estimator.
const std::map<Estimator, Row> kSquareErrorsEB{
    {Estimator::EBM, {103, 96, 93, 166, 177, 174, 271, 312, 319}},
    {Estimator::EBMed, {110, 81, 72, 162, 148, 142, 255, 294, 300}},
};
const std::map<Estimator, Row> kAbsoluteErrorsEB{
    {Estimator::EBM, {95, 110, 117, 191, 200, 176, 260, 285, 281}},
    {Estimator::EBMed, {50, 48, 45, 108, 121, 97, 212, 258, 257}},
};
const std::array<int, 3> kPn{25, 50, 100};
const std::array<double, 3> kAmp{3.0, 4.0, 5.0};

void criterion_exactness() {
    const auto t0 = Clock::now();
    std::vector<oracle::Case> cases;
    CounterRng rng(derive_key({20240101, 1}));
    for (int c = 0; c < kOracleConfigs; ++c) cases.push_back(oracle::random_case(rng, kOracleMaxN));

    std::vector<oracle::Discrepancy> found(cases.size());
    std::vector<std::string> errors(cases.size());
    parallel_for(cases.size(), g_threads, [&](std::size_t c) {
        try {
            const PosteriorSummary s = fit(cases[c].x, cases[c].prior, cases[c].slab);
            found[c] = oracle::compare(s, oracle::enumerate(cases[c].x, cases[c].prior, cases[c].slab));
        } catch (const std::exception& e) {
            errors[c] = e.what();
        }
    });
    const double secs = seconds_since(t0);

    double worst = 0.0;
    std::size_t worst_case = 0;
    bool ok = true;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        if (!errors[c].empty()) {
            ok = false;
            note(cases[c].label + ": " + errors[c]);
            continue;
        }
        if (found[c].worst() > worst) worst = found[c].worst(), worst_case = c;
        if (!(found[c].worst() <= kOracleTol)) {
            ok = false;
            note(cases[c].label + fmt(": discrepancy %.3g", found[c].worst()));
        }
    }
    const bool fast = secs < kOracleSeconds;
    verdict(ok && fast, 1, "exactness against subset enumeration",
            fmt("worst relative discrepancy %.3g", worst) + " over " + std::to_string(kOracleConfigs) +
                " configurations (tol 1e-08, worst " + cases[worst_case].label + ")" + fmt(", %.1f s", secs) +
                fmt(" (budget %.0f s)", kOracleSeconds));
}

struct TableOutcome {
    int checked = 0;
    int failed = 0;
};

TableOutcome compare_table(const ResultTable& t, double q, const std::map<Estimator, Row>& reference, bool gated) {
    TableOutcome out;
    for (const auto& [est, row] : reference)
        for (int k = 0; k < 9; ++k) {
            const int p = kPn[k / 3];
            const double a = kAmp[k % 3];
            const ResultCell* c = t.find(est, p, a, q);
            const double tol = std::max(kTableRelTol * row[k], kTableSeTol * (c ? c->se : 0.0));
            const bool pass = c && c->complete && std::abs(c->mean_loss - row[k]) <= tol;
            char buf[200];
            std::snprintf(buf, sizeof buf, "%-5s p_n=%3d A=%.0f  ours %7.1f (se %5.1f)  reference %4.0f  %s",
                          to_string(est).c_str(), p, a, c ? c->mean_loss : NAN, c ? c->se : NAN, row[k],
                          pass ? "ok" : (gated ? "outside tolerance" : "differs (not gated)"));
            if (gated) {
                ++out.checked;
                if (!pass) ++out.failed;
            }
            if (!pass) note(buf);
        }
    return out;
}

void criteria_tables(ResultTable& table) {
    const auto t0 = Clock::now();
    ExperimentConfig cfg;  // n = 500, 100 replications, Laplace(1), kappa = 0.1, b = 3
    cfg.threads = g_threads;
    table = run_table(cfg);
    const double secs = seconds_since(t0);
    const bool complete = table.failures.empty();
    for (const std::string& f : table.failures) note("replication failure: " + f);

    note(fmt("simulation: 100 replications x 9 cells in %.0f s", secs));
    const TableOutcome sq = compare_table(table, 2.0, kSquareErrors, true);
    verdict(complete && sq.failed == 0, 2, "square-error table reproduction",
            std::to_string(sq.checked - sq.failed) + "/" + std::to_string(sq.checked) +
                " cells within max(15%, 3 se) of the reference values");
    const TableOutcome ab = compare_table(table, 1.0, kAbsoluteErrors, true);
    verdict(complete && ab.failed == 0, 3, "absolute-error table reproduction",
            std::to_string(ab.checked - ab.failed) + "/" + std::to_string(ab.checked) +
                " cells within max(15%, 3 se) of the reference values");
    note("empirical Bayes rows (marginal ML, not gated):");
    compare_table(table, 2.0, kSquareErrorsEB, false);
    compare_table(table, 1.0, kAbsoluteErrorsEB, false);
    flush_notes();
}

// The complexity-prior rows again with b = 1, i.e. pi(p) ~ exp(-kappa p log(n/p)).
void diagnostic_complexity_constant() {
    ExperimentConfig cfg;
    cfg.b = 1.0;
    cfg.pn_grid = {25};
    cfg.estimators = {Estimator::PM1, Estimator::PMed1};
    cfg.threads = g_threads;
    const ResultTable t = run_table(cfg);
    note("diagnostic, not gated: complexity-prior rows at p_n=25 with log(n/p) in place of log(3n/p):");
    for (double q : {2.0, 1.0}) {
        const auto& reference = q == 2.0 ? kSquareErrors : kAbsoluteErrors;
        for (Estimator e : cfg.estimators)
            for (int k = 0; k < 3; ++k) {
                const ResultCell* c = t.find(e, 25, kAmp[k], q);
                char buf[160];
                std::snprintf(buf, sizeof buf, "  q=%.0f %-5s A=%.0f  ours %7.1f (se %4.1f)  reference %4.0f", q,
                              to_string(e).c_str(), kAmp[k], c->mean_loss, c->se, reference.at(e)[k]);
                note(buf);
            }
    }
    flush_notes();
}

void criterion_identities(const ResultTable& table) {
    const IdentityAudit& a = table.audit;
    verdict(a.fits > 0 && a.violations == 0, 4, "identity suite on every table fit",
            std::to_string(a.fits) + " fits, " + std::to_string(a.violations) + " violations" +
                fmt(", worst dimension residual %.3g (tol 1e-08)", a.worst_dimension) +
                fmt(", worst mean residual %.3g (tol 1e-10)", a.worst_mean));
}

void criterion_stability() {
    const auto t0 = Clock::now();
    CounterRng rng(derive_key({20240101, 5}));
    std::vector<double> x(kStabilityN);
    for (int i = 0; i < kStabilityN; ++i) x[i] = rng.normal() + (i % 10 == 0 ? 6.0 * rng.uniform() : 0.0);
    FitOptions opt;
    opt.threads = g_threads;
    bool finite = true;
    IdentityResiduals r{NAN, NAN};
    double smallest_log_coeff = 0.0, largest_log_coeff = 0.0;
    try {
        const Evidence ev = compute_evidence(x, SlabPrior::laplace(1.0), opt);
        for (int p = 0; p <= ev.full.degree(); ++p) {
            smallest_log_coeff = std::min(smallest_log_coeff, ev.full[p]);
            largest_log_coeff = std::max(largest_log_coeff, ev.full[p]);
        }
        const PosteriorSummary s = summarize(ev, complexity_prior(kStabilityN, 0.1), opt);
        finite = std::isfinite(s.log_partition);
        for (const auto* v : {&s.inclusion_prob, &s.mean, &s.median, &s.credible_lo, &s.credible_hi})
            for (double e : *v) finite = finite && std::isfinite(e);
        for (double e : s.dim_log_pmf) finite = finite && !std::isnan(e) && e != INFINITY;
        r = identity_residuals(s);
    } catch (const std::exception& e) {
        finite = false;
        note(std::string("fit threw: ") + e.what());
    }
    const double secs = seconds_since(t0);
    const bool ok = finite && r.dimension <= 1e-8 && r.mean <= 1e-10 && secs <= kStabilitySeconds;
    verdict(ok, 5, "stability at n = 2000",
            std::string(finite ? "all outputs finite" : "non-finite output") +
                fmt(", dimension residual %.3g", r.dimension) + fmt(", mean residual %.3g", r.mean) +
                fmt(", log-coefficients span [%.0f", smallest_log_coeff) + fmt(", %.0f]", largest_log_coeff) +
                fmt(", %.1f s", secs));
}

void criterion_dimension() {
    DimensionCheckConfig cfg;  // n = 500, p_n = 25, A = 5, complexity kappa = 0.1, 50 reps
    cfg.threads = g_threads;
    const DimensionCheckReport r = run_dimension_check(cfg);
    double at5 = NAN;
    for (const auto& row : r.rows)
        if (row.m == 5.0) at5 = row.mean_tail_mass;
    verdict(at5 < kDimensionTailTol, 6, "dimension tail mass", fmt("average Pi(|S| > 5 p_n | X) = %.3g (need < 0.01)", at5));
    for (const auto& row : r.rows)
        note(fmt("M = %.1f: ", row.m) + fmt("mean tail mass %.3g", row.mean_tail_mass) + fmt(" (se %.2g)", row.se));
    if (r.smallest_m) note(fmt("smallest M in the grid below 0.01: %.1f", *r.smallest_m));

    // same data, steeper priors
    note("diagnostic, not gated: M = 5 tail mass for larger kappa");
    for (double kappa : {0.2, 0.3, 1.0}) {
        cfg.prior.kappa = kappa;
        cfg.m_grid = {5.0};
        note(fmt("  kappa = %.1f: ", kappa) + fmt("%.3g", run_dimension_check(cfg).rows.front().mean_tail_mass));
    }    flush_notes();
}

void criterion_shrinkage() {
    ShrinkageConfig cfg;  // n = 500, p_n = 25, 50 reps
    cfg.amplitude_grid = {3.0, 5.0, 7.0};
    cfg.threads = g_threads;
    const auto rows = run_shrinkage_demo(cfg);
    double r3 = NAN, r7 = NAN;
    for (const auto& row : rows) {
        note(fmt("A = %.0f: ", row.amplitude) + fmt("Laplace %.1f", row.laplace_risk) +
             fmt(", Gaussian %.1f", row.gaussian_risk) + fmt(", ratio %.3f", row.ratio));
        if (row.amplitude == 3.0) r3 = row.ratio;
        if (row.amplitude == 7.0) r7 = row.ratio;
    }
    verdict(r7 > kShrinkHigh && r3 <= kShrinkLow, 7, "Gaussian slab over-shrinkage",
            fmt("risk ratio %.3f at A=7 (need > 1.5)", r7) + fmt(", %.3f at A=3 (need <= 1.2)", r3));
}

void criterion_intervals() {
    const Dataset d = generate_data(SignalSpec{500, 100, 5.0, Placement::Tail}, 20240101, 0);
    FitOptions opt;
    opt.threads = g_threads;
    double width[2];
    double coverage[2];
    const double kappas[2] = {0.1, 1.0};
    for (int k = 0; k < 2; ++k) {
        const auto rows = emit_interval_data(d.x, betabin_power_prior(500, kappas[k]), SlabPrior::laplace(1.0), opt);
        std::vector<double> w;
        int zeros = 0, covered = 0;
        for (const auto& r : rows) {
            w.push_back(r.hi - r.lo);
            if (d.theta[r.index] == 0.0) {
                ++zeros;
                if (r.lo <= 0.0 && r.hi >= 0.0) ++covered;
            }
        }
        std::nth_element(w.begin(), w.begin() + w.size() / 2, w.end());
        width[k] = w[w.size() / 2];
        coverage[k] = double(covered) / zeros;
        note(fmt("kappa = %.1f: ", kappas[k]) + fmt("%.1f%% of zero coordinates covered", 100 * coverage[k]) +
             fmt(", median width %.3f", width[k]));
    }
    verdict(coverage[0] >= kCoverage && width[1] < width[0], 8, "credible intervals",
            fmt("coverage of zeros %.3f (need >= 0.95)", coverage[0]) +
                fmt(", median width %.3f at kappa=1", width[1]) + fmt(" vs %.3f at kappa=0.1", width[0]));
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--threads") == 0) g_threads = static_cast<unsigned>(std::atoi(argv[i + 1]));

    const auto t0 = Clock::now();
    criterion_exactness();
    ResultTable table;
    criteria_tables(table);
    diagnostic_complexity_constant();
    criterion_identities(table);
    criterion_stability();
    criterion_dimension();
    criterion_shrinkage();
    criterion_intervals();
    std::printf("%d of 8 criteria failed (%.0f s)\n", g_failed, seconds_since(t0));
    return g_failed == 0 ? 0 : 1;
}
