#include "spikeslab/estimators.hpp"
#include "spikeslab/harness.hpp"
#include "spikeslab/io.hpp"
#include "spikeslab/posterior.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace spikeslab;

namespace {

using Vec = std::vector<double>;

PriorSpec prior_spec(const std::string& family, double kappa, double b, double alpha) {
    PriorSpec p;
    p.family = dimension_family_from_string(family);
    p.kappa = kappa;
    p.b = b;
    p.alpha = alpha;
    return p;
}

std::string simulate(int n, std::vector<int> pn, Vec amp, int reps, double kappa, double b, const SlabPrior& slab,
                     Vec losses, std::uint64_t seed, unsigned threads) {
    ExperimentConfig c;
    c.n = n;
    c.pn_grid = std::move(pn);
    c.amplitude_grid = std::move(amp);
    c.replications = reps;
    c.kappa = kappa;
    c.b = b;
    c.slab = slab;
    c.losses = std::move(losses);
    c.seed = seed;
    c.threads = threads;
    py::gil_scoped_release release;
    return to_json(run_table(c)).dump();
}

std::string dimension_check(int n, int p_n, double amplitude, Vec m_grid, int reps, const std::string& prior,
                            double kappa, double b, double alpha, const SlabPrior& slab, std::uint64_t seed,
                            unsigned threads) {
    DimensionCheckConfig c;
    c.n = n;
    c.p_n = p_n;
    c.amplitude = amplitude;
    c.m_grid = std::move(m_grid);
    c.replications = reps;
    c.prior = prior_spec(prior, kappa, b, alpha);
    c.slab = slab;
    c.seed = seed;
    c.threads = threads;
    py::gil_scoped_release release;
    return to_json(run_dimension_check(c)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact spike-and-slab posteriors for sparse normal means";

    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);

    py::class_<SlabPrior>(m, "SlabPrior")
        .def_static("laplace", &SlabPrior::laplace, py::arg("rate") = 1.0)
        .def_static("gaussian", &SlabPrior::gaussian, py::arg("sd") = 1.0)
        .def_static("student", &SlabPrior::student, py::arg("df"), py::arg("scale") = 1.0)
        .def_static("exp_power", &SlabPrior::exp_power, py::arg("alpha"), py::arg("scale") = 1.0)
        .def_property_readonly("family", [](const SlabPrior& s) { return to_string(s.family); })
        .def_readonly("scale", &SlabPrior::scale)
        .def_readonly("shape", &SlabPrior::shape)
        .def("__repr__", [](const SlabPrior& s) {
            return "SlabPrior(" + to_string(s.family) + ", scale=" + std::to_string(s.scale) +
                   ", shape=" + std::to_string(s.shape) + ")";
        });

    py::class_<DimensionPrior>(m, "DimensionPrior")
        .def_static("custom", &DimensionPrior::custom, py::arg("log_weights"))
        .def_property_readonly("n", &DimensionPrior::n)
        .def_property_readonly("family", [](const DimensionPrior& d) { return to_string(d.family()); })
        .def_property_readonly("log_pmf", [](const DimensionPrior& d) {
            const auto v = d.log_pmf();
            return Vec(v.begin(), v.end());
        });

    m.def("complexity_prior", &complexity_prior, py::arg("n"), py::arg("kappa"), py::arg("b") = 3.0);
    m.def("betabin_power_prior", &betabin_power_prior, py::arg("n"), py::arg("kappa"));
    m.def("binomial_prior", &binomial_prior, py::arg("n"), py::arg("alpha"));
    m.def("poisson_prior", &poisson_prior, py::arg("n"), py::arg("alpha"));
    m.def("geometric_prior", &geometric_prior, py::arg("n"), py::arg("lam"));

    py::class_<PosteriorSummary>(m, "PosteriorSummary")
        .def_property_readonly("n", &PosteriorSummary::n)
        .def_readonly("x", &PosteriorSummary::x)
        .def_readonly("slab", &PosteriorSummary::slab)
        .def_readonly("log_partition", &PosteriorSummary::log_partition)
        .def_readonly("dim_log_pmf", &PosteriorSummary::dim_log_pmf)
        .def_readonly("inclusion_prob", &PosteriorSummary::inclusion_prob)
        .def_readonly("exclusion_prob", &PosteriorSummary::exclusion_prob)
        .def_readonly("mean", &PosteriorSummary::mean)
        .def_readonly("median", &PosteriorSummary::median)
        .def_readonly("credible_lo", &PosteriorSummary::credible_lo)
        .def_readonly("credible_hi", &PosteriorSummary::credible_hi)
        .def_readonly("levels", &PosteriorSummary::levels)
        .def("expected_dimension", &PosteriorSummary::expected_dimension)
        .def("to_json", [](const PosteriorSummary& s) { return to_json(s).dump(); });

    m.def(
        "fit",
        [](const Vec& x, const DimensionPrior& prior, const SlabPrior& slab, bool medians, bool intervals,
           unsigned threads) {
            FitOptions o;
            o.medians = medians;
            o.intervals = intervals;
            o.threads = threads;
            py::gil_scoped_release release;
            return fit(x, prior, slab, o);
        },
        py::arg("x"), py::arg("prior"), py::arg("slab") = SlabPrior::laplace(1.0), py::arg("medians") = true,
        py::arg("intervals") = true, py::arg("threads") = 1);

    m.def("marginal_cdf", &marginal_cdf, py::arg("summary"), py::arg("i"), py::arg("u"));
    m.def("marginal_quantile", &marginal_quantile, py::arg("summary"), py::arg("i"), py::arg("level"));
    m.def("coordinatewise_median", &coordinatewise_median, py::arg("summary"), py::arg("i"));
    m.def(
        "identity_residuals",
        [](const PosteriorSummary& s) {
            const IdentityResiduals r = identity_residuals(s);
            return py::make_tuple(r.dimension, r.mean);
        },
        py::arg("summary"));
    m.def(
        "eb_binomial_weight", [](const Vec& x, const SlabPrior& slab) { return eb_binomial_weight(x, slab); },
        py::arg("x"), py::arg("slab") = SlabPrior::laplace(1.0));

    m.def("hard_threshold", [](const Vec& x) { return hard_threshold(x); }, py::arg("x"));
    m.def(
        "hard_threshold_oracle", [](const Vec& x, int p_n) { return hard_threshold_oracle(x, p_n); }, py::arg("x"),
        py::arg("p_n"));
    m.def(
        "dq_loss", [](const Vec& a, const Vec& b, double q) { return dq_loss(a, b, LossSpec(q)); }, py::arg("a"),
        py::arg("b"), py::arg("q") = 2.0);

    m.def(
        "generate_data",
        [](int n, int p_n, double amplitude, std::uint64_t seed, std::uint64_t replication, bool random_support) {
            const Dataset d = generate_data(
                SignalSpec{n, p_n, amplitude, random_support ? Placement::RandomSupport : Placement::Tail}, seed,
                replication);
            return py::make_tuple(d.x, d.theta);
        },
        py::arg("n"), py::arg("p_n"), py::arg("amplitude"), py::arg("seed") = 20240101, py::arg("replication") = 0,
        py::arg("random_support") = false);

    m.def("_simulate", &simulate);
    m.def("_dimension_check", &dimension_check);
}
