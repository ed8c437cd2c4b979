#pragma once

// Slab densities g for the nonzero coordinates, and the convolution-type
// functions of g against the standard normal density phi:
//
//   psi(x)     = int phi(x - t) g(t) dt
//   psi(x, u)  = int_{-inf}^{u} phi(x - t) g(t) dt
//   zeta(x)    = int t phi(x - t) g(t) dt
//
// Laplace and Gaussian slabs use closed forms; Student and exponential-power
// slabs fall back to adaptive Gauss-Kronrod quadrature.

#include <stdexcept>
#include <string>

namespace spikeslab {

enum class SlabFamily { Laplace, Gaussian, Student, ExpPower };

/// Raised when adaptive quadrature cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate) {}
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

/// A symmetric slab density. Construct through the named factories, which
/// validate their parameters.
///
/// `scale` is the Laplace rate a (density (a/2) exp(-a|t|)), the Gaussian
/// standard deviation, the Student scale, or the exponential-power scale.
/// `shape` is the Student degrees of freedom (> 2) or the exponential-power
/// exponent alpha in (0, 2]; it is unused by the other two families.
struct SlabPrior {
    SlabFamily family = SlabFamily::Laplace;
    double scale = 1.0;
    double shape = 0.0;
    double quadrature_tol = 1e-10;

    static SlabPrior laplace(double rate);
    static SlabPrior gaussian(double sd);
    static SlabPrior student(double df, double scale);
    static SlabPrior exp_power(double alpha, double scale);

    /// Throws std::invalid_argument when the parameters are out of range.
    void validate() const;
};

std::string to_string(SlabFamily family);
SlabFamily slab_family_from_string(const std::string& name);

double log_g(const SlabPrior& prior, double t);

double log_psi(const SlabPrior& prior, double x);

/// log psi(x, u). u may be +/-inf.
double log_psi_partial(const SlabPrior& prior, double x, double u);

/// log int_u^inf phi(x - t) g(t) dt, computed as log psi(-x, -u).
double log_psi_upper(const SlabPrior& prior, double x, double u);

/// zeta(x) in the linear domain; underflows to 0 for extreme |x|.
double zeta(const SlabPrior& prior, double x);

/// zeta(x) / psi(x): the posterior mean of t given x under the slab alone.
/// Computed without forming psi, so it stays finite where zeta underflows.
double slab_posterior_mean(const SlabPrior& prior, double x);

/// int t^2 phi(x - t) g(t) dt / psi(x), by quadrature for every family.
double slab_posterior_second_moment(const SlabPrior& prior, double x);

/// H(u) = psi(x, u) / psi(x) on the log scale, and log(1 - H(u)).
double log_slab_cdf(const SlabPrior& prior, double x, double u);
double log_slab_ccdf(const SlabPrior& prior, double x, double u);

/// Generalised inverses of H by monotone bisection, absolute tolerance 1e-9.
/// `slab_quantile_lower` solves H(u) = p, `slab_quantile_upper` solves
/// 1 - H(u) = p; the latter keeps full precision for upper-tail levels.
/// Both follow the convention H^{-1}(p) = -inf for p <= 0 and +inf for p >= 1
/// (for the upper variant: +inf when p <= 0, -inf when p >= 1).
double slab_quantile_lower(const SlabPrior& prior, double x, double p);
double slab_quantile_upper(const SlabPrior& prior, double x, double p);

}  // namespace spikeslab
