#include "spikeslab/slab.hpp"

#include "spikeslab/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace spikeslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// phi(40) is below e^-800; mass beyond this window is invisible in double precision.
constexpr double kWindow = 40.0;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// log(Phi(b) - Phi(c)) for b > c, choosing the tail that avoids cancellation.
double log_norm_interval(double c, double b) {
    if (b <= c) return kNegInf;
    if (c >= 0.0) return log_sub_exp(log_norm_cdf(-c), log_norm_cdf(-b));
    return log_sub_exp(log_norm_cdf(b), log_norm_cdf(c));
}

// ---- Laplace, rate a -------------------------------------------------------
//
// Splitting the integral at 0 and completing the square gives
//   psi(x) = (a/2) e^{a^2/2} [ e^{-ax} Phi(x - a) + e^{ax} Phi(-x - a) ]
//   zeta(x) = (a/2) e^{a^2/2} [ e^{-ax} J(x - a) - e^{ax} J(-x - a) ]
// with J(m) = m Phi(m) + phi(m) = E[max(N(m,1), 0)].

double laplace_log_const(double a) { return std::log(0.5 * a) + 0.5 * a * a; }

double laplace_log_psi(double a, double x) {
    return laplace_log_const(a) +
           log_add_exp(-a * x + log_norm_cdf(x - a), a * x + log_norm_cdf(-x - a));
}

double laplace_log_psi_partial(double a, double x, double u) {
    const double c = laplace_log_const(a);
    if (u <= 0.0) return c + a * x + log_norm_cdf(u - x - a);
    const double negative = c + a * x + log_norm_cdf(-x - a);
    const double positive = c - a * x + log_norm_interval(a - x, u - x + a);
    return log_add_exp(negative, positive);
}

// Signed log magnitude of zeta.
struct SignedLog {
    double log_abs;
    int sign;
};

SignedLog laplace_zeta(double a, double x) {
    const double t1 = -a * x + log_positive_part_mean(x - a);
    const double t2 = a * x + log_positive_part_mean(-x - a);
    const double c = laplace_log_const(a);
    if (t1 == t2) return {kNegInf, 0};
    if (t1 > t2) return {c + log_sub_exp(t1, t2), 1};
    return {c + log_sub_exp(t2, t1), -1};
}

// ---- Gaussian, standard deviation s -----------------------------------------
//
// t | x under the slab alone is N(x s^2/(1+s^2), s^2/(1+s^2)).

struct GaussianPosterior {
    double log_psi;
    double mean;
    double sd;
};

GaussianPosterior gaussian_posterior(double s, double x) {
    const double v = 1.0 + s * s;
    return {-0.5 * x * x / v - 0.5 * std::log(v) - kLogSqrt2Pi, x * s * s / v, s / std::sqrt(v)};
}

// ---- quadrature fallback ------------------------------------------------------

double log_integrand(const SlabPrior& prior, double x, double t) {
    return log_norm_pdf(x - t) + log_g(prior, t);
}

// A reference level close to the maximum of log phi(x - t) + log g(t). For
// symmetric unimodal g the maximiser lies between 0 and x.
struct Reference {
    double level;
    double argmax;
};

Reference locate_peak(const SlabPrior& prior, double x) {
    const double lo = std::min(0.0, x);
    const double hi = std::max(0.0, x);
    constexpr int kSamples = 64;
    Reference best{kNegInf, x};
    for (int k = 0; k <= kSamples; ++k) {
        const double t = lo + (hi - lo) * k / kSamples;
        const double v = log_integrand(prior, x, t);
        if (v > best.level) best = {v, t};
    }
    return best;
}

// Integrates t^power exp(log_integrand - ref) over (-inf, upper] and returns
// it together with the reference level.
struct Moment {
    double value;
    double ref;
};

Moment quadrature_moment(const SlabPrior& prior, double x, int power, double upper) {
    const Reference peak = locate_peak(prior, x);
    const double left = std::min(0.0, x) - kWindow;
    const double right = std::min(std::max(0.0, x) + kWindow, upper);
    if (right <= left) return {0.0, peak.level};

    std::vector<double> knots{left, right, 0.0, x, peak.argmax - 6.0, peak.argmax + 6.0};
    std::erase_if(knots, [&](double k) { return k < left || k > right; });
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    auto f = [&](double t) {
        const double w = std::exp(log_integrand(prior, x, t) - peak.level);
        switch (power) {
            case 0: return w;
            case 1: return t * w;
            default: return t * t * w;
        }
    };

    // Global adaptive bisection: always split the piece with the largest error.
    struct Piece {
        double a, b, value, error, l1;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    auto rule = [&](double a, double b) {
        double error = 0.0, l1 = 0.0;
        const double value =
            boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &error, &l1);
        // the single-pass error is reported for the rule mapped onto [-1, 1]
        return Piece{a, b, value, error * 0.5 * (b - a), l1};
    };
    std::vector<Piece> pieces;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) pieces.push_back(rule(knots[k], knots[k + 1]));
    std::make_heap(pieces.begin(), pieces.end());

    auto sum = [&](double Piece::*field) {
        double t = 0.0;
        for (const Piece& p : pieces) t += p.*field;
        return t;
    };
    constexpr std::size_t kMaxPieces = 2000;
    double total_error = sum(&Piece::error), total_l1 = sum(&Piece::l1);
    while (total_error > prior.quadrature_tol * total_l1 && pieces.size() < kMaxPieces) {
        std::pop_heap(pieces.begin(), pieces.end());
        const Piece worst = pieces.back();
        pieces.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            pieces.push_back(worst);
            std::push_heap(pieces.begin(), pieces.end());
            break;
        }
        for (const Piece& half : {rule(worst.a, mid), rule(mid, worst.b)}) {
            total_error += half.error;
            total_l1 += half.l1;
            pieces.push_back(half);
            std::push_heap(pieces.begin(), pieces.end());
        }
        total_error -= worst.error;
        total_l1 -= worst.l1;
    }
    const double total = sum(&Piece::value);
    total_error = sum(&Piece::error);
    total_l1 = sum(&Piece::l1);
    if (total_error > 1e3 * prior.quadrature_tol * total_l1 && total_error > 1e-300) {
        throw QuadratureError("slab quadrature did not converge at x=" + std::to_string(x) +
                                  " (error estimate " + std::to_string(total_error) + ")",
                              total_error);
    }
    return {total, peak.level};
}

double quadrature_log_psi_partial(const SlabPrior& prior, double x, double u) {
    const Moment m = quadrature_moment(prior, x, 0, u);
    return m.value > 0.0 ? m.ref + std::log(m.value) : kNegInf;
}

}  // namespace

SlabPrior SlabPrior::laplace(double rate) {
    SlabPrior p{SlabFamily::Laplace, rate, 0.0};
    p.validate();
    return p;
}

SlabPrior SlabPrior::gaussian(double sd) {
    SlabPrior p{SlabFamily::Gaussian, sd, 0.0};
    p.validate();
    return p;
}

SlabPrior SlabPrior::student(double df, double scale) {
    SlabPrior p{SlabFamily::Student, scale, df};
    p.validate();
    return p;
}

SlabPrior SlabPrior::exp_power(double alpha, double scale) {
    SlabPrior p{SlabFamily::ExpPower, scale, alpha};
    p.validate();
    return p;
}

void SlabPrior::validate() const {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("slab scale must be positive");
    if (!(quadrature_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (family == SlabFamily::Student && !(shape > 2.0 && std::isfinite(shape)))
        throw std::invalid_argument("Student slab needs degrees of freedom > 2");
    if (family == SlabFamily::ExpPower && !(shape > 0.0 && shape <= 2.0))
        throw std::invalid_argument("exponential-power exponent must lie in (0, 2]");
}

std::string to_string(SlabFamily family) {
    switch (family) {
        case SlabFamily::Laplace: return "laplace";
        case SlabFamily::Gaussian: return "gaussian";
        case SlabFamily::Student: return "student";
        case SlabFamily::ExpPower: return "exppower";
    }
    return "unknown";
}

SlabFamily slab_family_from_string(const std::string& name) {
    if (name == "laplace") return SlabFamily::Laplace;
    if (name == "gaussian") return SlabFamily::Gaussian;
    if (name == "student") return SlabFamily::Student;
    if (name == "exppower") return SlabFamily::ExpPower;
    throw std::invalid_argument("unknown slab family '" + name + "'");
}

double log_g(const SlabPrior& prior, double t) {
    require_finite(t, "slab argument");
    const double s = prior.scale;
    switch (prior.family) {
        case SlabFamily::Laplace: return std::log(0.5 * s) - s * std::abs(t);
        case SlabFamily::Gaussian: return -0.5 * (t / s) * (t / s) - std::log(s) - kLogSqrt2Pi;
        case SlabFamily::Student: {
            const double nu = prior.shape;
            return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                   0.5 * std::log(nu * std::numbers::pi) - std::log(s) -
                   0.5 * (nu + 1.0) * std::log1p((t / s) * (t / s) / nu);
        }
        case SlabFamily::ExpPower: {
            const double alpha = prior.shape;
            // int exp(-|t/s|^alpha) dt = 2 s Gamma(1 + 1/alpha)
            return -std::log(2.0 * s) - std::lgamma(1.0 + 1.0 / alpha) - std::pow(std::abs(t / s), alpha);
        }
    }
    return kNegInf;
}

double log_psi(const SlabPrior& prior, double x) {
    require_finite(x, "observation");
    switch (prior.family) {
        case SlabFamily::Laplace: return laplace_log_psi(prior.scale, x);
        case SlabFamily::Gaussian: return gaussian_posterior(prior.scale, x).log_psi;
        default: return quadrature_log_psi_partial(prior, x, kInf);
    }
}

double log_psi_partial(const SlabPrior& prior, double x, double u) {
    require_finite(x, "observation");
    if (std::isnan(u)) throw std::invalid_argument("partial bound is NaN");
    if (u == -kInf) return kNegInf;
    if (u == kInf) return log_psi(prior, x);
    switch (prior.family) {
        case SlabFamily::Laplace: return laplace_log_psi_partial(prior.scale, x, u);
        case SlabFamily::Gaussian: {
            const auto gp = gaussian_posterior(prior.scale, x);
            return gp.log_psi + log_norm_cdf((u - gp.mean) / gp.sd);
        }
        default: return quadrature_log_psi_partial(prior, x, u);
    }
}

double log_psi_upper(const SlabPrior& prior, double x, double u) {
    if (std::isnan(u)) throw std::invalid_argument("partial bound is NaN");
    return log_psi_partial(prior, -x, -u);
}

double zeta(const SlabPrior& prior, double x) {
    require_finite(x, "observation");
    if (prior.family == SlabFamily::Laplace) {
        const SignedLog z = laplace_zeta(prior.scale, x);
        return z.sign == 0 ? 0.0 : z.sign * std::exp(z.log_abs);
    }
    return slab_posterior_mean(prior, x) * std::exp(log_psi(prior, x));
}

double slab_posterior_mean(const SlabPrior& prior, double x) {
    require_finite(x, "observation");
    switch (prior.family) {
        case SlabFamily::Laplace: {
            const SignedLog z = laplace_zeta(prior.scale, x);
            return z.sign == 0 ? 0.0 : z.sign * std::exp(z.log_abs - laplace_log_psi(prior.scale, x));
        }
        case SlabFamily::Gaussian: return gaussian_posterior(prior.scale, x).mean;
        default: {
            if (x == 0.0) return 0.0;
            const Moment m0 = quadrature_moment(prior, x, 0, kInf);
            const Moment m1 = quadrature_moment(prior, x, 1, kInf);
            return m1.value / m0.value;
        }
    }
}

double slab_posterior_second_moment(const SlabPrior& prior, double x) {
    require_finite(x, "observation");
    const Moment m0 = quadrature_moment(prior, x, 0, kInf);
    const Moment m2 = quadrature_moment(prior, x, 2, kInf);
    return m2.value / m0.value;
}

double log_slab_cdf(const SlabPrior& prior, double x, double u) {
    return std::min(0.0, log_psi_partial(prior, x, u) - log_psi(prior, x));
}

double log_slab_ccdf(const SlabPrior& prior, double x, double u) {
    return std::min(0.0, log_psi_upper(prior, x, u) - log_psi(prior, x));
}

namespace {

// Bisection for the root of a nondecreasing `above(u)` predicate boundary.
template <typename Above>
double bisect(double x, Above above) {
    double lo = std::min(x, 0.0) - kWindow;
    double hi = std::max(x, 0.0) + kWindow;
    for (int k = 0; k < 64 && above(lo); ++k) lo -= kWindow;
    for (int k = 0; k < 64 && !above(hi); ++k) hi += kWindow;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (above(mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double slab_quantile_lower(const SlabPrior& prior, double x, double p) {
    if (std::isnan(p)) throw std::invalid_argument("quantile level is NaN");
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;
    const double log_p = std::log(p);
    const double log_psi_x = log_psi(prior, x);
    return bisect(x, [&](double u) { return log_psi_partial(prior, x, u) - log_psi_x >= log_p; });
}

double slab_quantile_upper(const SlabPrior& prior, double x, double p) {
    if (std::isnan(p)) throw std::invalid_argument("quantile level is NaN");
    if (p <= 0.0) return kInf;
    if (p >= 1.0) return -kInf;
    const double log_p = std::log(p);
    const double log_psi_x = log_psi(prior, x);
    return bisect(x, [&](double u) { return log_psi_upper(prior, x, u) - log_psi_x <= log_p; });
}

}  // namespace spikeslab
