"""Exact posterior inference for sparse normal means under spike-and-slab priors."""

import json

from ._core import (
    DimensionPrior,
    PosteriorSummary,
    QuadratureError,
    SlabPrior,
    betabin_power_prior,
    binomial_prior,
    complexity_prior,
    coordinatewise_median,
    dq_loss,
    eb_binomial_weight,
    fit,
    generate_data,
    geometric_prior,
    hard_threshold,
    hard_threshold_oracle,
    identity_residuals,
    marginal_cdf,
    marginal_quantile,
    poisson_prior,
)
from . import _core

__all__ = [
    "DimensionPrior",
    "PosteriorSummary",
    "QuadratureError",
    "SlabPrior",
    "betabin_power_prior",
    "binomial_prior",
    "complexity_prior",
    "coordinatewise_median",
    "dimension_check",
    "dq_loss",
    "eb_binomial_weight",
    "fit",
    "generate_data",
    "geometric_prior",
    "hard_threshold",
    "hard_threshold_oracle",
    "identity_residuals",
    "marginal_cdf",
    "marginal_quantile",
    "poisson_prior",
    "simulate",
]


def simulate(n=500, pn_grid=(25, 50, 100), amplitude_grid=(3.0, 4.0, 5.0), replications=100,
             kappa=0.1, b=3.0, slab=None, losses=(2.0, 1.0), seed=20240101, threads=1):
    """Loss table of the eight estimators, as the dict the CLI writes with --format json."""
    slab = SlabPrior.laplace(1.0) if slab is None else slab
    return json.loads(_core._simulate(n, list(pn_grid), list(amplitude_grid), replications, kappa, b, slab,
                                      list(losses), seed, threads))


def dimension_check(n=500, p_n=25, amplitude=5.0, m_grid=(0.0, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0),
                    replications=50, prior="complexity", kappa=0.1, b=3.0, alpha=0.05, slab=None,
                    seed=20240101, threads=1):
    """Average posterior mass of |S| > M p_n for each M."""
    slab = SlabPrior.laplace(1.0) if slab is None else slab
    return json.loads(_core._dimension_check(n, p_n, amplitude, list(m_grid), replications, prior, kappa, b, alpha,
                                             slab, seed, threads))
