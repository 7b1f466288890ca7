"""Proportional-growth firm-size laboratory.

Thin python face of the C++ core: exact GBM updates, first-passage and
stationary-density closed forms, a finite-difference stationary solver,
tail-index estimators and the whole-economy Monte Carlo driver.
"""

from ._zipflab import (
    ccdf,
    default_k,
    first_passage_cdf,
    first_passage_pdf,
    gbm_steady_density,
    gbm_step,
    hill,
    hitting_probability,
    lognormal_cdf,
    lognormal_pdf,
    max_ccdf_decaying,
    mean_lifespan,
    quantile_curve,
    rank_size,
    run,
    solve_stationary,
    tail_exponent,
    ConfigError,
    DegenerateSample,
    NoStationaryRegime,
    NoStationaryTail,
)

__all__ = [
    "ccdf",
    "default_k",
    "first_passage_cdf",
    "first_passage_pdf",
    "gbm_steady_density",
    "gbm_step",
    "hill",
    "hitting_probability",
    "lognormal_cdf",
    "lognormal_pdf",
    "max_ccdf_decaying",
    "mean_lifespan",
    "quantile_curve",
    "rank_size",
    "run",
    "solve_stationary",
    "tail_exponent",
    "ConfigError",
    "DegenerateSample",
    "NoStationaryRegime",
    "NoStationaryTail",
]
