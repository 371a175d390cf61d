"""Hermite expansions, weighted spectral projections and Riesz means."""

from ._core import (
    ConfigError,
    __version__,
    ae_threshold,
    band_projection_weighted_norm,
    build_rule,
    cosine_set_measure,
    counterexample_fk,
    counterexample_gk,
    critical_index,
    critical_index_exact,
    fit_slope,
    frak_laguerre,
    hermite,
    hermite_cosine_set_measure,
    hermite_upto,
    hermite_weighted_moment,
    laguerre_fn,
    local_band_mass,
    riesz_factor,
    run_config,
)

__all__ = [
    "ConfigError",
    "__version__",
    "ae_threshold",
    "band_projection_weighted_norm",
    "build_rule",
    "cosine_set_measure",
    "counterexample_fk",
    "counterexample_gk",
    "critical_index",
    "critical_index_exact",
    "fit_slope",
    "frak_laguerre",
    "hermite",
    "hermite_cosine_set_measure",
    "hermite_upto",
    "hermite_weighted_moment",
    "laguerre_fn",
    "local_band_mass",
    "riesz_factor",
    "run_config",
]
