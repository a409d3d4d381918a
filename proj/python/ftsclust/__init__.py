"""Serial-dependence clustering of functional time series."""

from _ftsclust import (
    FtsclustError,
    __version__,
    arif_jif,
    features,
    fuzzy_c_means,
    fuzzy_c_medoids,
    make_scenario,
    mds_2d,
    pairwise_distances,
    quantile_autocorrelation,
    select_lags,
    xie_beni,
)

__all__ = [
    "FtsclustError",
    "__version__",
    "arif_jif",
    "features",
    "fuzzy_c_means",
    "fuzzy_c_medoids",
    "make_scenario",
    "mds_2d",
    "pairwise_distances",
    "quantile_autocorrelation",
    "select_lags",
    "xie_beni",
]
