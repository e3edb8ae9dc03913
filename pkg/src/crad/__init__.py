"""Density-based clustering with robust Mahalanobis depth and automatic
per-point neighbor cut-offs."""

from .cluster import crad, crad_dbscan, dbca, dbscan_eu, expand_clusters, robust_depth
from .dataset import load_csv, standardize, write_csv
from .depth import depth_matrix
from .metrics import ami, calinski_harabasz, rand_index
from .neighbor import NeighborParams
from .scatter import exact_mcd, fast_mcd, reweight
from .tuning import default_grid, sweep_nbin

__version__ = "0.1.0"

__all__ = [
    "NeighborParams",
    "ami",
    "calinski_harabasz",
    "crad",
    "crad_dbscan",
    "dbca",
    "dbscan_eu",
    "default_grid",
    "depth_matrix",
    "exact_mcd",
    "expand_clusters",
    "fast_mcd",
    "load_csv",
    "rand_index",
    "reweight",
    "robust_depth",
    "standardize",
    "sweep_nbin",
    "write_csv",
]
