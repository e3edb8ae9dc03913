"""Selecting the histogram resolution by maximizing an internal validity score.

Only the histogram stage depends on ``n_bins``/``step_size``, so the robust
scatter and the depth matrix are computed once per sweep and shared by all
grid points.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cluster import crad, crad_dbscan, robust_depth
from .dataset import as_data_matrix
from .metrics import UndefinedScoreError, calinski_harabasz
from .neighbor import NeighborParams


class NoValidClusteringError(ValueError):
    """Raised when no grid point produces a scorable labeling."""


@dataclass
class SweepResult:
    grid: list
    scores: list  # float, or None where the score is undefined
    n_clusters: list
    best: tuple
    best_score: float
    best_labels: np.ndarray = field(repr=False)

    def to_dict(self):
        return {
            "best": {"n_bins": self.best[0], "step_size": self.best[1]},
            "best_score": _json_float(self.best_score),
            "best_n_clusters": int(self.best_labels.max(initial=0)),
            "grid": [
                {"n_bins": nb, "step_size": st, "score": _json_float(s), "n_clusters": k}
                for (nb, st), s, k in zip(self.grid, self.scores, self.n_clusters)
            ],
        }


def _json_float(x):
    if x is None:
        return None
    if math.isinf(x):
        return "inf"
    return float(x)


def default_grid(n, step_size=1, spacing=10):
    """``n_bins`` around ``0.2 n`` (within +-100) in steps of 10, ``step_size`` fixed."""
    low = max(2 * step_size + 2, 4, round(0.2 * n) - 100)
    high = 0.2 * n + 100
    grid = []
    nb = low
    while nb <= high:
        grid.append((int(nb), step_size))
        nb += spacing
    return grid


def wide_grid(step_size=1):
    """The wide benchmark grid: ``n_bins`` in 80, 90, ..., 700."""
    return [(nb, step_size) for nb in range(80, 701, 10)]


def _score(X, labels, metric):
    try:
        return metric(X, labels)
    except UndefinedScoreError:
        return None


def sweep_nbin(
    X,
    algorithm="crad",
    grid=None,
    seed=0,
    min_pts=None,
    depth=None,
    metric=calinski_harabasz,
    jobs=1,
    **scatter_opts,
):
    """Run ``algorithm`` on every grid pair and keep the highest-scoring labeling.

    Parameters
    ----------
    algorithm : {"crad", "crad-dbscan"}
    grid : sequence of (n_bins, step_size), optional
        Defaults to :func:`default_grid`.
    min_pts : int, optional
        Required for ``"crad-dbscan"``.
    depth : ndarray, optional
        Precomputed depth matrix.
    metric : callable
        ``metric(X, labels) -> float``, larger is better; raising
        :class:`UndefinedScoreError` marks the pair as unscorable.
    jobs : int
        Worker threads. Results do not depend on it.

    Ties go to the smaller ``n_bins``, then the smaller ``step_size``.
    """
    X = as_data_matrix(X)
    grid = default_grid(X.shape[0]) if grid is None else [tuple(map(int, g)) for g in grid]
    if not grid:
        raise ValueError("empty parameter grid")
    params = [NeighborParams(nb, st) for nb, st in grid]
    if algorithm == "crad-dbscan" and min_pts is None:
        raise ValueError("crad-dbscan sweep needs min_pts")
    if algorithm not in ("crad", "crad-dbscan"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    D = robust_depth(X, seed=seed, **scatter_opts) if depth is None else depth

    def run(p):
        if algorithm == "crad":
            labels = crad(X, p, depth=D)
        else:
            labels = crad_dbscan(X, p, min_pts, depth=D)
        return labels, _score(X, labels, metric)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, params))
    else:
        results = [run(p) for p in params]

    scores = [s for _, s in results]
    order = sorted(
        (i for i, s in enumerate(scores) if s is not None),
        key=lambda i: (-scores[i], grid[i][0], grid[i][1]),
    )
    if not order:
        raise NoValidClusteringError("no valid clustering in grid")
    b = order[0]
    return SweepResult(
        grid=grid,
        scores=scores,
        n_clusters=[int(lab.max(initial=0)) for lab, _ in results],
        best=grid[b],
        best_score=scores[b],
        best_labels=results[b][0],
    )
