"""Neighbor searching: depth histograms, the automatic cut-off, and the
three neighbor functions (local depth cut-off, global depth threshold,
Euclidean ball).

Histogram bins are indexed ``1..n_bins`` from the outside in: bin ``j``
holds depths in ``((j - 1) / n_bins, j / n_bins]``, so bin ``n_bins`` is the
center-most one and always contains the point itself.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist


@dataclass(frozen=True)
class NeighborParams:
    n_bins: int
    step_size: int = 1

    def __post_init__(self):
        if self.step_size < 1:
            raise ValueError(f"step_size must be >= 1, got {self.step_size}")
        if self.n_bins < 2 * self.step_size + 2:
            raise ValueError(
                f"n_bins={self.n_bins} too small for step_size={self.step_size} "
                f"(need >= {2 * self.step_size + 2})"
            )

    @property
    def width(self):
        return 1.0 / self.n_bins


@dataclass(frozen=True)
class DepthHistogram:
    n_bins: int
    counts: np.ndarray  # counts[j - 1] is bin j

    @property
    def width(self):
        return 1.0 / self.n_bins

    def __getitem__(self, j):
        """1-based bin access, matching the center-outward bin numbering."""
        if not 1 <= j <= self.n_bins:
            raise IndexError(j)
        return int(self.counts[j - 1])


def bin_index(depths, n_bins):
    """1-based right-closed bin of each depth, ``ceil(depth * n_bins)`` clamped to ``[1, n_bins]``."""
    j = np.ceil(np.asarray(depths, dtype=float) * n_bins).astype(np.int64)
    return np.clip(j, 1, n_bins)


def _check_depths(depths):
    depths = np.asarray(depths, dtype=float)
    if np.any(~(depths > 0)) or np.any(depths > 1):
        raise ValueError("depth values must lie in (0, 1]")
    return depths


def build_histogram(depth_row, n_bins):
    depths = _check_depths(depth_row)
    counts = np.bincount(bin_index(depths, n_bins) - 1, minlength=n_bins)
    return DepthHistogram(n_bins=n_bins, counts=counts)


def histogram_counts(D, n_bins):
    """Histogram of every row of ``D`` at once, shape ``(n, n_bins)``."""
    D = _check_depths(D)
    n = D.shape[0]
    flat = bin_index(D, n_bins) - 1 + (np.arange(n) * n_bins)[:, None]
    return np.bincount(flat.ravel(), minlength=n * n_bins).reshape(n, n_bins)


def local_minimum_mask(counts, step_size):
    """``mask[:, j-1]`` is True where bin ``j`` is a strict local minimum over
    ``step_size`` bins on either side. Only ``j`` in
    ``[1 + step_size, n_bins - step_size]`` can qualify."""
    counts = np.atleast_2d(counts)
    n_bins = counts.shape[1]
    mask = np.zeros(counts.shape, dtype=bool)
    lo, hi = step_size, n_bins - step_size  # 0-based slice of candidate bins
    if hi <= lo:
        return mask
    centre = counts[:, lo:hi]
    ok = np.ones(centre.shape, dtype=bool)
    for z in range(1, step_size + 1):
        ok &= centre < counts[:, lo + z:hi + z]
        ok &= centre < counts[:, lo - z:hi - z]
    mask[:, lo:hi] = ok
    return mask


def find_hopt_many(counts, step_size, fallback=0.0):
    """Cut-off for each histogram row: the first strict local minimum met when
    scanning from the center-most candidate bin outward, as ``(j - 1) / n_bins``.
    Rows without a local minimum get ``fallback``."""
    counts = np.atleast_2d(counts)
    n_bins = counts.shape[1]
    mask = local_minimum_mask(counts, step_size)
    found = mask.any(axis=1)
    # last True column == highest j == first hit of the downward scan
    j0 = n_bins - 1 - np.argmax(mask[:, ::-1], axis=1)
    return np.where(found, j0 / n_bins, fallback)


def find_hopt(H, step_size, fallback=0.0):
    """Cut-off depth for one histogram.

    Scans ``j = n_bins - step_size`` down to ``1 + step_size`` and stops at the
    first bin strictly below all ``2 * step_size`` flanking bins, returning
    ``(j - 1) / n_bins``. Without such a bin the ``fallback`` (0, i.e. every
    point is a neighbor) is returned.

    >>> find_hopt(DepthHistogram(5, np.array([3, 1, 4, 2, 5])), 1)
    0.6
    """
    NeighborParams(H.n_bins, step_size)
    return float(find_hopt_many(H.counts[None, :], step_size, fallback)[0])


def _fallback_value(fallback):
    if fallback == "all":
        return 0.0
    if fallback == "self":
        return np.nextafter(1.0, 0.0)
    raise ValueError(f"fallback must be 'all' or 'self', got {fallback!r}")


def crad_cutoffs(D, params, fallback="all"):
    """Per-point cut-off depth for every row of ``D``."""
    counts = histogram_counts(D, params.n_bins)
    return find_hopt_many(counts, params.step_size, _fallback_value(fallback))


def crad_neighbors(D, params, fallback="all"):
    """Boolean neighbor matrix: ``A[i, l]`` iff ``D[i, l] > cutoff(i)``."""
    D = np.asarray(D, dtype=float)
    return D > crad_cutoffs(D, params, fallback)[:, None]


def nbr_crad(depth_row, params, fallback="all"):
    """Indices whose depth from the point exceeds its automatic cut-off.

    With ``fallback="self"`` a point without a local density drop keeps only
    itself (and exact duplicates).
    """
    H = build_histogram(depth_row, params.n_bins)
    cutoff = find_hopt(H, params.step_size, _fallback_value(fallback))
    return np.flatnonzero(np.asarray(depth_row) > cutoff)


def nbr_dbca(depth_row, theta):
    return np.flatnonzero(np.asarray(depth_row) >= theta)


def euclidean_distances(X):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return cdist(X, X)


def nbr_euclid(X, i, epsilon):
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    d = cdist(X[i:i + 1], X)[0]
    return np.flatnonzero(d <= epsilon)
