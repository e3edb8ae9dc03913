"""Cluster expansion over a {0,1} neighbor matrix and the four algorithms
built on it: CRAD, CRAD-DBSCAN, DBCA and Euclidean DBSCAN.

Labels: ``0`` for singletons/noise, ``1..k`` for clusters in order of
creation. ``-1`` only appears while a labeling is being built.
"""

from collections import deque

import numpy as np

from .dataset import as_data_matrix
from .depth import depth_matrix
from .neighbor import NeighborParams, crad_neighbors, euclidean_distances
from .scatter import robust_scatter

UNASSIGNED = -1


def build_adjacency(neighbor_provider, n, min_pts=None):
    """Boolean ``(n, n)`` matrix with ``A[i, j]`` set iff ``j`` is a neighbor of ``i``.

    With ``min_pts`` given, rows of points with ``|NBR(i)| <= min_pts`` are
    left empty.
    """
    A = np.zeros((n, n), dtype=bool)
    for i in range(n):
        nbrs = np.asarray(list(neighbor_provider(i)), dtype=np.intp)
        if min_pts is not None and len(nbrs) <= min_pts:
            continue
        A[i, nbrs] = True
    return A


def gate(A, min_pts):
    """Clear the rows of ``A`` whose neighbor count does not exceed ``min_pts``."""
    A = np.asarray(A, dtype=bool)
    return A & (A.sum(axis=1) > min_pts)[:, None]


def renumber(labels):
    """Relabel clusters ``1..k`` by first creation, keeping ``0`` as is."""
    labels = np.asarray(labels, dtype=np.int64)
    out = labels.copy()
    for new, old in enumerate(np.unique(labels[labels > 0]), start=1):
        out[labels == old] = new
    return out


def expand_clusters(A, literal=False):
    """Breadth-first cluster expansion over the neighbor matrix ``A``.

    Points are visited in index order. An unassigned point whose neighbor
    set is itself alone becomes a singleton (label 0); otherwise it opens a
    new cluster that absorbs its neighbors and then, breadth first, the
    unassigned neighbors of every absorbed point that has more than one
    neighbor.

    By default a point that already belongs to a cluster is never moved.
    ``literal=True`` lets a newly opened cluster overwrite the labels of the
    seed's direct neighbors, as the bare pseudocode reads.
    """
    A = np.asarray(A, dtype=bool)
    n = A.shape[0]
    sizes = A.sum(axis=1)
    labels = np.full(n, UNASSIGNED, dtype=np.int64)
    label = 0
    for i in range(n):
        if labels[i] != UNASSIGNED:
            continue
        if sizes[i] <= 1:
            labels[i] = 0
            continue
        label += 1
        nbrs = np.flatnonzero(A[i])
        if not literal:
            nbrs = nbrs[labels[nbrs] == UNASSIGNED]
        labels[nbrs] = label
        labels[i] = label
        queue = deque(int(j) for j in nbrs if j != i)
        while queue:
            cur = queue.popleft()
            if sizes[cur] <= 1:
                continue
            fresh = np.flatnonzero(A[cur] & (labels == UNASSIGNED))
            labels[fresh] = label
            queue.extend(fresh.tolist())
    return renumber(labels)


def dbscan_labels(A, min_pts):
    """DBSCAN over a precomputed neighbor matrix.

    Core points have ``|NBR| > min_pts``. Clusters grow from cores through
    their neighbors; a non-core point joins the first cluster that reaches
    it; points reached by no core are noise (0).
    """
    A = np.asarray(A, dtype=bool)
    n = A.shape[0]
    core = A.sum(axis=1) > min_pts
    labels = np.full(n, UNASSIGNED, dtype=np.int64)
    label = 0
    for i in range(n):
        if labels[i] != UNASSIGNED or not core[i]:
            continue
        label += 1
        labels[i] = label
        queue = deque([i])
        while queue:
            cur = queue.popleft()
            fresh = np.flatnonzero(A[cur] & (labels == UNASSIGNED))
            labels[fresh] = label
            queue.extend(j for j in fresh.tolist() if core[j])
    labels[labels == UNASSIGNED] = 0
    return labels


def robust_depth(X, seed=0, n_starts=500, exact=False, distances="mcd"):
    """Depth matrix of ``X`` under its reweighted MCD scatter."""
    X = as_data_matrix(X)
    if X.shape[0] == 1:
        return np.ones((1, 1))
    scatter = robust_scatter(X, seed=seed, n_starts=n_starts, exact=exact, distances=distances)
    return depth_matrix(X, scatter)


def _params(params):
    if isinstance(params, NeighborParams):
        return params
    n_bins, step_size = params
    return NeighborParams(int(n_bins), int(step_size))


def crad(X, params, seed=0, depth=None, fallback="all", literal=False, **scatter_opts):
    """Cluster ``X`` with per-point automatic depth cut-offs.

    Parameters
    ----------
    X : array_like of shape (n, p)
    params : NeighborParams or (n_bins, step_size)
    seed : int
        Seed of the MCD search.
    depth : ndarray, optional
        Precomputed depth matrix; skips the scatter and depth stages.
    fallback : {"all", "self"}
        Neighbor set of a point whose depth histogram has no local minimum.
    literal : bool
        See :func:`expand_clusters`.
    """
    D = robust_depth(X, seed=seed, **scatter_opts) if depth is None else depth
    if D.shape[0] == 1:
        return np.zeros(1, dtype=np.int64)
    return expand_clusters(crad_neighbors(D, _params(params), fallback), literal=literal)


def crad_dbscan(X, params, min_pts, seed=0, depth=None, fallback="all", **scatter_opts):
    """DBSCAN whose neighborhoods are the automatic depth cut-off sets."""
    D = robust_depth(X, seed=seed, **scatter_opts) if depth is None else depth
    return dbscan_labels(crad_neighbors(D, _params(params), fallback), min_pts)


def dbca(X, theta, seed=0, depth=None, literal=False, **scatter_opts):
    """Cluster with one global depth threshold: neighbors have depth >= ``theta``."""
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    D = robust_depth(X, seed=seed, **scatter_opts) if depth is None else depth
    return expand_clusters(D >= theta, literal=literal)


def dbscan_eu(X, epsilon, min_pts, distances=None):
    """Classical DBSCAN with Euclidean balls of radius ``epsilon``."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    dist = euclidean_distances(as_data_matrix(X)) if distances is None else distances
    return dbscan_labels(dist <= epsilon, min_pts)
