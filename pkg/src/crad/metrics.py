"""External (Rand index, adjusted mutual information) and internal
(Calinski-Harabasz) cluster validity measures.

Logarithms are natural. Label ``0`` marks noise/singletons; how it is
treated by the external measures is set by ``noise``:

* ``"one-cluster"``: all 0-labelled points form one cluster (default);
* ``"singletons"``: every 0-labelled point is its own cluster.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


@dataclass(frozen=True)
class ContingencyTable:
    cells: np.ndarray  # (r, c) counts

    @property
    def row_sums(self):
        return self.cells.sum(axis=1)

    @property
    def col_sums(self):
        return self.cells.sum(axis=0)

    @property
    def total(self):
        return int(self.cells.sum())


def resolve_noise(labels, noise="one-cluster"):
    labels = np.asarray(labels, dtype=np.int64)
    if noise == "one-cluster":
        return labels
    if noise == "singletons":
        out = labels.copy()
        zeros = np.flatnonzero(labels == 0)
        out[zeros] = labels.max(initial=0) + 1 + np.arange(len(zeros))
        return out
    raise ValueError(f"unknown noise mode {noise!r}")


def _pair(U, V, noise):
    U = np.asarray(U)
    V = np.asarray(V)
    if U.shape != V.shape or U.ndim != 1:
        raise ValueError(f"label vectors differ in length: {U.shape} vs {V.shape}")
    return resolve_noise(U, noise), resolve_noise(V, noise)


def contingency(U, V, noise="one-cluster"):
    U, V = _pair(U, V, noise)
    _, ui = np.unique(U, return_inverse=True)
    _, vi = np.unique(V, return_inverse=True)
    cells = np.zeros((ui.max(initial=-1) + 1, vi.max(initial=-1) + 1), dtype=np.int64)
    np.add.at(cells, (ui, vi), 1)
    return ContingencyTable(cells)


def rand_index(U, V, noise="one-cluster"):
    """Fraction of point pairs on which the two partitions agree."""
    T = contingency(U, V, noise)
    n = T.total
    if n < 2:
        raise ValueError("rand index needs at least 2 points")
    # integer arithmetic keeps the result exact
    same_both = int(sum(int(c) * (int(c) - 1) // 2 for c in T.cells.ravel()))
    same_u = int(sum(int(a) * (int(a) - 1) // 2 for a in T.row_sums))
    same_v = int(sum(int(b) * (int(b) - 1) // 2 for b in T.col_sums))
    pairs = n * (n - 1) // 2
    agree = pairs + 2 * same_both - same_u - same_v
    return agree / pairs


def entropy(U, noise="one-cluster"):
    U = resolve_noise(U, noise)
    _, counts = np.unique(U, return_counts=True)
    return _entropy_counts(counts)


def _entropy_counts(counts):
    counts = np.asarray(counts, dtype=np.float64)
    counts = counts[counts > 0]
    if counts.size == 0:
        return 0.0
    p = counts / counts.sum()
    return float(-(p * np.log(p)).sum())


def mutual_information(T):
    cells = np.asarray(T.cells, dtype=np.float64)
    n = cells.sum()
    a = cells.sum(axis=1, keepdims=True)
    b = cells.sum(axis=0, keepdims=True)
    nz = cells > 0
    outer = (a @ b)[nz]
    nij = cells[nz]
    return float(max(0.0, (nij / n * (np.log(nij) + np.log(n) - np.log(outer))).sum()))


def expected_mi(T):
    """Expected mutual information under the permutation (hypergeometric) model."""
    a = np.asarray(T.row_sums, dtype=np.int64)
    b = np.asarray(T.col_sums, dtype=np.int64)
    n = int(a.sum())
    if n == 0:
        return 0.0
    lg = lambda x: gammaln(np.asarray(x, dtype=np.float64) + 1)  # noqa: E731  log x!
    log_n = np.log(n)
    total = 0.0
    for ai in a:
        for bj in b:
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            if hi < lo:
                continue
            nij = np.arange(lo, hi + 1, dtype=np.float64)
            term = nij / n * (np.log(nij) + log_n - np.log(float(ai) * float(bj)))
            log_p = (
                lg(ai) + lg(bj) + lg(n - ai) + lg(n - bj)
                - lg(n) - lg(nij) - lg(ai - nij) - lg(bj - nij) - lg(n - ai - bj + nij)
            )
            total += float((term * np.exp(log_p)).sum())
    return total


def ami(U, V, noise="one-cluster"):
    """Adjusted mutual information with the ``max(H(U), H(V))`` normalizer."""
    T = contingency(U, V, noise)
    if _same_cells(T.cells):
        # exact 1 rather than a rounded ratio of equal quantities
        return 1.0
    hu = _entropy_counts(T.row_sums)
    hv = _entropy_counts(T.col_sums)
    emi = expected_mi(T)
    denom = max(hu, hv) - emi
    if abs(denom) < 1e-15:
        return 0.0
    return float((mutual_information(T) - emi) / denom)


def _same_cells(cells):
    nz = cells > 0
    return bool(np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1))


class UndefinedScoreError(ValueError):
    """Raised when a validity index cannot be computed for a labeling."""


def calinski_harabasz(X, labels, squared=True):
    """Between/within dispersion ratio, ignoring points labelled 0.

    Returns ``inf`` when the within-cluster dispersion vanishes. With
    ``squared=False`` plain (unsquared) Euclidean norms are summed instead.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    labels = np.asarray(labels)
    keep = labels != 0
    X, labels = X[keep], labels[keep]
    ids = np.unique(labels)
    n, k = len(labels), len(ids)
    if k < 2 or n - k < 1:
        raise UndefinedScoreError(f"CH undefined for k={k} clusters over n={n} points")
    grand = X.mean(axis=0)
    trace_b = 0.0
    trace_w = 0.0
    for c in ids:
        members = X[labels == c]
        centre = members.mean(axis=0)
        between = np.sum((centre - grand) ** 2)
        within = np.sum((members - centre) ** 2, axis=1)
        if not squared:
            between = np.sqrt(between)
            within = np.sqrt(within)
        trace_b += len(members) * between
        trace_w += within.sum()
    if trace_w == 0:
        return float("inf")
    return float((trace_b / (k - 1)) / (trace_w / (n - k)))
