"""Minimum Covariance Determinant location/scatter estimation.

``fast_mcd`` is the randomized concentration-step search, ``exact_mcd``
enumerates every h-subset and is meant for small problems and as a test
oracle. ``reweight`` applies hard-rejection reweighting to a raw estimate;
its output is the scatter used by the depth function.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .dataset import as_data_matrix


class DegenerateScatterError(ValueError):
    """Raised when no subset yields a usable covariance (exact fit)."""


class ReweightingCollapseError(ValueError):
    """Raised when every observation is rejected by the reweighting step."""


@dataclass(frozen=True)
class ScatterEstimate:
    center: np.ndarray
    covariance: np.ndarray
    inverse: np.ndarray
    consistency_factor: float
    h_subset: int
    raw_determinant: float
    stage: str  # "raw" or "reweighted"
    support: np.ndarray = None  # boolean mask of the points used


def chi2_cdf(x, df):
    """CDF of the chi-square distribution via the regularized lower gamma."""
    return special.gammainc(df / 2.0, np.asarray(x, dtype=float) / 2.0)


def chi2_ppf(q, df):
    """Quantile of the chi-square distribution via the inverse regularized gamma."""
    return 2.0 * special.gammaincinv(df / 2.0, q)


def consistency_factor(alpha, p):
    """Scale correction for a covariance computed on the central ``alpha`` fraction.

    ``alpha / P(chi2_{p+2} <= q_alpha)`` where ``q_alpha`` is the
    ``alpha``-quantile of ``chi2_p``. Equals 1 when ``alpha == 1``.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1.0:
        return 1.0
    q = chi2_ppf(alpha, p)
    return float(alpha / chi2_cdf(q, p + 2))


def default_h(n, p):
    """Subset size with maximal breakdown point."""
    return (n + p + 1) // 2


def regularize(cov):
    """Add a small ridge when ``cov`` is (numerically) singular.

    Returns the possibly regularized matrix. A matrix with zero trace cannot
    be rescued and raises :class:`DegenerateScatterError`.
    """
    cov = 0.5 * (cov + cov.T)
    p = cov.shape[0]
    scale = np.trace(cov) / p
    if not scale > 0:
        raise DegenerateScatterError("exact fit / degenerate scatter: zero total variance")
    if _is_singular(cov):
        cov = cov + 1e-8 * scale * np.eye(p)
    return cov


def _is_singular(cov):
    scale = np.trace(cov) / cov.shape[0]
    return not scale > 0 or np.linalg.eigvalsh(cov)[0] < 1e-10 * scale


def _subset_stats(X, idx):
    sub = X[idx]
    mean = sub.mean(axis=0)
    diff = sub - mean
    cov = diff.T @ diff / (len(idx) - 1)
    return mean, cov


def _objective(cov):
    """log-determinant used to rank subsets; singular subsets are ranked after ridge."""
    try:
        reg = regularize(cov)
    except DegenerateScatterError:
        return -np.inf
    sign, logdet = np.linalg.slogdet(reg)
    return logdet if sign > 0 else -np.inf


def mahalanobis_sq(X, center, inverse):
    diff = X - center
    return np.einsum("ij,jk,ik->i", diff, inverse, diff)


def _c_step(X, mean, cov, h):
    inv = np.linalg.inv(regularize(cov))
    d2 = mahalanobis_sq(X, mean, inv)
    idx = np.sort(np.argsort(d2, kind="stable")[:h])
    mean, cov = _subset_stats(X, idx)
    return idx, mean, cov, _objective(cov)


def _check_h(n, p, h):
    if h is None:
        h = default_h(n, p)
    if not default_h(n, p) <= h <= n:
        raise ValueError(f"h={h} outside [{default_h(n, p)}, {n}]")
    return int(h)


def _finish_raw(X, idx, h):
    n, p = X.shape
    mean, cov = _subset_stats(X, idx)
    if not np.trace(cov) > 0:
        raise DegenerateScatterError("exact fit / degenerate scatter: selected subset has zero variance")
    det = float(np.linalg.det(cov))
    c = consistency_factor(h / n, p)
    scaled = regularize(c * cov)
    support = np.zeros(n, dtype=bool)
    support[idx] = True
    return ScatterEstimate(
        center=mean,
        covariance=scaled,
        inverse=np.linalg.inv(scaled),
        consistency_factor=c,
        h_subset=h,
        raw_determinant=max(det, 0.0),
        stage="raw",
        support=support,
    )


def fast_mcd(X, h=None, seed=0, n_starts=500, n_initial_steps=2, keep_best=10, max_steps=100):
    """Approximate MCD by random elemental starts and concentration steps.

    Parameters
    ----------
    X : array_like of shape (n, p)
    h : int, optional
        Subset size, default ``(n + p + 1) // 2``.
    seed : int
        Seed for the start subsets; the result is a pure function of it.
    n_starts : int
        Number of random ``(p + 1)``-subsets.
    n_initial_steps : int
        C-steps applied to every start before pruning.
    keep_best : int
        Candidates iterated to convergence.
    max_steps : int
        Cap on C-steps per candidate in the final stage.

    Returns
    -------
    ScatterEstimate
        Raw-stage estimate, covariance scaled by ``consistency_factor(h/n, p)``.
    """
    X = as_data_matrix(X)
    n, p = X.shape
    if n < p + 2:
        raise ValueError(f"fast_mcd needs n >= p + 2, got n={n}, p={p}")
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    h = _check_h(n, p, h)
    if h == n:
        return _finish_raw(X, np.arange(n), h)

    rng = np.random.Generator(np.random.Philox(seed))
    candidates = []
    for start in range(n_starts):
        perm = rng.permutation(n)
        size = p + 1
        mean, cov = _subset_stats(X, perm[:size])
        # grow singular elemental sets, as in the original algorithm
        while size < h and _is_singular(cov):
            size += 1
            mean, cov = _subset_stats(X, perm[:size])
        if not np.trace(cov) > 0:
            continue
        for _ in range(n_initial_steps):
            idx, mean, cov, obj = _c_step(X, mean, cov, h)
        candidates.append((obj, start, idx, mean, cov))
    if not candidates:
        raise DegenerateScatterError("exact fit / degenerate scatter: no usable start subset")

    # ties broken by start index so the result does not depend on ordering
    candidates.sort(key=lambda c: (c[0], c[1]))
    best = None
    seen = set()
    for obj, start, idx, mean, cov in candidates:
        key = idx.tobytes()
        if key in seen:
            continue
        seen.add(key)
        for _ in range(max_steps):
            new_idx, new_mean, new_cov, new_obj = _c_step(X, mean, cov, h)
            if np.array_equal(new_idx, idx) or new_obj > obj:
                break
            gain = obj - new_obj
            idx, mean, cov, obj = new_idx, new_mean, new_cov, new_obj
            if gain < 1e-12 * max(1.0, abs(obj)):
                break
        if best is None or obj < best[0]:
            best = (obj, idx)
        if len(seen) >= keep_best:
            break
    return _finish_raw(X, best[1], h)


def exact_mcd(X, h=None, max_subsets=200_000):
    """Global MCD by enumerating all h-subsets (lexicographically first on ties)."""
    X = as_data_matrix(X)
    n, p = X.shape
    h = _check_h(n, p, h)
    total = math.comb(n, h)
    if total > max_subsets:
        raise ValueError(f"C({n}, {h}) = {total} subsets exceeds the budget of {max_subsets}")
    best_obj, best_idx = np.inf, None
    for combo in itertools.combinations(range(n), h):
        idx = np.fromiter(combo, dtype=np.intp, count=h)
        _, cov = _subset_stats(X, idx)
        obj = _objective(cov)
        if obj < best_obj:
            best_obj, best_idx = obj, idx
    if best_idx is None:
        raise DegenerateScatterError("exact fit / degenerate scatter: every subset is degenerate")
    return _finish_raw(X, best_idx, h)


def classical_scatter(X):
    """Sample mean and covariance wrapped as a raw estimate (``h = n``)."""
    X = as_data_matrix(X)
    return _finish_raw(X, np.arange(X.shape[0]), X.shape[0])


def reweight(X, raw, cutoff_quantile=0.975, distances="mcd"):
    """Hard-rejection reweighting of a raw estimate.

    Points with squared distance above the ``cutoff_quantile`` chi-square
    quantile get weight 0. The center is the weighted mean and the scatter is
    ``c1 / n * sum_i w_i (x_i - center)(x_i - center)^T`` with
    ``c1 = consistency_factor(cutoff_quantile, p)``.

    Parameters
    ----------
    distances : {"mcd", "classical"}
        Where the squared distances come from: the raw MCD estimate, or the
        plain sample mean/covariance of ``X``.
    """
    X = as_data_matrix(X)
    if raw.stage != "raw":
        raise ValueError("reweight expects a raw-stage estimate")
    n, p = X.shape
    if distances == "mcd":
        d2 = mahalanobis_sq(X, raw.center, raw.inverse)
    elif distances == "classical":
        ref = classical_scatter(X)
        d2 = mahalanobis_sq(X, ref.center, ref.inverse)
    else:
        raise ValueError(f"unknown distance source {distances!r}")

    w = (d2 <= chi2_ppf(cutoff_quantile, p)).astype(np.float64)
    total = w.sum()
    if total == 0:
        raise ReweightingCollapseError("reweighting collapse: all weights are zero")
    center = (w @ X) / total
    diff = X - center
    c1 = consistency_factor(cutoff_quantile, p)
    cov = c1 * (diff.T * w) @ diff / n
    cov = regularize(cov)
    return ScatterEstimate(
        center=center,
        covariance=cov,
        inverse=np.linalg.inv(cov),
        consistency_factor=c1,
        h_subset=raw.h_subset,
        raw_determinant=raw.raw_determinant,
        stage="reweighted",
        support=w > 0,
    )


def robust_scatter(X, seed=0, h=None, n_starts=500, exact=False, distances="mcd"):
    """Raw MCD followed by reweighting: the scatter used for depth."""
    raw = exact_mcd(X, h=h) if exact else fast_mcd(X, h=h, seed=seed, n_starts=n_starts)
    return reweight(X, raw, distances=distances)
