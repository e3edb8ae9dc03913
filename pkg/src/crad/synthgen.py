"""Deterministic synthetic benchmark data.

Every generator takes an integer ``seed`` and draws from numpy's
counter-based Philox bit generator. Independent stages (one per cluster
component, noise, ...) get their own child stream from
``SeedSequence(seed).spawn``, so output does not depend on evaluation order.

All generators return ``(X, labels)`` with ground-truth classes ``1..k``;
appended background noise is labelled ``0``.
"""

from dataclasses import dataclass, field

import numpy as np

from .dataset import as_data_matrix


def _seq(seed):
    return seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)


def _streams(seed, k):
    return [np.random.Generator(np.random.Philox(s)) for s in _seq(seed).spawn(k)]


def _rng(seed):
    return np.random.Generator(np.random.Philox(_seq(seed)))


def gen_gaussians(centers, scales, counts, seed=0):
    """Isotropic normal blobs, one class per center."""
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    k, p = centers.shape
    scales = np.broadcast_to(np.asarray(scales, dtype=float), (k,))
    counts = np.broadcast_to(np.asarray(counts, dtype=int), (k,))
    if np.any(scales <= 0):
        raise ValueError("scales must be positive")
    if np.any(counts < 1):
        raise ValueError("counts must be >= 1")
    parts, labels = [], []
    for c, (rng, centre, s, m) in enumerate(zip(_streams(seed, k), centers, scales, counts), start=1):
        parts.append(centre + s * rng.standard_normal((int(m), p)))
        labels.append(np.full(int(m), c))
    return np.vstack(parts), np.concatenate(labels).astype(np.int64)


def gen_toy(seed=0):
    """Two tight blobs (60 points each, unit scale, centers 4 apart) and one
    diffuse blob (200 points, scale 6) whose center lies 20 units from the
    midpoint of the tight pair."""
    return gen_gaussians(
        centers=[[0.0, 0.0], [4.0, 0.0], [2.0, 20.0]],
        scales=[1.0, 1.0, 6.0],
        counts=[60, 60, 200],
        seed=seed,
    )


def spiral_point(t, turns, arm):
    """Point at parameter ``t`` on spiral ``arm`` (0 or 1): radius ``t``,
    angle ``2 pi turns t + arm pi``."""
    t = np.asarray(t, dtype=float)
    angle = 2.0 * np.pi * turns * t + arm * np.pi
    return np.column_stack([t * np.cos(angle), t * np.sin(angle)])


def gen_spirals(n, turns=1.0, sd=0.05, seed=0, t_min=0.1):
    """Two interleaved Archimedean spirals with Gaussian jitter ``sd``."""
    if n < 2:
        raise ValueError("need at least 2 points")
    if turns <= 0 or sd < 0:
        raise ValueError("turns must be positive and sd non-negative")
    sizes = [n // 2, n - n // 2]
    parts, labels = [], []
    for arm, (rng, m) in enumerate(zip(_streams(seed, 2), sizes)):
        t = rng.uniform(t_min, 1.0, m)
        pts = spiral_point(t, turns, arm)
        if sd > 0:
            pts = pts + sd * rng.standard_normal(pts.shape)
        parts.append(pts)
        labels.append(np.full(m, arm + 1))
    return np.vstack(parts), np.concatenate(labels).astype(np.int64)


def gen_cassini(n, seed=0):
    """Two banana-shaped lobes (uniform within a curved band) around a small
    uniform disc. Class sizes follow a 2:1:2 split (lobe, disc, lobe)."""
    if n < 3:
        raise ValueError("need at least 3 points")
    lobe = int(round(0.4 * n))
    disc = int(round(0.2 * n))
    sizes = [lobe, disc, n - lobe - disc]
    r_top, r_disc, r_bottom = _streams(seed, 3)

    def banana(rng, m, sign):
        x = rng.uniform(-1.6, 1.6, m)
        y = sign * (1.6 - 0.3 * x**2 + rng.uniform(-0.2, 0.2, m))
        return np.column_stack([x, y])

    rad = 0.45 * np.sqrt(r_disc.uniform(0, 1, sizes[1]))
    ang = r_disc.uniform(0, 2 * np.pi, sizes[1])
    parts = [
        banana(r_top, sizes[0], 1.0),
        np.column_stack([rad * np.cos(ang), rad * np.sin(ang)]),
        banana(r_bottom, sizes[2], -1.0),
    ]
    labels = np.concatenate([np.full(m, c) for c, m in enumerate(sizes, start=1)])
    return np.vstack(parts), labels.astype(np.int64)


def gen_uniform_box(low, high, count, seed=0):
    """One class drawn uniformly from an axis-aligned box."""
    low = np.asarray(low, dtype=float)
    high = np.asarray(high, dtype=float)
    if count < 1 or np.any(high <= low):
        raise ValueError("invalid box or count")
    X = _rng(seed).uniform(low, high, (int(count), len(low)))
    return X, np.ones(int(count), dtype=np.int64)


def gen_mixture(seed=0, scale=1.0):
    """Mixed-shape, mixed-density 2-D benchmark: a cassini group (3 classes),
    two spirals, two normal blobs of different spread and one uniform
    square; 1000 points, 8 classes."""
    s_cas, s_spi, s_gau, s_box = _seq(seed).spawn(4)
    parts = []
    X, y = gen_cassini(300, seed=s_cas)
    parts.append((1.2 * X + [-3.2, 2.6], y))
    X, y = gen_spirals(250, turns=1.0, sd=0.03, seed=s_spi)
    parts.append((2.2 * X + [3.0, 2.6], y))
    X, y = gen_gaussians([[-3.0, -2.6], [1.2, -2.6]], [0.35, 0.8], [150, 200], seed=s_gau)
    parts.append((X, y))
    X, y = gen_uniform_box([3.6, -3.8], [5.6, -1.4], 100, seed=s_box)
    parts.append((X, y))

    Xs, ys, offset = [], [], 0
    for X, y in parts:
        Xs.append(X)
        ys.append(y + offset)
        offset += int(y.max())
    return scale * np.vstack(Xs), np.concatenate(ys).astype(np.int64)


def add_uniform_noise(X, labels, ratio, seed=0):
    """Append ``round(ratio * n)`` points uniform over the bounding box of
    ``X`` widened by 5% of its extent (2.5% per side); they get label 0."""
    X = as_data_matrix(X)
    if not 0 <= ratio < 1:
        raise ValueError("ratio must lie in [0, 1)")
    m = int(round(ratio * X.shape[0]))
    labels = np.asarray(labels, dtype=np.int64)
    if m == 0:
        return X.copy(), labels.copy()
    lo, hi = X.min(axis=0), X.max(axis=0)
    pad = 0.025 * (hi - lo)
    noise = _rng(seed).uniform(lo - pad, hi + pad, (m, X.shape[1]))
    return np.vstack([X, noise]), np.concatenate([labels, np.zeros(m, dtype=np.int64)])


def add_gaussian_noise(X, sd, seed=0, as_variance=False):
    """Perturb every entry with i.i.d. N(0, sd^2), or N(0, sd) when
    ``as_variance`` is set."""
    X = as_data_matrix(X)
    if sd < 0:
        raise ValueError("sd must be non-negative")
    scale = np.sqrt(sd) if as_variance else sd
    if scale == 0:
        return X.copy()
    return X + scale * _rng(seed).standard_normal(X.shape)


@dataclass
class GenSpec:
    recipe: str
    seed: int = 0
    params: dict = field(default_factory=dict)
    noise_ratio: float = 0.0


RECIPES = {
    "toy": lambda seed, **kw: gen_toy(seed),
    "gaussians": lambda seed, **kw: gen_gaussians(seed=seed, **kw),
    "cassini": lambda seed, n=300, **kw: gen_cassini(n, seed=seed, **kw),
    "spirals": lambda seed, n=300, **kw: gen_spirals(n, seed=seed, **kw),
    "mixture": lambda seed, **kw: gen_mixture(seed=seed, **kw),
}


def generate(spec):
    """Build the dataset described by a :class:`GenSpec`."""
    if spec.recipe not in RECIPES:
        raise ValueError(f"unknown recipe {spec.recipe!r}; choose from {sorted(RECIPES)}")
    X, y = RECIPES[spec.recipe](spec.seed, **spec.params)
    if spec.noise_ratio:
        # separate stream from the signal so adding noise leaves it untouched
        X, y = add_uniform_noise(X, y, spec.noise_ratio, seed=np.random.SeedSequence([spec.seed, 1]))
    return X, y
