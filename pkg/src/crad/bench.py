"""Best-achievable benchmark: run every algorithm over its full parameter grid
against ground truth and keep the best Rand index and the best AMI.

A configuration is a plain dict (usually loaded from JSON)::

    {
      "datasets": [
        {"name": "iris", "path": "iris.csv", "label_column": -1, "has_header": true},
        {"name": "toy", "generator": {"recipe": "toy", "noise_ratio": 0.0}}
      ],
      "algorithms": ["crad", "crad-dbscan", "dbca", "dbscan"],
      "modes": ["raw", "standardized"],
      "grids": {"n_bins": [80, 90, 100], "theta": [...], "min_pts": [2, 3, 4, 5, 6]},
      "trials": 1,
      "seed": 0
    }

Grid lists are used verbatim; missing grids fall back to the wide defaults
below. DBSCAN radii default to :func:`eps_grid`.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .cluster import crad, crad_dbscan, dbca, dbscan_eu, robust_depth
from .dataset import load_csv, standardize
from .metrics import ami, rand_index
from .neighbor import NeighborParams, euclidean_distances
from .synthgen import GenSpec, generate

ALGORITHMS = ("crad", "crad-dbscan", "dbca", "dbscan")
DEFAULT_N_BINS = list(range(80, 701, 10))
DEFAULT_THETA = [round(0.80 + 0.02 * k, 2) for k in range(11)]
DEFAULT_MIN_PTS = [2, 3, 4, 5, 6]
DEFAULT_EPS_STEPS = 50


def eps_grid(dist, steps=DEFAULT_EPS_STEPS):
    """``steps`` radii from the smallest positive to half the largest pairwise distance."""
    positive = dist[dist > 0]
    if positive.size == 0:
        raise ValueError("all points coincide")
    return np.linspace(positive.min(), dist.max() / 2, steps).tolist()


def load_dataset(entry, trial_seed=0):
    """Return ``(X, truth)`` for one dataset entry of a bench config."""
    if "generator" in entry:
        g = dict(entry["generator"])
        spec = GenSpec(
            recipe=g["recipe"],
            seed=int(g.get("seed", trial_seed)),
            params=g.get("params", {}),
            noise_ratio=float(g.get("noise_ratio", 0.0)),
        )
        return generate(spec)
    X, y = load_csv(
        entry["path"],
        delimiter=entry.get("delimiter", ","),
        has_header=bool(entry.get("has_header", False)),
        label_column=entry.get("label_column", -1),
    )
    if y is None:
        raise ValueError(f"dataset {entry.get('name', entry['path'])} has no label column")
    return X, y


def _cells(algorithm, X, grids, dist):
    n_bins = grids.get("n_bins", DEFAULT_N_BINS)
    step = int(grids.get("step_size", 1))
    min_pts = grids.get("min_pts", DEFAULT_MIN_PTS)
    if algorithm == "crad":
        return [{"n_bins": nb, "step_size": step} for nb in n_bins]
    if algorithm == "crad-dbscan":
        return [{"n_bins": nb, "step_size": step, "min_pts": m} for nb, m in itertools.product(n_bins, min_pts)]
    if algorithm == "dbca":
        return [{"theta": t} for t in grids.get("theta", DEFAULT_THETA)]
    if algorithm == "dbscan":
        eps = grids.get("eps") or eps_grid(dist, int(grids.get("eps_steps", DEFAULT_EPS_STEPS)))
        return [{"epsilon": e, "min_pts": m} for e, m in itertools.product(eps, min_pts)]
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _run_cell(algorithm, X, cell, D, dist):
    if algorithm == "crad":
        return crad(X, NeighborParams(cell["n_bins"], cell["step_size"]), depth=D)
    if algorithm == "crad-dbscan":
        return crad_dbscan(X, NeighborParams(cell["n_bins"], cell["step_size"]), cell["min_pts"], depth=D)
    if algorithm == "dbca":
        return dbca(X, cell["theta"], depth=D)
    return dbscan_eu(X, cell["epsilon"], cell["min_pts"], distances=dist)


def best_scores(X, truth, algorithm, grids=None, seed=0, jobs=1, noise="one-cluster"):
    """Best RI and best AMI of ``algorithm`` over its grid on one dataset.

    Returns a dict with the two scores and the grid cell that attains each
    (first cell in grid order on ties).
    """
    grids = grids or {}
    dist = euclidean_distances(X) if algorithm == "dbscan" else None
    D = robust_depth(X, seed=seed) if algorithm != "dbscan" else None
    cells = _cells(algorithm, X, grids, dist)

    def score(cell):
        labels = _run_cell(algorithm, X, cell, D, dist)
        return rand_index(truth, labels, noise), ami(truth, labels, noise)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(score, cells))
    else:
        results = [score(c) for c in cells]
    ri = np.array([r for r, _ in results])
    am = np.array([a for _, a in results])
    bi, ba = int(np.argmax(ri)), int(np.argmax(am))
    return {"ri": float(ri[bi]), "ri_params": cells[bi], "ami": float(am[ba]), "ami_params": cells[ba]}


def run_bench(config, jobs=1):
    """Run a bench configuration; returns a list of result rows (dicts)."""
    algorithms = config.get("algorithms", list(ALGORITHMS))
    modes = config.get("modes", ["raw", "standardized"])
    grids = config.get("grids", {})
    trials = int(config.get("trials", 1))
    base_seed = int(config.get("seed", 0))
    noise = config.get("noise_mode", "one-cluster")
    for mode in modes:
        if mode not in ("raw", "standardized"):
            raise ValueError(f"unknown mode {mode!r}")

    rows = []
    for entry in config["datasets"]:
        name = entry.get("name") or Path(entry["path"]).stem
        for algorithm in algorithms:
            for mode in modes:
                per_trial = []
                for t in range(trials):
                    seed = base_seed + t
                    X, y = load_dataset(entry, trial_seed=seed)
                    if mode == "standardized":
                        X = standardize(X)
                    per_trial.append(best_scores(X, y, algorithm, grids, seed=seed, jobs=jobs, noise=noise))
                rows.append({
                    "dataset": name,
                    "n": int(X.shape[0]),
                    "p": int(X.shape[1]),
                    "algorithm": algorithm,
                    "mode": mode,
                    "trials": trials,
                    "ri": float(np.mean([r["ri"] for r in per_trial])),
                    "ami": float(np.mean([r["ami"] for r in per_trial])),
                    "ri_params": per_trial[0]["ri_params"],
                    "ami_params": per_trial[0]["ami_params"],
                })
    return rows


def best_mode(rows, dataset, algorithm, key="ri"):
    """Highest ``key`` over the raw/standardized rows of one dataset/algorithm."""
    vals = [r[key] for r in rows if r["dataset"] == dataset and r["algorithm"] == algorithm]
    if not vals:
        raise KeyError(f"no rows for {dataset}/{algorithm}")
    return max(vals)
