import numpy as np
import pytest

from crad.cluster import crad, robust_depth
from crad.metrics import UndefinedScoreError, ami, calinski_harabasz, rand_index
from crad.neighbor import NeighborParams
from crad.synthgen import gen_gaussians
from crad.tuning import NoValidClusteringError, default_grid, sweep_nbin, wide_grid


def test_default_grid_examples():
    g = default_grid(150)
    assert g[0] == (4, 1) and g[-1] == (124, 1)
    assert all(b[0] - a[0] == 10 for a, b in zip(g, g[1:]))
    g = default_grid(1000)
    assert [nb for nb, _ in g] == list(range(100, 301, 10))
    for n in (5, 50, 150, 3000):
        for nb, st in default_grid(n, step_size=2):
            NeighborParams(nb, st)


def test_wide_grid():
    g = wide_grid()
    assert g[0] == (80, 1) and g[-1] == (700, 1) and len(g) == 63


@pytest.fixture(scope="module")
def blobs():
    return gen_gaussians([[0, 0], [20, 0]], 1.0, 30, seed=0)


def test_single_pair_grid(blobs):
    X, _ = blobs
    res = sweep_nbin(X, grid=[(54, 1)])
    assert res.best == (54, 1)


def test_two_blobs_recovered(blobs):
    X, y = blobs
    res = sweep_nbin(X)
    assert res.best_labels.max() == 2
    assert rand_index(y, res.best_labels) == 1.0


def test_undefined_pairs_lose(blobs):
    X, _ = blobs
    D = robust_depth(X)
    # at 10 bins some point falls back to "all" and everything merges
    assert crad(X, (10, 1), depth=D).max() == 1
    res = sweep_nbin(X, grid=[(10, 1), (54, 1)], depth=D)
    assert res.scores[0] is None
    assert res.best == (54, 1)


def test_nothing_scorable():
    X = np.random.default_rng(0).normal(size=(30, 2))
    with pytest.raises(NoValidClusteringError):
        sweep_nbin(X, grid=[(4, 1)], depth=np.full((30, 30), 0.9))


def test_sweep_contract(blobs):
    X, _ = blobs
    res = sweep_nbin(X, seed=4)
    finite = [s for s in res.scores if s is not None]
    assert res.best_score == max(finite)
    again = crad(X, res.best, seed=4)
    assert again.tobytes() == res.best_labels.tobytes()
    # a strictly worse extra pair cannot change the winner
    worse = [p for p, s in zip(res.grid, res.scores) if s is not None and s < res.best_score][0]
    res2 = sweep_nbin(X, grid=res.grid + [worse], seed=4)
    assert res2.best == res.best


def test_jobs_do_not_change_result(blobs):
    X, _ = blobs
    a = sweep_nbin(X, jobs=1)
    b = sweep_nbin(X, jobs=8)
    assert a.scores == b.scores and a.best == b.best
    assert a.best_labels.tobytes() == b.best_labels.tobytes()


def test_ties_prefer_smaller_nbin(blobs):
    X, _ = blobs
    res = sweep_nbin(X, grid=[(60, 1), (50, 1), (40, 1)], metric=lambda X, labels: 1.0)
    assert res.best == (40, 1)


def test_crad_dbscan_sweep_needs_min_pts(blobs):
    X, _ = blobs
    with pytest.raises(ValueError):
        sweep_nbin(X, algorithm="crad-dbscan")
    res = sweep_nbin(X, algorithm="crad-dbscan", min_pts=2)
    assert res.best_labels.max() >= 2


def test_to_dict(blobs):
    X, _ = blobs
    d = sweep_nbin(X, grid=[(10, 1), (54, 1)]).to_dict()
    assert list(d) == ["best", "best_score", "best_n_clusters", "grid"]
    assert d["grid"][0]["score"] is None


def test_three_blob_fixture():
    # three unit blobs 10 apart, 50 points each
    X, y = gen_gaussians([[0, 0], [10, 0], [0, 10]], 1.0, 50, seed=0)
    res = sweep_nbin(X, grid=[(nb, 1) for nb in range(20, 121, 10)])
    # the CH winner is also checked against every grid point by brute force
    D = robust_depth(X)
    scores = []
    for nb in range(20, 121, 10):
        try:
            scores.append(calinski_harabasz(X, crad(X, (nb, 1), depth=D)))
        except UndefinedScoreError:
            scores.append(-np.inf)
    assert res.best[0] == 20 + 10 * int(np.argmax(scores))
    assert ami(y, res.best_labels) >= 0.9
