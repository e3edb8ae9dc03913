import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crad.cluster import robust_depth
from crad.depth import depth_matrix, depth_value, load_depth_matrix, save_depth_matrix
from crad.scatter import exact_mcd, reweight


def test_depth_value_examples():
    assert depth_value([1, 2], [1, 2], np.eye(2)) == 1.0
    assert depth_value([0, 0], [1, 0], np.eye(2)) == 0.5
    assert depth_value([0, 0], [2, 0], np.linalg.inv(np.diag([4.0, 1.0]))) == pytest.approx(0.5)


def test_single_point():
    np.testing.assert_array_equal(robust_depth(np.array([[3.0, 4.0]])), [[1.0]])


def test_equally_spaced_line():
    X = np.array([[0.0], [1.0], [2.0]])
    inv = np.array([[1.0]])
    assert depth_value(X[0], X[1], inv) == depth_value(X[1], X[2], inv)


def test_matrix_invariants(rng):
    X = rng.normal(size=(50, 3))
    D = robust_depth(X, seed=2)
    assert np.all(np.diag(D) == 1.0)
    assert np.array_equal(D, D.T)
    assert np.all((D > 0) & (D <= 1))
    again = robust_depth(X, seed=2)
    assert D.tobytes() == again.tobytes()


def test_matches_pairwise_formula(rng):
    X = rng.normal(size=(12, 2))
    from crad.scatter import robust_scatter

    s = robust_scatter(X, seed=0)
    D = depth_matrix(X, s)
    for i in range(12):
        for j in range(12):
            assert D[i, j] == pytest.approx(depth_value(X[i], X[j], s.inverse), rel=1e-12)


def test_vanishing(rng):
    X = rng.normal(size=(30, 2))
    X[0] = [1e6, 0.0]
    D = robust_depth(X, seed=0)
    assert D[1, 0] < 1e-6


def test_affine_invariance_exact(rng):
    X = rng.normal(size=(10, 2))
    A = np.array([[3.0, 1.0], [0.5, -2.0]])
    b = np.array([10.0, 4.0])
    D1 = robust_depth(X, exact=True)
    D2 = robust_depth(X @ A.T + b, exact=True)
    np.testing.assert_allclose(D2, D1, atol=1e-6)


def test_dimension_mismatch(rng):
    X = rng.normal(size=(10, 2))
    s = reweight(X, exact_mcd(X))
    with pytest.raises(ValueError):
        depth_matrix(rng.normal(size=(5, 3)), s)


def test_save_load(tmp_path, rng):
    D = robust_depth(rng.normal(size=(15, 2)))
    f = tmp_path / "d.bin"
    save_depth_matrix(f, D)
    assert load_depth_matrix(f).tobytes() == D.tobytes()
    f.write_bytes(b"garbage!")
    with pytest.raises(ValueError):
        load_depth_matrix(f)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 100), st.floats(0.01, 100))
def test_monotone_in_quadratic_form(a, b):
    inv = np.linalg.inv(np.array([[2.0, 0.3], [0.3, 1.0]]))
    u = np.array([1.0, 1.0])
    da, db = depth_value([0, 0], a * u, inv), depth_value([0, 0], b * u, inv)
    if a < b:
        assert da > db
    elif a > b:
        assert da < db
