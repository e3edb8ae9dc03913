"""Robust Mahalanobis depth between every pair of observations.

``D[i, j] = 1 / (1 + (x_j - x_i)^T S^{-1} (x_j - x_i))`` with one global
scatter ``S``. Row ``i`` is the depth profile of the sample seen from
``x_i``.
"""

import struct
from pathlib import Path

import numpy as np
from scipy.spatial.distance import cdist

from .dataset import as_data_matrix

MAGIC = b"CRADDM01"


def depth_value(xi, xj, inv_cov):
    diff = np.asarray(xj, dtype=float) - np.asarray(xi, dtype=float)
    return 1.0 / (1.0 + float(diff @ inv_cov @ diff))


def depth_matrix(X, scatter):
    """Dense ``(n, n)`` depth matrix of ``X`` under ``scatter.inverse``.

    The quadratic forms are evaluated as squared Euclidean distances between
    whitened rows, which makes the result exactly symmetric with an exact
    unit diagonal.
    """
    X = as_data_matrix(X)
    inv = np.asarray(scatter.inverse, dtype=float)
    if inv.shape != (X.shape[1], X.shape[1]):
        raise ValueError(f"scatter is {inv.shape[0]}-dimensional, data has {X.shape[1]} columns")
    inv = 0.5 * (inv + inv.T)
    # inv = L L^T  =>  q(a, b) = |L^T (a - b)|^2
    L = np.linalg.cholesky(inv)
    Z = X @ L
    q = cdist(Z, Z, "sqeuclidean")
    D = 1.0 / (1.0 + q)
    np.fill_diagonal(D, 1.0)
    return D


def save_depth_matrix(path, D):
    """Write ``D`` as magic bytes, little-endian u64 ``n``, then ``n*n`` float64 row-major."""
    D = np.ascontiguousarray(D, dtype="<f8")
    n = D.shape[0]
    if D.shape != (n, n):
        raise ValueError("depth matrix must be square")
    with Path(path).open("wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<Q", n))
        fh.write(D.tobytes(order="C"))


def load_depth_matrix(path):
    data = Path(path).read_bytes()
    if data[:8] != MAGIC:
        raise ValueError(f"{path} is not a depth-matrix cache (bad magic)")
    (n,) = struct.unpack("<Q", data[8:16])
    body = data[16:]
    if len(body) != 8 * n * n:
        raise ValueError(f"{path}: expected {n * n} values, found {len(body) // 8}")
    return np.frombuffer(body, dtype="<f8").reshape(n, n).astype(np.float64)
