"""Loading, writing and standardizing observation matrices.

A data matrix is a plain ``(n, p)`` float64 ndarray with finite entries.
Label vectors are 1-D int64 arrays; ``0`` marks noise/singletons and
cluster ids start at ``1``.
"""

import csv
from pathlib import Path

import numpy as np


class DataError(ValueError):
    """Raised when input data cannot be turned into a valid data matrix."""


def as_data_matrix(X):
    """Validate and coerce ``X`` into a finite 2-D float64 array."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise DataError(f"expected a 2-D matrix, got shape {X.shape}")
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise DataError(f"empty data matrix with shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DataError("data matrix contains NaN or Inf")
    return X


def remap_labels(raw):
    """Map arbitrary labels to ``1..k`` by order of first appearance."""
    mapping = {}
    out = np.empty(len(raw), dtype=np.int64)
    for i, value in enumerate(raw):
        if value not in mapping:
            mapping[value] = len(mapping) + 1
        out[i] = mapping[value]
    return out


def load_csv(path, delimiter=",", has_header=False, label_column=None):
    """Read a numeric CSV file.

    Parameters
    ----------
    path : str or Path
        File to read.
    delimiter : str or None
        Field separator; ``None`` splits on runs of whitespace.
    has_header : bool
        Skip the first row.
    label_column : int, optional
        Column holding ground-truth classes. Negative indices count from the
        end. Values are remapped to ``1..k`` by first appearance.

    Returns
    -------
    X : ndarray of shape (n, p)
    labels : ndarray of shape (n,) or None
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            if delimiter is None:
                rows = [line.split() for line in fh]
            else:
                rows = list(csv.reader(fh, delimiter=delimiter))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc

    rows = [row for row in rows if any(cell.strip() for cell in row)]
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise DataError(f"{path} contains no data rows")

    width = len(rows[0])
    label_idx = None
    if label_column is not None:
        label_idx = label_column if label_column >= 0 else width + label_column
        if not 0 <= label_idx < width:
            raise DataError(f"label column {label_column} out of range for {width} columns")

    values = []
    raw_labels = []
    first_row = 2 if has_header else 1
    for r, row in enumerate(rows):
        if len(row) != width:
            raise DataError(f"ragged row {r + first_row}: expected {width} cells, got {len(row)}")
        feats = []
        for c, cell in enumerate(row):
            if c == label_idx:
                raw_labels.append(_label_value(cell.strip()))
                continue
            try:
                v = float(cell)
            except ValueError:
                raise DataError(f"non-numeric cell at row {r + first_row}, col {c + 1}: {cell!r}") from None
            if not np.isfinite(v):
                raise DataError(f"non-finite cell at row {r + first_row}, col {c + 1}")
            feats.append(v)
        values.append(feats)

    X = as_data_matrix(np.array(values, dtype=np.float64))
    labels = remap_labels(raw_labels) if label_idx is not None else None
    return X, labels


def _label_value(cell):
    # "1" and "1.0" should be the same class; anything else stays a string.
    try:
        f = float(cell)
    except ValueError:
        return cell
    return int(f) if f.is_integer() else f


def write_csv(path, X, labels=None, header=True, delimiter=","):
    """Write ``X`` (and an optional trailing label column) with 17 significant digits."""
    X = as_data_matrix(X)
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        if header:
            names = [f"x{j}" for j in range(X.shape[1])]
            if labels is not None:
                names.append("label")
            w.writerow(names)
        for i, row in enumerate(X):
            cells = [format(v, ".17g") for v in row]
            if labels is not None:
                cells.append(str(int(labels[i])))
            w.writerow(cells)
    return path


def standardize(X):
    """Center each column and scale it to unit sample standard deviation.

    Uses the ``n - 1`` denominator. Constant columns end up all zero.
    """
    X = as_data_matrix(X)
    if X.shape[0] < 2:
        raise DataError("standardize needs at least 2 rows")
    centered = X - X.mean(axis=0)
    sd = centered.std(axis=0, ddof=1)
    safe = np.where(sd > 0, sd, 1.0)
    out = centered / safe
    out[:, sd == 0] = 0.0
    return out
