import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from crad.dataset import DataError, as_data_matrix, load_csv, remap_labels, standardize, write_csv


def test_plain_csv(tmp_path):
    f = tmp_path / "a.csv"
    f.write_text("1,2\n3,4\n5,6")
    X, y = load_csv(f)
    np.testing.assert_array_equal(X, [[1, 2], [3, 4], [5, 6]])
    assert y is None


def test_header_and_string_labels(tmp_path):
    f = tmp_path / "a.csv"
    f.write_text("a,b,y\n0,0,pos\n1,1,neg\n")
    X, y = load_csv(f, has_header=True, label_column=2)
    np.testing.assert_array_equal(X, [[0, 0], [1, 1]])
    np.testing.assert_array_equal(y, [1, 2])


def test_non_numeric_cell(tmp_path):
    f = tmp_path / "a.csv"
    f.write_text("1,2\n3,abc\n")
    with pytest.raises(DataError, match="non-numeric cell at row 2, col 2"):
        load_csv(f)


def test_ragged_and_empty(tmp_path):
    f = tmp_path / "a.csv"
    f.write_text("1,2\n3\n")
    with pytest.raises(DataError, match="ragged"):
        load_csv(f)
    f.write_text("\n\n")
    with pytest.raises(DataError, match="no data rows"):
        load_csv(f)


def test_whitespace_delimiter(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("1.5\t2  1\n3 4\t\t2\n")
    X, y = load_csv(f, delimiter=None, label_column=-1)
    np.testing.assert_array_equal(X, [[1.5, 2], [3, 4]])
    np.testing.assert_array_equal(y, [1, 2])


def test_numeric_labels_normalized():
    assert list(remap_labels([3, 3.0, 1, 3])) == [1, 1, 2, 1]


def test_as_data_matrix_rejects_nan():
    with pytest.raises(DataError):
        as_data_matrix([[1.0, np.nan]])


def test_standardize_examples():
    out = standardize(np.array([[0.0, 5.0], [2.0, 5.0]]))
    np.testing.assert_allclose(out[:, 0], [-1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-15)
    np.testing.assert_array_equal(out[:, 1], [0.0, 0.0])


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(2, 30), st.integers(1, 4)), elements=finite))
def test_standardize_properties(X):
    Z = standardize(X)
    assert np.all(np.abs(Z.mean(axis=0)) < 1e-10)
    sd = Z.std(axis=0, ddof=1)
    assert np.all((sd == 0) | (np.abs(sd - 1) < 1e-10))
    np.testing.assert_allclose(standardize(Z), Z, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 20), st.integers(1, 4)),
              elements=st.floats(-1e300, 1e300, allow_nan=False, allow_infinity=False)))
def test_csv_round_trip_is_exact(tmp_path_factory, X):
    f = tmp_path_factory.mktemp("rt") / "x.csv"
    labels = np.arange(X.shape[0]) % 3
    write_csv(f, X, labels)
    X2, y2 = load_csv(f, has_header=True, label_column=-1)
    assert X2.tobytes() == X.tobytes()
    np.testing.assert_array_equal(y2, remap_labels(labels.tolist()))
