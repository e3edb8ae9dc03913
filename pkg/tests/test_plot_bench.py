import xml.etree.ElementTree as ET

import numpy as np
import pytest

from crad.bench import best_mode, best_scores, eps_grid
from crad.neighbor import euclidean_distances
from crad.plot import NOISE_COLOR, scatter_svg
from crad.synthgen import gen_gaussians

SVG = "{http://www.w3.org/2000/svg}"


def test_svg_structure():
    X = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.5], [0.5, 2.0]])
    text = scatter_svg(X, [1, 2, 0, 1])
    root = ET.fromstring(text.encode())
    assert root.tag == SVG + "svg" and root.get("version") == "1.1"
    assert len(root.findall(SVG + "circle")) == 3
    crosses = root.findall(SVG + "path")
    assert len(crosses) == 1 and crosses[0].get("stroke") == NOISE_COLOR
    assert scatter_svg(X, [1, 2, 0, 1]) == text


def test_svg_errors():
    X = np.zeros((3, 2))
    with pytest.raises(ValueError):
        scatter_svg(X, [1, 1])
    with pytest.raises(ValueError):
        scatter_svg(X, [1, 1, 1], cols=(0, 2))
    # constant data must not divide by zero
    assert "nan" not in scatter_svg(X, [1, 1, 1])


def test_eps_grid_skips_duplicates():
    X = np.array([[0.0], [0.0], [1.0], [4.0]])
    g = eps_grid(euclidean_distances(X), 4)
    assert g[0] == 1.0 and g[-1] == 2.0 and len(g) == 4


def test_best_scores_blobs():
    X, y = gen_gaussians([[0, 0], [15, 0]], 1.0, 20, seed=2)
    res = best_scores(X, y, "dbscan", {"min_pts": [2], "eps_steps": 20})
    assert res["ri"] == 1.0
    assert set(res["ri_params"]) == {"epsilon", "min_pts"}
    rows = [
        {"dataset": "a", "algorithm": "crad", "mode": "raw", "ri": 0.5},
        {"dataset": "a", "algorithm": "crad", "mode": "standardized", "ri": 0.7},
    ]
    assert best_mode(rows, "a", "crad") == 0.7
