from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def iris():
    from crad.dataset import load_csv

    return load_csv(DATA / "iris.csv", has_header=True, label_column=-1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
