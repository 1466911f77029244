import math
import os
import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from pearsoncos import DataMatrix, NormProfile, load_matrix

sys.path.insert(0, os.path.dirname(__file__))

DATA = os.path.join(os.path.dirname(__file__), "data")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

# citation counts per author in the 279-paper occurrence matrix (ratio = sqrt(count))
TABLE1_COUNTS = {
    "Braun": 50, "Schubert": 60, "Glanzel": 53, "Moed": 55, "Nederhof": 31,
    "Narin": 64, "Tijssen": 22, "van Raan": 50, "Leydesdorff": 46, "Price": 54,
    "Callon": 26, "Cronin": 24, "Cooper": 30, "Van Rijsbergen": 30, "Croft": 18,
    "Robertson": 36, "Blair": 18, "Harman": 31, "Belkin": 36, "Spink": 21,
    "Fidel": 23, "Marchionini": 24, "Kuhlthau": 26, "Dervin": 20,
}

# norm ratios of the 24 x 24 co-citation matrix rows
TABLE2_RATIOS = {
    "Braun": 2.5032838, "Schubert": 2.4795703, "Glanzel": 2.729457, "Moed": 2.7337391,
    "Nederhof": 2.8221626, "Narin": 2.8986697, "Tijssen": 3.0789273, "van Raan": 2.4077981,
    "Leydesdorff": 2.8747094, "Price": 2.7635278, "Callon": 2.8295923, "Cronin": 2.556743,
    "Cooper": 2.3184046, "Van Rijsbergen": 2.4469432, "Croft": 3.0858543,
    "Robertson": 2.920658, "Blair": 2.517544, "Harman": 2.5919129, "Belkin": 2.8555919,
    "Spink": 3.0331502, "Fidel": 2.6927563, "Marchionini": 2.4845716, "Kuhlthau": 2.4693658,
    "Dervin": 2.5086617,
}


def table1_profiles():
    return [
        NormProfile(label, float(k), math.sqrt(k), math.sqrt(k), 279)
        for label, k in TABLE1_COUNTS.items()
    ]


def table2_profiles():
    return [NormProfile(label, r, 1.0, r, 24) for label, r in TABLE2_RATIOS.items()]


@pytest.fixture
def toy():
    return DataMatrix(("A", "B"), [[1, 1], [1, 0], [0, 1]], kind_hint="occurrence")


@pytest.fixture(scope="session")
def occurrence279():
    return load_matrix(os.path.join(DATA, "occurrence_279x24.csv"), kind_hint="occurrence")


@pytest.fixture(scope="session")
def toy_path():
    return os.path.join(DATA, "toy_occurrence.csv")


def random_matrix(rng, rows=None, cols=None, kind=None):
    """Random non-negative matrix: binary, small integer counts, or sparse reals."""
    rows = int(rng.integers(5, 51)) if rows is None else rows
    cols = int(rng.integers(3, 11)) if cols is None else cols
    kind = int(rng.integers(3)) if kind is None else kind
    if kind == 0:
        values = rng.integers(0, 2, (rows, cols))
    elif kind == 1:
        values = rng.integers(0, 10, (rows, cols))
    else:
        values = rng.random((rows, cols)) * (rng.random((rows, cols)) < 0.6)
    return DataMatrix(tuple(f"e{j}" for j in range(cols)), values)


@st.composite
def nonneg_vector_pairs(draw, min_n=2, max_n=30, integer=False):
    """Pairs of equal-length non-negative vectors, neither zero nor constant."""
    n = draw(st.integers(min_n, max_n))
    if integer:
        elem = st.integers(0, 20).map(float)
    else:
        elem = st.one_of(st.just(0.0), st.floats(1e-3, 1e3, allow_nan=False))
    vec = st.lists(elem, min_size=n, max_size=n).filter(lambda v: len(set(v)) > 1)
    return np.array(draw(vec)), np.array(draw(vec))
