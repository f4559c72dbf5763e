import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@st.composite
def count_tables(draw, max_rows=8, max_cols=12, high=9):
    """Integer contingency tables with no all-zero row or column."""
    rows = draw(st.integers(2, max_rows))
    cols = draw(st.integers(2, max_cols))
    flat = draw(st.lists(st.integers(0, high), min_size=rows * cols, max_size=rows * cols))
    t = np.array(flat, dtype=np.int64).reshape(rows, cols)
    # Guarantee positive margins without discarding examples.
    for i in range(rows):
        if t[i].sum() == 0:
            t[i, i % cols] = 1
    for j in range(cols):
        if t[:, j].sum() == 0:
            t[j % rows, j] = 1
    return t


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def data_dir():
    return DATA
