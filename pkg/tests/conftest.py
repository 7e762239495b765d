from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from simtri.hypergraph import ThreeGraph

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@st.composite
def three_graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    triples = list(combinations(range(n), 3))
    keep = draw(st.lists(st.booleans(), min_size=len(triples), max_size=len(triples)))
    return ThreeGraph(n, frozenset(t for t, k in zip(triples, keep) if k))
