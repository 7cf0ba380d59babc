import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hrgsim.generators import Graph, csr_from_edges


def graph_from_edges(n: int, edges, radius: float = 1.0, alpha: float = 1.0) -> Graph:
    """Bare graph with dummy coordinates, for purely combinatorial tests."""
    arr = np.asarray(edges, dtype=np.int64).reshape(len(edges), 2)
    indptr, indices = csr_from_edges(n, arr)
    zeros = np.zeros((n, 2))
    return Graph(
        n=n,
        indptr=indptr,
        indices=indices,
        polar=zeros,
        strip=zeros.copy(),
        meta={"model": "fixture", "radius": radius, "alpha": alpha, "n": n, "seed": 0},
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
