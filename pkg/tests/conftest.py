import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from lapsum.graphs import Graph, all_labeled_graphs, graph_from_edges


def small_graphs(max_n: int = 5):
    """Every labeled graph on 1..max_n vertices."""
    for n in range(1, max_n + 1):
        yield from all_labeled_graphs(n)


def sampled_graphs(count: int, max_n: int, seed: int):
    """Seeded random labeled graphs with n uniform in 2..max_n, p uniform."""
    rng = random.Random(seed)
    from itertools import combinations

    for _ in range(count):
        n = rng.randint(2, max_n)
        p = rng.random()
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
        yield graph_from_edges(n, edges)


@pytest.fixture(scope="session")
def exhaustive_n4():
    return list(small_graphs(4))


@pytest.fixture(scope="session")
def exhaustive_n5():
    return list(small_graphs(5))
