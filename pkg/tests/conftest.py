import random

import pytest
from hypothesis import strategies as st

from csoutliers import Graph, QuerySet

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    """Collects one pass/fail line per acceptance criterion for the summary."""

    def add(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)

    return add


def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


def tri_pendant():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def clique(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def k4_path():
    """K4 on {0,1,2,3} plus the path 3-4-5."""
    return Graph.from_edges(6, clique(4).edges() + [(3, 4), (4, 5)])


def k4_pendant():
    return Graph.from_edges(5, clique(4).edges() + [(0, 4)])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_instance(rng: random.Random, n_lo=4, n_hi=12, max_q=5):
    n = rng.randint(n_lo, n_hi)
    G = random_graph(rng, n, rng.choice((0.3, 0.5, 0.7)))
    Q = rng.sample(range(n), rng.randint(1, min(n, max_q)))
    return G, QuerySet(Q, rng.randint(0, len(Q) - 1))


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def instances(draw, min_n=1, max_n=9):
    G = draw(graphs(min_n, max_n))
    Q = draw(st.sets(st.integers(0, G.n - 1), min_size=1, max_size=min(G.n, 4)))
    k = draw(st.integers(0, len(Q) - 1))
    return G, QuerySet(Q, k)
