from pathlib import Path

import pytest
from hypothesis import strategies as st

from chroma.graph import from_edge_list, parse_graph6

DATA = Path(__file__).resolve().parent.parent / "data"

ACCEPTANCE_LINES: list[str] = []


def corpus(n):
    return [parse_graph6(line) for line in (DATA / f"connected{n}.g6").read_text().split()]


@pytest.fixture(scope="session")
def corpus_upto8():
    return [G for n in range(1, 9) for G in corpus(n)]


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        # a random spanning tree guarantees connectivity
        parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
        edges += [(p, v) for v, p in zip(range(1, n), parents)]
    return from_edge_list(n, edges)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
