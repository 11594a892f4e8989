import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from qwalk import graph as gr

sys.path.insert(0, str(Path(__file__).parent))


def fixture_graphs():
    """Named fixture set shared by the law and acceptance tests."""
    return {
        "single_edge": gr.single_edge(),
        "P3": gr.path_graph(3),
        "C4": gr.cycle_graph(4),
        "S3": gr.star_graph(3),
        "K4": gr.complete_graph(4),
        "R16": gr.random_connected_graph(16, 12, seed=16),
        "R32": gr.random_connected_graph(32, 30, seed=32),
        "P3+C4": gr.disjoint_union(gr.path_graph(3), gr.cycle_graph(4)),
    }


FIXTURES = fixture_graphs()


@pytest.fixture(params=sorted(FIXTURES), ids=sorted(FIXTURES))
def fixture_graph(request):
    return FIXTURES[request.param]


@st.composite
def valid_graphs(draw, max_nodes=10):
    """Random simple graphs with no isolated nodes (not necessarily connected)."""
    n = draw(st.integers(2, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = set(draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))))
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for k in range(n):
        if deg[k] == 0:
            other = (k + 1) % n
            edges.add((min(k, other), max(k, other)))
            deg[k] += 1
            deg[other] += 1
    return gr.Graph(n, frozenset(edges))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
