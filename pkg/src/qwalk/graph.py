"""Graph ingestion and the classical matrices derived from it.

Graphs are undirected and simple, with 0-based integer node ids. Every
matrix produced here is a dense :class:`numpy.ndarray`; graphs large enough
for that to matter are handled by the arc-space routines in
:mod:`qwalk.walk`, which never materialise an N x N matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np


class GraphError(ValueError):
    """Raised when a graph is malformed or fails validation."""


class ParseError(GraphError):
    """Malformed edge-list input. ``lineno`` is 1-based, or None."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on nodes ``0 .. node_count - 1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``, so
    ``Graph(3, [(1, 0), (2, 1)]) == Graph(3, [(0, 1), (1, 2)])``. Self-loops
    are rejected here; range and isolation checks live in :func:`validate`
    so that a report can be produced for bad input.
    """

    node_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if int(self.node_count) != self.node_count or self.node_count < 1:
            raise GraphError(f"node_count must be a positive integer, got {self.node_count!r}")
        normalized = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if u < 0 or v < 0:
                raise GraphError(f"negative node id in edge ({u}, {v})")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "node_count", int(self.node_count))
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self) -> list[list[int]]:
        """Sorted neighbour lists, one per node."""
        nbrs: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            if u < self.node_count and v < self.node_count:
                nbrs[u].append(v)
                nbrs[v].append(u)
        for lst in nbrs:
            lst.sort()
        return nbrs

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Return the graph with node ``i`` renamed to ``perm[i]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.node_count)):
            raise GraphError("relabeling must be a permutation of the node ids")
        return Graph(self.node_count, frozenset((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class ValidationReport:
    isolated_nodes: tuple[int, ...] = ()
    out_of_range: tuple[tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.isolated_nodes and not self.out_of_range

    def __bool__(self) -> bool:
        # truthy when there are findings, like a non-empty list
        return not self.ok

    def messages(self) -> list[str]:
        out = [f"edge ({u}, {v}) references a node outside the graph" for u, v in self.out_of_range]
        out += [f"node {i} is isolated" for i in self.isolated_nodes]
        return out


def parse_edge_list(text: str) -> Graph:
    """Parse ``"u v"`` lines into a :class:`Graph`.

    Blank lines and lines starting with ``#`` are skipped. The node count is
    one more than the largest id seen. Repeated edges, in either direction,
    collapse to a single undirected edge.

    Raises
    ------
    ParseError
        On a line that is not exactly two nonnegative decimal integers, on a
        self-loop, or when no edges are present.
    """
    edges = set()
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two node ids, got {len(parts)} fields: {raw!r}", lineno)
        if not all(p.isdecimal() and p.isascii() for p in parts):
            raise ParseError(f"node ids must be nonnegative integers: {raw!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise ParseError(f"self-loop at node {u}", lineno)
        edges.add((u, v) if u < v else (v, u))
        max_id = max(max_id, u, v)
    if not edges:
        raise ParseError("empty input: no edges found")
    return Graph(max_id + 1, frozenset(edges))


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.sorted_edges())


def validate(g: Graph) -> ValidationReport:
    """Report isolated nodes and edges whose endpoints fall outside ``0..N-1``.

    Connectivity is not required.
    """
    n = g.node_count
    bad = tuple(sorted((u, v) for u, v in g.edges if u >= n or v >= n))
    deg = [0] * n
    for u, v in g.edges:
        if u < n and v < n:
            deg[u] += 1
            deg[v] += 1
    isolated = tuple(i for i, d in enumerate(deg) if d == 0)
    return ValidationReport(isolated_nodes=isolated, out_of_range=bad)


def require_valid(g: Graph) -> Graph:
    report = validate(g)
    if report:
        raise GraphError("; ".join(report.messages()))
    return g


def adjacency_matrix(g: Graph) -> np.ndarray:
    require_valid(g)
    a = np.zeros((g.node_count, g.node_count), dtype=np.int64)
    if g.edges:
        uv = np.array(sorted(g.edges), dtype=np.intp)
        a[uv[:, 0], uv[:, 1]] = 1
        a[uv[:, 1], uv[:, 0]] = 1
    return a


def degrees(a: np.ndarray) -> np.ndarray:
    """Column sums of the adjacency matrix."""
    return np.asarray(a).sum(axis=0).astype(np.int64)


def transition_matrix(a: np.ndarray, d: np.ndarray | None = None) -> np.ndarray:
    """Row-stochastic transition matrix ``P[i, j] = A[i, j] / d[i]``."""
    a = np.asarray(a, dtype=float)
    d = degrees(a) if d is None else np.asarray(d)
    if np.any(d <= 0):
        zero = np.flatnonzero(d <= 0)
        raise GraphError(f"node {int(zero[0])} has degree 0; transition probabilities are undefined")
    return a / d[:, None].astype(float)


def degree_histogram(g: Graph) -> dict[int, int]:
    hist: dict[int, int] = {}
    for d in degrees(adjacency_matrix(g)).tolist():
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))


# Small named graphs used in tests, docs and the benchmark.

def single_edge() -> Graph:
    return Graph(2, frozenset({(0, 1)}))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((0, k) for k in range(1, leaves + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = set()
    offset = 0
    for g in graphs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.node_count
    return Graph(offset, frozenset(edges))


def random_connected_graph(n: int, extra_edges: int, seed: int) -> Graph:
    """Random spanning tree plus ``extra_edges`` random chords; seeded."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    edges = set()
    for k in range(1, n):
        u = int(order[k])
        v = int(order[rng.integers(k)])
        edges.add((min(u, v), max(u, v)))
    max_edges = n * (n - 1) // 2
    target = min(max_edges, len(edges) + extra_edges)
    while len(edges) < target:
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        edges.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(edges))
