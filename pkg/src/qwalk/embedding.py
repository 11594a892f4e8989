"""Per-node embeddings read off evolved walk states, and their export.

Node ``i`` starts in its arc-space lift ``psi_i`` and is walked ``t`` steps.
The embedding is then one of

``occupancy``
    Born-rule node distribution of the final state (length N).
``amplitude``
    Final arc amplitudes, interleaved ``re, im`` in arc order (length 2 * arcs).
``time_averaged``
    Mean of the occupancy distributions over steps ``0..t`` (length N).
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass

import numpy as np

from .evolution import occupancy_distribution
from .graph import Graph, adjacency_matrix, transition_matrix
from .walk import WalkOperator, psi_state, walk_operator

MODES = ("occupancy", "amplitude", "time_averaged")
FORMATS = ("csv", "json")
_CHUNK = 256


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    rows: np.ndarray
    mode: str | None = None
    steps: int | None = None

    @property
    def dimension(self) -> int:
        return self.rows.shape[1]

    def __len__(self) -> int:
        return self.rows.shape[0]


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown embedding mode {mode!r}; choose from {', '.join(MODES)}")


def _embed_rows(u: WalkOperator, p: np.ndarray, nodes, t: int, mode: str) -> np.ndarray:
    basis = u.basis
    x = np.stack([psi_state(basis, p, i) for i in nodes])
    if mode == "time_averaged":
        acc = occupancy_distribution(x, basis)
        for _ in range(t):
            x = u.apply(x)
            acc += occupancy_distribution(x, basis)
        return acc / (t + 1)
    for _ in range(t):
        x = u.apply(x)
    if mode == "occupancy":
        return occupancy_distribution(x, basis)
    out = np.empty((x.shape[0], 2 * x.shape[1]))
    out[:, 0::2] = x.real
    out[:, 1::2] = x.imag
    return out


def node_embedding(
    g: Graph,
    i: int,
    t: int,
    mode: str = "occupancy",
    u: WalkOperator | None = None,
) -> np.ndarray:
    """Embedding vector of node ``i`` after ``t`` steps."""
    _check_mode(mode)
    if t < 0:
        raise ValueError("step count must be nonnegative")
    if not 0 <= i < g.node_count:
        raise IndexError(f"node {i} out of range for {g.node_count} nodes")
    u = walk_operator(g) if u is None else u
    p = transition_matrix(adjacency_matrix(g))
    return _embed_rows(u, p, [i], t, mode)[0]


def embed_all(
    g: Graph,
    t: int,
    mode: str = "occupancy",
    u: WalkOperator | None = None,
    backend: str = "sparse",
    dense_cap: int | None = None,
) -> EmbeddingMatrix:
    """Embed every node; row ``i`` belongs to node ``i``.

    Nodes are walked together in chunks, which matches per-node
    :func:`node_embedding` exactly since every row evolves independently.
    """
    _check_mode(mode)
    if t < 0:
        raise ValueError("step count must be nonnegative")
    if u is None:
        u = walk_operator(g, backend=backend, dense_cap=dense_cap)
    p = transition_matrix(adjacency_matrix(g))
    n = g.node_count
    chunks = [
        _embed_rows(u, p, range(lo, min(lo + _CHUNK, n)), t, mode)
        for lo in range(0, n, _CHUNK)
    ]
    return EmbeddingMatrix(np.vstack(chunks), mode=mode, steps=t)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def to_csv(m: EmbeddingMatrix) -> str:
    rows = np.asarray(m.rows)
    buf = io.StringIO()
    buf.write(",".join(["node"] + [f"c{k}" for k in range(rows.shape[1])]) + "\n")
    for i, row in enumerate(rows):
        buf.write(",".join([str(i)] + [_fmt(x) for x in row]) + "\n")
    return buf.getvalue()


def to_json(m: EmbeddingMatrix) -> str:
    rows = np.asarray(m.rows)
    doc = {
        "mode": m.mode,
        "t": m.steps,
        "dimension": int(rows.shape[1]),
        "rows": [[float(x) for x in row] for row in rows],
    }
    return json.dumps(doc, indent=None) + "\n"


def export(m: EmbeddingMatrix, format: str, destination) -> None:
    """Write ``m`` as CSV or JSON to a path or a text file object."""
    rows = np.asarray(m.rows)
    if rows.ndim != 2 or rows.size == 0:
        raise ValueError("cannot export an empty embedding matrix")
    if format == "csv":
        text = to_csv(m)
    elif format == "json":
        text = to_json(m)
    else:
        raise ValueError(f"unsupported export format {format!r}; choose csv or json")
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        destination.write(text)


def load_embedding(source, format: str) -> EmbeddingMatrix:
    """Inverse of :func:`export`. CSV carries no mode or step count."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline="") as fh:
            text = fh.read()
    else:
        text = source.read()
    if format == "json":
        doc = json.loads(text)
        rows = np.array(doc["rows"], dtype=float).reshape(-1, doc["dimension"])
        return EmbeddingMatrix(rows, mode=doc["mode"], steps=doc["t"])
    if format == "csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if not header or header[0] != "node":
            raise ValueError("CSV embedding must start with a 'node' header column")
        body = [[float(x) for x in rec[1:]] for rec in reader if rec]
        return EmbeddingMatrix(np.array(body, dtype=float).reshape(len(body), len(header) - 1))
    raise ValueError(f"unsupported format {format!r}")
