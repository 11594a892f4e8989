"""Initial states, iterated evolution and node occupancy."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ._kernels import kernels
from .walk import ArcBasis, WalkOperator


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States of a walk for steps ``0..step_count``.

    ``states`` has shape ``(step_count + 1, arcs)``; in low-memory mode only
    the final state is kept and the shape is ``(1, arcs)``.
    """

    states: np.ndarray
    step_count: int
    kept_all: bool = True

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def __len__(self) -> int:
        return self.states.shape[0]


def initial_global_state(basis: ArcBasis, p: np.ndarray) -> np.ndarray:
    """Uniform superposition ``sqrt(P[i, j] / N)`` over every arc ``(i, j)``."""
    p = np.asarray(p)
    n = basis.node_count
    return np.sqrt(p[basis.tails, basis.heads] / n).astype(complex)


def evolve(u: WalkOperator, s0: np.ndarray, t: int, keep_all: bool = True) -> Trajectory:
    """Apply ``u`` to ``s0`` ``t`` times."""
    if t < 0:
        raise ValueError("step count must be nonnegative")
    s0 = np.asarray(s0, dtype=complex)
    if s0.shape != (u.dim,):
        raise ValueError(f"state has shape {s0.shape}, operator acts on {u.dim} arcs")
    if not keep_all:
        x = s0.copy()
        for _ in range(t):
            x = u.apply(x)
        return Trajectory(x[None, :], t, kept_all=False)
    states = np.empty((t + 1, u.dim), dtype=complex)
    states[0] = s0
    for k in range(t):
        states[k + 1] = u.apply(states[k])
    return Trajectory(states, t)


def occupancy_distribution(
    s: np.ndarray, basis: ArcBasis, position: Literal["tail", "head"] = "tail"
) -> np.ndarray:
    """Born-rule probability of finding the walker at each node.

    The walker on arc ``(w, v)`` is at its tail ``w``; ``position="head"``
    marginalises the other way. Tiny negative round-off is clamped to 0.
    Accepts a single state or a 2-D stack (one distribution per row).
    """
    s = np.ascontiguousarray(s, dtype=complex)
    stack = s if s.ndim == 2 else s[None, :]
    if position == "tail":
        out = np.empty((stack.shape[0], basis.node_count))
        kernels.tail_occupancy(stack, basis.offsets, out)
    elif position == "head":
        out = np.zeros((stack.shape[0], basis.node_count))
        np.add.at(out.T, basis.heads, (np.abs(stack) ** 2).T)
    else:
        raise ValueError(f"position must be 'tail' or 'head', got {position!r}")
    np.maximum(out, 0.0, out=out)
    return out if s.ndim == 2 else out[0]


def dump_trajectory(traj: Trajectory, fp=None) -> str:
    """JSON array of states, each a list of ``[re, im]`` pairs in arc order."""
    doc = [[[float(z.real), float(z.imag)] for z in state] for state in traj.states]
    text = json.dumps(doc)
    if fp is not None:
        fp.write(text)
    return text


def load_trajectory(text: str) -> Trajectory:
    doc = json.loads(text)
    arr = np.array(doc, dtype=float)
    if arr.size == 0:
        raise ValueError("empty trajectory")
    states = arr[..., 0] + 1j * arr[..., 1]
    return Trajectory(states, states.shape[0] - 1)
