"""Classical random walk on the same transition matrix, for comparison."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .evolution import evolve, occupancy_distribution
from .graph import Graph, adjacency_matrix, transition_matrix
from .walk import WalkOperator, psi_state, walk_operator

SUPPORT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ClassicalTrajectory:
    distributions: np.ndarray  # (t + 1, N)

    @property
    def step_count(self) -> int:
        return self.distributions.shape[0] - 1


def classical_step(p: np.ndarray, d: np.ndarray) -> np.ndarray:
    """``out[j] = sum_i d[i] P[i, j]``."""
    p = np.asarray(p, dtype=float)
    d = np.asarray(d, dtype=float)
    if d.shape != (p.shape[0],):
        raise ValueError(f"distribution has shape {d.shape}, expected ({p.shape[0]},)")
    return d @ p


def classical_evolve(p: np.ndarray, d0: np.ndarray, t: int) -> ClassicalTrajectory:
    if t < 0:
        raise ValueError("step count must be nonnegative")
    d = np.asarray(d0, dtype=float)
    out = np.empty((t + 1, d.shape[0]))
    out[0] = d
    for k in range(t):
        out[k + 1] = classical_step(p, out[k])
    return ClassicalTrajectory(out)


def sample_walk(p: np.ndarray, source: int, t: int, seed: int) -> list[int]:
    """One sampled classical path of ``t`` hops. Demonstration only."""
    rng = np.random.default_rng(seed)
    p = np.asarray(p, dtype=float)
    path = [source]
    for _ in range(t):
        path.append(int(rng.choice(p.shape[0], p=p[path[-1]])))
    return path


def total_variation(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(a) - np.asarray(b)).sum())


@dataclass(frozen=True)
class SpreadRow:
    step: int
    quantum: list
    classical: list
    quantum_tv_from_start: float
    classical_tv_from_start: float
    quantum_support: int
    classical_support: int
    quantum_vs_classical_tv: float


@dataclass(frozen=True)
class SpreadReport:
    source: int
    steps: int
    rows: list = field(default_factory=list)

    def summary(self) -> dict:
        last = self.rows[-1]
        return {
            "final_quantum_tv_from_start": last.quantum_tv_from_start,
            "final_classical_tv_from_start": last.classical_tv_from_start,
            "max_quantum_support": max(r.quantum_support for r in self.rows),
            "max_classical_support": max(r.classical_support for r in self.rows),
            "mean_quantum_tv_from_start": float(np.mean([r.quantum_tv_from_start for r in self.rows])),
            "mean_classical_tv_from_start": float(np.mean([r.classical_tv_from_start for r in self.rows])),
        }

    def to_json(self) -> str:
        doc = {
            "source": self.source,
            "steps": self.steps,
            "rows": [r.__dict__ for r in self.rows],
            "summary": self.summary(),
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_table(self) -> str:
        head = ("step", "q_tv0", "c_tv0", "q_supp", "c_supp", "q_vs_c", "quantum", "classical")
        lines = []
        for r in self.rows:
            lines.append((
                str(r.step),
                f"{r.quantum_tv_from_start:.6f}",
                f"{r.classical_tv_from_start:.6f}",
                str(r.quantum_support),
                str(r.classical_support),
                f"{r.quantum_vs_classical_tv:.6f}",
                " ".join(f"{x:.4f}" for x in r.quantum),
                " ".join(f"{x:.4f}" for x in r.classical),
            ))
        widths = [max(len(h), *(len(l[k]) for l in lines)) for k, h in enumerate(head)]
        fmt = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()
        return "\n".join([fmt(head)] + [fmt(l) for l in lines]) + "\n"


def spread_comparison(
    g: Graph, source: int, t: int, u: WalkOperator | None = None
) -> SpreadReport:
    """Step-by-step quantum occupancy (from ``psi_source``) versus classical
    distribution (from the one-hot at ``source``)."""
    if not 0 <= source < g.node_count:
        raise IndexError(f"source node {source} out of range for {g.node_count} nodes")
    if t < 0:
        raise ValueError("step count must be nonnegative")
    u = walk_operator(g) if u is None else u
    p = transition_matrix(adjacency_matrix(g))
    start = np.zeros(g.node_count)
    start[source] = 1.0
    qtraj = evolve(u, psi_state(u.basis, p, source), t)
    qdist = occupancy_distribution(qtraj.states, u.basis)
    cdist = classical_evolve(p, start, t).distributions
    rows = []
    for k in range(t + 1):
        q, c = qdist[k], cdist[k]
        rows.append(SpreadRow(
            step=k,
            quantum=[float(x) for x in q],
            classical=[float(x) for x in c],
            quantum_tv_from_start=total_variation(q, start),
            classical_tv_from_start=total_variation(c, start),
            quantum_support=int((q > SUPPORT_TOL).sum()),
            classical_support=int((c > SUPPORT_TOL).sum()),
            quantum_vs_classical_tv=total_variation(q, c),
        ))
    return SpreadReport(source=source, steps=t, rows=rows)
