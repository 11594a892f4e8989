"""Numerical checks of the operator algebra for a given graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Graph, adjacency_matrix, transition_matrix
from .walk import (
    DenseCapExceeded,
    Operator,
    arc_basis,
    default_dense_cap,
    grover_reflection,
    projector,
    swap_operator,
    unitarity_deviation,
    walk_operator,
)

LAW_TOL = 1e-10
TRACE_TOL = 1e-9
AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class Law:
    name: str
    deviation: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass(frozen=True)
class CheckReport:
    laws: list
    trace_projector: float
    dense_checked: bool

    @property
    def ok(self) -> bool:
        return all(law.ok for law in self.laws)

    def failures(self) -> list:
        return [law for law in self.laws if not law.ok]

    def lines(self) -> list[str]:
        out = [
            f"{law.name:<24} {law.deviation:.3e}  (tol {law.tolerance:.0e})  {'ok' if law.ok else 'FAIL'}"
            for law in self.laws
        ]
        out.append(f"trace(Pi)                = {self.trace_projector:.12g}")
        if not self.dense_checked:
            out.append("dense backend skipped: arc count above the dense cap")
        return out


def _maxabs(m) -> float:
    if sp.issparse(m):
        m = m.tocoo()
        return float(np.abs(m.data).max()) if m.nnz else 0.0
    m = np.asarray(m)
    return float(np.abs(m).max()) if m.size else 0.0


def _eye(n: int):
    return sp.identity(n, dtype=complex, format="csc")


def check_laws(g: Graph, dense_cap: int | None = None, corrupt: bool = False) -> CheckReport:
    """Measure every operator identity the walk relies on.

    The projector, reflection and swap are checked in sparse form so any
    size works. When the arc count fits under ``dense_cap`` the dense walk
    operator is also built and compared with the sparse one. ``corrupt``
    perturbs one entry of the sparse walk operator as a negative control.
    """
    cap = default_dense_cap() if dense_cap is None else dense_cap
    basis = arc_basis(g)
    p = transition_matrix(adjacency_matrix(g))
    m = len(basis)

    pi = projector(basis, p, sparse=True).matrix
    refl = grover_reflection(Operator(pi, "projector")).matrix
    swap = swap_operator(basis, sparse=True).matrix

    u = walk_operator(g, backend="sparse", check=False)
    if corrupt:
        mat = u.operator.matrix.copy()
        mat.data[0] += 1e-6
        u = type(u)(Operator(mat, "walk"), u.basis, u.backend)
    umat = u.operator.matrix

    laws = [
        Law("unitarity", unitarity_deviation(u.operator), LAW_TOL),
        Law("projector_hermitian", _maxabs(pi - pi.conj().T), LAW_TOL),
        Law("projector_idempotent", _maxabs(pi @ pi - pi), LAW_TOL),
        Law("projector_trace", abs(pi.diagonal().sum().real - g.node_count), TRACE_TOL),
        Law("swap_involution", _maxabs(swap @ swap - _eye(m)), 0.0),
        Law("reflection_involution", _maxabs(refl @ refl - _eye(m)), LAW_TOL),
        Law("walk_equals_reflect_swap", _maxabs(umat - refl @ swap), AGREEMENT_TOL),
    ]

    # matrix-free stepping against the stored matrix, one basis arc at a time
    probe = np.eye(m, dtype=complex)[: min(m, 256)]
    laws.append(Law("kernel_vs_matrix", _maxabs(u.apply(probe) - (umat @ probe.T).T), AGREEMENT_TOL))

    dense_checked = False
    try:
        ud = walk_operator(g, backend="dense", dense_cap=cap, check=False)
    except DenseCapExceeded:
        pass
    else:
        dense_checked = True
        laws.append(Law("dense_unitarity", unitarity_deviation(ud.operator), LAW_TOL))
        laws.append(Law("dense_vs_sparse", _maxabs(ud.operator.matrix - umat.toarray()), AGREEMENT_TOL))

    return CheckReport(laws, float(pi.diagonal().sum().real), dense_checked)
