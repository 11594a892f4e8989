"""Arc basis and the scattering walk operator.

The walk lives on directed arcs ``(i, j)``, two per undirected edge, in
lexicographic ``(tail, head)`` order. One step is

    U = (2 Pi - I) S

where ``S`` reverses every arc and ``Pi`` projects onto the span of the
node lifts ``psi_i = sum_j sqrt(P[i, j]) |i, j>``. Acting on a basis arc this
gives the scattering rule

    |i, j>  ->  (2/d_j - 1) |j, i>  +  (2/d_j) sum_{k != i} |j, k>

which is what the sparse backend is assembled from, directly and without
forming ``Pi``. The dense backend is built the long way (outer products,
reflection, swap) and serves as the cross-check.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.sparse as sp

from ._kernels import kernels
from .graph import Graph, adjacency_matrix, require_valid, transition_matrix

DEFAULT_DENSE_CAP = 4096
UNITARITY_TOL = 1e-10

Backend = Literal["dense", "sparse"]
KINDS = ("projector", "reflection", "swap", "walk")


class DenseCapExceeded(ValueError):
    """Dense backend requested for more arcs than the configured cap."""

    def __init__(self, arc_count: int, cap: int):
        self.arc_count = arc_count
        self.cap = cap
        super().__init__(
            f"dense backend refused: {arc_count} arcs exceeds the cap of {cap} "
            f"(raise it with --dense-cap or QWALK_DENSE_CAP)"
        )


class UnitarityError(ArithmeticError):
    pass


def default_dense_cap() -> int:
    raw = os.environ.get("QWALK_DENSE_CAP")
    if raw is None or raw == "":
        return DEFAULT_DENSE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"QWALK_DENSE_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError("QWALK_DENSE_CAP must be nonnegative")
    return cap


@dataclass(frozen=True, eq=False)
class ArcBasis:
    """Ordered directed arcs of a graph plus index tables.

    Attributes
    ----------
    arcs : tuple of (int, int)
        Lexicographically sorted ``(tail, head)`` pairs.
    arc_index : dict
        ``(tail, head) -> position``.
    out_arcs, in_arcs : tuple of tuple of int
        Arc positions leaving / entering each node.
    offsets : ndarray
        ``out_arcs[i] == range(offsets[i], offsets[i + 1])``.
    reverse : ndarray
        ``reverse[a]`` is the position of the reversed arc.
    """

    node_count: int
    arcs: tuple
    arc_index: dict
    out_arcs: tuple
    in_arcs: tuple
    tails: np.ndarray
    heads: np.ndarray
    offsets: np.ndarray
    reverse: np.ndarray
    degrees: np.ndarray

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def weight(self) -> np.ndarray:
        """``2 / deg`` per node, the scattering weight."""
        return 2.0 / self.degrees


def arc_basis(g: Graph) -> ArcBasis:
    require_valid(g)
    n = g.node_count
    arcs = sorted([(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges])
    index = {a: k for k, a in enumerate(arcs)}
    tails = np.array([a[0] for a in arcs], dtype=np.intp)
    heads = np.array([a[1] for a in arcs], dtype=np.intp)
    deg = np.bincount(tails, minlength=n).astype(np.intp)
    offsets = np.zeros(n + 1, dtype=np.intp)
    np.cumsum(deg, out=offsets[1:])
    reverse = np.array([index[(j, i)] for i, j in arcs], dtype=np.intp)
    out_arcs = tuple(tuple(range(offsets[i], offsets[i + 1])) for i in range(n))
    in_lists: list[list[int]] = [[] for _ in range(n)]
    for k, (_, j) in enumerate(arcs):
        in_lists[j].append(k)
    for arr in (tails, heads, offsets, reverse, deg):
        arr.setflags(write=False)
    return ArcBasis(
        node_count=n,
        arcs=tuple(arcs),
        arc_index=index,
        out_arcs=out_arcs,
        in_arcs=tuple(tuple(x) for x in in_lists),
        tails=tails,
        heads=heads,
        offsets=offsets,
        reverse=reverse,
        degrees=deg,
    )


def node_state(i: int, n: int) -> np.ndarray:
    """One-hot complex vector for node ``i`` of ``n``."""
    if not 0 <= i < n:
        raise IndexError(f"node {i} out of range for {n} nodes")
    v = np.zeros(n, dtype=complex)
    v[i] = 1.0
    return v


def qubit_count(n: int) -> int:
    """Fewest qubits whose basis states can label ``n`` nodes."""
    if n < 1:
        raise ValueError("node count must be at least 1")
    return (n - 1).bit_length()


def phi_coefficients(p: np.ndarray, i: int) -> dict[tuple[int, int], float]:
    """Square-root transition amplitudes ``{(i, j): sqrt(P[i, j])}`` over neighbours ``j``."""
    p = np.asarray(p)
    if not 0 <= i < p.shape[0]:
        raise IndexError(f"node {i} out of range for {p.shape[0]} nodes")
    return {(i, int(j)): float(np.sqrt(p[i, j])) for j in np.flatnonzero(p[i] > 0)}


def psi_state(basis: ArcBasis, p: np.ndarray, i: int) -> np.ndarray:
    """Lift of node ``i`` into the arc space: ``sqrt(P[i, j])`` on each arc ``(i, j)``."""
    if not 0 <= i < basis.node_count:
        raise IndexError(f"node {i} out of range for {basis.node_count} nodes")
    p = np.asarray(p)
    v = np.zeros(len(basis), dtype=complex)
    block = slice(basis.offsets[i], basis.offsets[i + 1])
    v[block] = np.sqrt(p[i, basis.heads[block]])
    return v


@dataclass(frozen=True, eq=False)
class Operator:
    """A matrix on the arc space tagged with what it is supposed to be."""

    matrix: np.ndarray | sp.spmatrix
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray() if self.is_sparse else np.asarray(self.matrix)


def _psi_blocks(basis: ArcBasis, p: np.ndarray):
    p = np.asarray(p)
    for i in range(basis.node_count):
        lo, hi = basis.offsets[i], basis.offsets[i + 1]
        yield lo, hi, np.sqrt(p[i, basis.heads[lo:hi]])


def projector(basis: ArcBasis, p: np.ndarray, sparse: bool = False) -> Operator:
    """``Pi = sum_i |psi_i><psi_i|`` on the arc space."""
    m = len(basis)
    if not sparse:
        pi = np.zeros((m, m), dtype=complex)
        for i in range(basis.node_count):
            psi = psi_state(basis, p, i)
            pi += np.outer(psi, psi.conj())
        return Operator(pi, "projector")
    rows, cols, vals = [], [], []
    for lo, hi, amp in _psi_blocks(basis, p):
        idx = np.arange(lo, hi)
        rows.append(np.repeat(idx, hi - lo))
        cols.append(np.tile(idx, hi - lo))
        vals.append(np.outer(amp, amp).ravel())
    mat = sp.csc_matrix(
        (np.concatenate(vals).astype(complex), (np.concatenate(rows), np.concatenate(cols))),
        shape=(m, m),
    )
    return Operator(mat, "projector")


def grover_reflection(pi: Operator) -> Operator:
    """``G = 2 Pi - I``."""
    if pi.kind != "projector":
        raise ValueError(f"expected a projector, got kind {pi.kind!r}")
    if pi.is_sparse:
        return Operator(sp.csc_matrix(2 * pi.matrix - sp.identity(pi.dim, dtype=complex, format="csc")), "reflection")
    return Operator(2 * pi.matrix - np.eye(pi.dim, dtype=complex), "reflection")


def swap_operator(basis: ArcBasis, sparse: bool = False) -> Operator:
    """Permutation sending arc ``(i, j)`` to ``(j, i)``."""
    m = len(basis)
    cols = np.arange(m)
    if sparse:
        mat = sp.csc_matrix((np.ones(m, dtype=complex), (basis.reverse, cols)), shape=(m, m))
        return Operator(mat, "swap")
    s = np.zeros((m, m), dtype=complex)
    s[basis.reverse, cols] = 1.0
    return Operator(s, "swap")


def scattering_matrix(basis: ArcBasis) -> sp.csc_matrix:
    """Walk operator assembled entry by entry from the scattering rule.

    Column ``a = (i, j)`` holds ``2/d_j`` on every arc leaving ``j``, less one
    on the return arc ``(j, i)``. Exactly ``sum_j d_j**2`` entries are stored;
    a degree-2 return coefficient is kept as an explicit zero.
    """
    rows, cols, vals = [], [], []
    w = basis.weight
    for a in range(len(basis)):
        j = basis.heads[a]
        lo, hi = basis.offsets[j], basis.offsets[j + 1]
        block = np.arange(lo, hi)
        col = np.full(hi - lo, w[j])
        col[block == basis.reverse[a]] -= 1.0
        rows.append(block)
        cols.append(np.full(hi - lo, a))
        vals.append(col)
    m = len(basis)
    coo = sp.coo_matrix(
        (np.concatenate(vals).astype(complex), (np.concatenate(rows), np.concatenate(cols))),
        shape=(m, m),
    )
    return coo.tocsc()


@dataclass(frozen=True, eq=False)
class WalkOperator:
    """One step of the walk together with its arc basis.

    The dense backend multiplies by the stored matrix. The sparse backend
    keeps the scattering matrix for inspection and export but steps with the
    O(arcs) kernel in :mod:`qwalk._kernels`.
    """

    operator: Operator
    basis: ArcBasis
    backend: str

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check_dim(self, x: np.ndarray) -> None:
        if x.shape[-1] != self.dim:
            raise ValueError(f"state has dimension {x.shape[-1]}, operator acts on {self.dim} arcs")

    def apply(self, x: np.ndarray) -> np.ndarray:
        """``U x`` for a state, or row-wise for a 2-D stack of states."""
        x = np.ascontiguousarray(x, dtype=complex)
        self._check_dim(x)
        if self.backend == "dense":
            return x @ self.operator.matrix.T
        b = self.basis
        out = np.empty_like(x)
        if x.ndim == 1:
            kernels.step(x, out, b.reverse, b.offsets, b.weight)
        else:
            kernels.step_batch(x, out, b.reverse, b.offsets, b.weight)
        return out

    def apply_adjoint(self, x: np.ndarray) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=complex)
        self._check_dim(x)
        if x.ndim != 1:
            return np.stack([self.apply_adjoint(row) for row in x])
        if self.backend == "dense":
            return self.operator.matrix.conj().T @ x
        b = self.basis
        out = np.empty_like(x)
        kernels.adjoint_step(x, out, b.reverse, b.offsets, b.weight)
        return out


def unitarity_deviation(op: Operator) -> float:
    """``max |U^dagger U - I|``."""
    m = op.matrix
    if op.is_sparse:
        d = (m.conj().T @ m - sp.identity(op.dim, dtype=complex, format="csc")).tocoo()
        return float(np.abs(d.data).max()) if d.nnz else 0.0
    return float(np.abs(m.conj().T @ m - np.eye(op.dim)).max())


def walk_operator(
    g: Graph,
    backend: Backend = "sparse",
    dense_cap: int | None = None,
    check: bool = True,
) -> WalkOperator:
    """Build the walk operator for ``g``.

    Parameters
    ----------
    backend : {"sparse", "dense"}
        ``"dense"`` forms ``(2 Pi - I) S`` from outer products and is refused
        above ``dense_cap`` arcs (default :func:`default_dense_cap`).
    check : bool
        Verify unitarity to ``1e-10`` after construction.
    """
    basis = arc_basis(g)
    if backend == "sparse":
        op = Operator(scattering_matrix(basis), "walk")
    elif backend == "dense":
        cap = default_dense_cap() if dense_cap is None else dense_cap
        if len(basis) > cap:
            raise DenseCapExceeded(len(basis), cap)
        p = transition_matrix(adjacency_matrix(g))
        refl = grover_reflection(projector(basis, p))
        swap = swap_operator(basis)
        op = Operator(refl.matrix @ swap.matrix, "walk")
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if check:
        dev = unitarity_deviation(op)
        if dev > UNITARITY_TOL:
            raise UnitarityError(f"walk operator is not unitary: max |U^dagger U - I| = {dev:.3e}")
    return WalkOperator(op, basis, backend)


def apply_step(u: WalkOperator, s: np.ndarray) -> np.ndarray:
    return u.apply(s)


def pair_space_operator(g: Graph) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Dense walk operator on all ``N**2`` ordered pairs ``(i, j)``, index ``i*N + j``.

    Reference oracle: built with Kronecker products over the full pair
    space, so amplitudes on non-arcs can be watched directly.
    """
    n = g.node_count
    p = transition_matrix(adjacency_matrix(g))
    pi = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        psi = np.kron(np.eye(n)[i], np.sqrt(p[i]))
        pi += np.outer(psi, psi)
    swap = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            swap[j * n + i, i * n + j] = 1.0
    u = (2 * pi - np.eye(n * n)) @ swap
    return u, [(i, j) for i in range(n) for j in range(n)]


def operator_triplets(op: Operator) -> list[tuple[int, int, float, float]]:
    """``(row, col, re, im)`` sorted by column then row."""
    coo = sp.coo_matrix(op.matrix) if not op.is_sparse else op.matrix.tocoo()
    order = np.lexsort((coo.row, coo.col))
    return [
        (int(coo.row[k]), int(coo.col[k]), float(coo.data[k].real), float(coo.data[k].imag))
        for k in order
    ]


def dump_operator(op: Operator, basis: ArcBasis, fp=None) -> str:
    """Serialise to JSON with ``arcs`` and ``triplets``; also writes to ``fp`` if given."""
    doc = {
        "kind": op.kind,
        "arcs": [list(a) for a in basis.arcs],
        "triplets": [list(t) for t in operator_triplets(op)],
    }
    text = json.dumps(doc)
    if fp is not None:
        fp.write(text)
    return text


def load_operator(text: str) -> tuple[Operator, list[tuple[int, int]]]:
    doc = json.loads(text)
    arcs = [tuple(a) for a in doc["arcs"]]
    m = len(arcs)
    trip = doc["triplets"]
    if trip:
        r, c, re, im = (np.array(x) for x in zip(*trip))
    else:
        r = c = np.zeros(0, dtype=int)
        re = im = np.zeros(0)
    mat = sp.csc_matrix((re + 1j * im, (r.astype(int), c.astype(int))), shape=(m, m))
    return Operator(mat, doc.get("kind", "walk")), arcs
