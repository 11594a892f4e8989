"""Scattering (Szegedy-type) discrete-time quantum walks on graphs, simulated
classically, and node embeddings read off the evolved states."""

from ._kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .baseline import classical_evolve, classical_step, spread_comparison
from .embedding import EmbeddingMatrix, embed_all, export, load_embedding, node_embedding
from .evolution import Trajectory, evolve, initial_global_state, occupancy_distribution
from .graph import (
    Graph,
    GraphError,
    ParseError,
    adjacency_matrix,
    degrees,
    parse_edge_list,
    transition_matrix,
    validate,
)
from .walk import (
    ArcBasis,
    DenseCapExceeded,
    Operator,
    WalkOperator,
    apply_step,
    arc_basis,
    grover_reflection,
    node_state,
    phi_coefficients,
    projector,
    psi_state,
    qubit_count,
    swap_operator,
    walk_operator,
)

__version__ = "0.1.0"
