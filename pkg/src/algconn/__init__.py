"""Algebraic connectivity of graphs with large diameter.

Build graphs from sequential-join notation, compute Laplacian spectra with
an in-house dense eigensolver, and check the extremal claims numerically.
"""

from .config import TOLERANCES, Tolerances
from .dsl import build, parse, to_string
from .families import (
    GammaSpec,
    block_path,
    counterexample_pair,
    g_abc,
    gamma_d,
    max_diameter,
    scaling_family,
    table1,
)
from .graph import (
    CellPartition,
    Graph,
    block_decomposition,
    build_graph,
    diameter,
    is_equitable,
    read_graph,
    write_graph,
)
from .spectral import (
    FiedlerResult,
    deflated_bound,
    fiedler,
    laplacian,
    quotient_mu,
    rayleigh,
    relaxation_time,
    test_vector_bound,
)

__version__ = "0.1.0"

__all__ = [
    "TOLERANCES",
    "Tolerances",
    "build",
    "parse",
    "to_string",
    "GammaSpec",
    "block_path",
    "counterexample_pair",
    "g_abc",
    "gamma_d",
    "max_diameter",
    "scaling_family",
    "table1",
    "CellPartition",
    "Graph",
    "block_decomposition",
    "build_graph",
    "diameter",
    "is_equitable",
    "read_graph",
    "write_graph",
    "FiedlerResult",
    "deflated_bound",
    "fiedler",
    "laplacian",
    "quotient_mu",
    "rayleigh",
    "relaxation_time",
    "test_vector_bound",
    "__version__",
]
