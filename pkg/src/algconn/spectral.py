"""Algebraic connectivity, Fiedler vectors and related spectral quantities.

The dense route (:func:`fiedler`) is the reference for everything else. It
reduces the Laplacian to tridiagonal form, finds all eigenvalues by QL,
recovers the Fiedler vector by inverse iteration deflated against the
all-ones vector, and finally recomputes ``mu`` as the edge-sum Rayleigh
quotient of that vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .config import TOLERANCES
from .eigen import EigenError, second_eigenpair
from .families import GammaSpec, gamma_d
from .graph import (
    CellPartition,
    DisconnectedGraphError,
    Graph,
    GraphError,
    is_connected,
    is_equitable,
)

__all__ = [
    "SymMatrix",
    "FiedlerResult",
    "QuotientInapplicable",
    "StructureReport",
    "laplacian",
    "normalized_laplacian",
    "laplacian_apply",
    "fiedler",
    "rayleigh",
    "deflated_bound",
    "test_vector",
    "test_vector_bound",
    "quotient_matrix",
    "quotient_mu",
    "relaxation_time",
    "fiedler_structure_check",
]


class QuotientInapplicable(GraphError):
    """The quotient eigenvalue is not the algebraic connectivity of the graph."""


class SymMatrix:
    """Dense, exactly symmetric float64 matrix."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        A = np.array(entries, dtype=np.float64)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {A.shape}")
        if not np.array_equal(A, A.T):
            raise ValueError("matrix is not exactly symmetric")
        A.flags.writeable = False
        self.entries = A

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"SymMatrix(order={self.order})"


@dataclass
class FiedlerResult:
    mu: float
    vector: np.ndarray = field(repr=False)
    residual: float
    method: str
    orthogonality_defect: float
    lambda3: float | None = None

    @property
    def n(self) -> int:
        return self.vector.shape[0]

    def violations(self, max_degree: int) -> list[str]:
        tol = TOLERANCES
        out = []
        if abs(np.linalg.norm(self.vector) - 1.0) > tol.unit_norm:
            out.append("vector is not unit length")
        if self.residual > tol.residual_per_degree * (1 + max_degree):
            out.append(f"residual {self.residual:.3e} too large")
        if self.orthogonality_defect > tol.orthogonality:
            out.append(f"orthogonality defect {self.orthogonality_defect:.3e} too large")
        return out

    def csv_row(self) -> str:
        """``n,mu,residual,method,orth_defect`` with 17 significant digits."""
        return ",".join([
            str(self.n),
            format(self.mu, ".17g"),
            format(self.residual, ".17g"),
            self.method,
            format(self.orthogonality_defect, ".17g"),
        ])

    CSV_HEADER = "n,mu,residual,method,orth_defect"


# -- matrices -----------------------------------------------------------------

def laplacian(G: Graph) -> SymMatrix:
    """``L = D - A`` as a dense matrix."""
    L = np.zeros((G.n, G.n))
    e = G.edge_array()
    L[e[:, 0], e[:, 1]] = -1.0
    L[e[:, 1], e[:, 0]] = -1.0
    L[np.arange(G.n), np.arange(G.n)] = G.degrees()
    return SymMatrix(L)


def normalized_laplacian(G: Graph) -> SymMatrix:
    """``I - D^{-1/2} A D^{-1/2}``; requires every degree to be positive."""
    deg = G.degrees().astype(float)
    if G.n and deg.min() == 0:
        raise DisconnectedGraphError("graph has an isolated vertex")
    L = np.eye(G.n)
    e = G.edge_array()
    w = -1.0 / np.sqrt(deg[e[:, 0]] * deg[e[:, 1]])
    L[e[:, 0], e[:, 1]] = w
    L[e[:, 1], e[:, 0]] = w
    return SymMatrix(L)


def laplacian_apply(G: Graph, x: np.ndarray) -> np.ndarray:
    """``L @ x`` computed edge by edge."""
    x = np.asarray(x, dtype=float)
    e = G.edge_array()
    diff = x[e[:, 0]] - x[e[:, 1]]
    out = np.zeros(G.n)
    np.add.at(out, e[:, 0], diff)
    np.subtract.at(out, e[:, 1], diff)
    return out


def rayleigh(G: Graph, x) -> float:
    """``sum over edges (x_i - x_j)^2 / |x|^2``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({G.n},)")
    nrm = x @ x
    if nrm == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    e = G.edge_array()
    diff = x[e[:, 0]] - x[e[:, 1]]
    return float(diff @ diff / nrm)


def deflated_bound(G: Graph, x) -> float:
    """Rayleigh quotient of ``x`` with its mean removed: an upper bound on ``mu``."""
    x = np.asarray(x, dtype=float)
    y = x - x.mean()
    scale = np.abs(x).max() if x.size else 0.0
    if scale == 0.0 or np.abs(y).max() <= 1e-14 * scale:
        raise ValueError("vector is a multiple of the all-ones vector")
    return rayleigh(G, y)


def _finish(G: Graph, x: np.ndarray, method: str, lam3: float | None) -> FiedlerResult:
    x = x - x.mean()
    x /= np.linalg.norm(x)
    mu = rayleigh(G, x)
    res = float(np.linalg.norm(laplacian_apply(G, x) - mu * x))
    orth = abs(x.sum()) / np.sqrt(G.n)
    return FiedlerResult(mu, x, res, method, orth, lam3)


def _require_connected(G: Graph) -> None:
    if G.n < 2:
        raise GraphError("algebraic connectivity needs at least two vertices")
    if not is_connected(G):
        raise DisconnectedGraphError("graph is disconnected: mu = 0, no Fiedler vector")


def fiedler(G: Graph, method: str = "dense", partition: CellPartition | None = None) -> FiedlerResult:
    """Algebraic connectivity and a unit Fiedler vector.

    ``method="quotient"`` needs an equitable ``partition`` and defers to
    :func:`quotient_mu`.
    """
    if method == "quotient":
        if partition is None:
            raise ValueError("quotient method needs a cell partition")
        return quotient_mu(G, partition)
    if method != "dense":
        raise ValueError(f"unknown method {method!r}")
    _require_connected(G)
    _, lam3, x = second_eigenpair(laplacian(G), np.ones(G.n))
    res = _finish(G, x, "dense", lam3)
    bad = res.violations(G.max_degree())
    if bad:
        raise EigenError("dense Fiedler computation failed: " + "; ".join(bad))
    return res


# -- test vectors ---------------------------------------------------------------

def test_vector(spec: GammaSpec) -> np.ndarray:
    """Cosine test vector on the cells of ``Gamma(spec)``.

    Block ``i`` (cells ``3i-2, 3i-1, 3i``) gets ``x_i`` on its first cell and
    the weighted averages of ``x_i`` and ``x_{i+1}`` on the other two, with
    ``x_{m+1} = x_m``.
    """
    m = sum(spec.ms)
    i = np.arange(1, m + 1)
    xs = np.sqrt(2.0 / m) * np.cos((2 * i - 1) * np.pi / (2 * m))
    xs = np.append(xs, xs[-1])
    blocks = [t for t, mi in zip(spec.triples, spec.ms) for _ in range(mi)]
    vals = []
    for k, (a, b, c) in enumerate(blocks):
        s = a + b + c
        x0, x1 = xs[k], xs[k + 1]
        vals += [x0] * a
        vals += [((a + b) * x0 + c * x1) / s] * b
        vals += [(b * x0 + (a + c) * x1) / s] * c
    return np.array(vals)


def test_vector_bound(spec: GammaSpec) -> float:
    """Deflated Rayleigh bound of the cosine test vector on ``Gamma(spec)``.

    With a single block the cosine vector vanishes, so the cosine profile of
    the three-vertex path is placed on the three cells instead.
    """
    G, P = gamma_d(spec)
    y = test_vector(spec)
    if np.abs(y - y.mean()).max() <= 1e-14:
        k = len(P)
        prof = np.cos((2 * np.arange(1, k + 1) - 1) * np.pi / (2 * k))
        y = np.concatenate([[prof[j]] * len(c) for j, c in enumerate(P.cells)])
    return deflated_bound(G, y)


# -- quotient route -----------------------------------------------------------

def quotient_matrix(G: Graph, partition: CellPartition) -> tuple[np.ndarray, np.ndarray]:
    """Symmetrized quotient Laplacian and the cell sizes.

    Entry ``(i, j)`` is ``-sqrt(q_ij q_ji)``, which equals
    ``-q_ij sqrt(s_i / s_j)`` and is symmetric by construction.
    """
    chk = is_equitable(G, partition)
    if not chk.ok:
        u, v, j = chk.witness
        raise GraphError(f"partition is not equitable: vertices {u} and {v} differ on cell {j}")
    Q = chk.quotient.astype(float)
    sizes = np.array(partition.sizes(), dtype=float)
    M = -np.sqrt(Q * Q.T)
    np.fill_diagonal(M, Q.sum(axis=1) - np.diag(Q))
    return M, sizes


def _count_below(G: Graph, sigma: float) -> int:
    """Number of Laplacian eigenvalues below ``sigma`` (Sylvester inertia).

    Bunch-Kaufman ``LDL^T`` keeps the count reliable when ``sigma`` sits
    close to an eigenvalue, where unpivoted elimination loses it.
    """
    _, D, _ = sla.ldl(np.asarray(laplacian(G)) - sigma * np.eye(G.n), lower=True)
    count, i, n = 0, 0, G.n
    while i < n:
        if i + 1 < n and D[i + 1, i] != 0.0:
            count += int((np.linalg.eigvalsh(D[i:i + 2, i:i + 2]) < 0).sum())
            i += 2
        else:
            count += int(D[i, i] < 0)
            i += 1
    return count


def quotient_mu(G: Graph, partition: CellPartition, certify: bool = True) -> FiedlerResult:
    """Algebraic connectivity through an equitable partition.

    The second eigenvector of the quotient is lifted to a cell-constant
    vector. The lift is always an eigenvector of ``L``; whether its
    eigenvalue is ``mu(G)`` is certified by an inertia count of
    ``L - sigma I`` just below it. Failure raises
    :class:`QuotientInapplicable`.
    """
    _require_connected(G)
    if len(partition) < 2:
        raise QuotientInapplicable("quotient inapplicable: a single cell carries no Fiedler vector")
    M, sizes = quotient_matrix(G, partition)
    lam, _, z = second_eigenpair(M, np.sqrt(sizes))
    cell_vals = z / np.sqrt(sizes)
    x = np.empty(G.n)
    for val, cell in zip(cell_vals, partition.cells):
        x[list(cell)] = val
    res = _finish(G, x, "quotient", None)
    bad = res.violations(G.max_degree())
    if bad:
        raise QuotientInapplicable("quotient inapplicable: " + "; ".join(bad))
    if certify:
        gap = min(1e-7 * res.mu, 0.5 * TOLERANCES.quotient_agreement)
        below = _count_below(G, res.mu - gap)
        if below != 1:
            raise QuotientInapplicable(
                f"quotient inapplicable: {below - 1} Laplacian eigenvalues lie below the "
                f"quotient value {res.mu:.6g}")
    return res


# -- relaxation time ------------------------------------------------------------

def relaxation_time(G: Graph) -> float:
    """``1 / (1 - eta_2)`` for the simple random walk on ``G``."""
    _require_connected(G)
    deg = G.degrees().astype(float)
    _, _, x = second_eigenpair(normalized_laplacian(G), np.sqrt(deg))
    e = G.edge_array()
    y = x / np.sqrt(deg)
    diff = y[e[:, 0]] - y[e[:, 1]]
    gap = float(diff @ diff / (x @ x))
    return 1.0 / gap


# -- structure checks -------------------------------------------------------------

@dataclass
class StructureReport:
    sign_sets_connected: bool
    descent: bool
    cells: bool | None  # None when the check was skipped
    violations: list[str]

    @property
    def ok(self) -> bool:
        return self.sign_sets_connected and self.descent and self.cells is not False


def _induced_connected(G: Graph, mask: np.ndarray) -> bool:
    verts = np.nonzero(mask)[0]
    if verts.size == 0:
        return True
    seen = {int(verts[0])}
    stack = [int(verts[0])]
    while stack:
        u = stack.pop()
        for w in G.adj[u]:
            if mask[w] and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == verts.size


def fiedler_structure_check(
    G: Graph, result: FiedlerResult, partition: CellPartition | None = None
) -> StructureReport:
    x = np.asarray(result.vector, dtype=float)
    scale = np.abs(x).max()
    eps = TOLERANCES.sign_eps * scale
    bad: list[str] = []

    connected = True
    for name, mask in (("x >= -eps", x >= -eps), ("x <= eps", x <= eps)):
        if not _induced_connected(G, mask):
            connected = False
            bad.append(f"vertex set {name} does not induce a connected subgraph")

    descent = True
    for v in np.nonzero(x > eps)[0]:
        if not any(x[w] < x[v] - eps for w in G.adj[v]):
            descent = False
            bad.append(f"vertex {v} has no neighbour with a smaller value")
            break

    cells = None
    degenerate = (
        result.lambda3 is not None
        and (result.lambda3 - result.mu) <= TOLERANCES.degenerate_gap * result.mu
    )
    if partition is not None and not degenerate:
        cells = True
        ctol = TOLERANCES.cell_constancy * scale
        means = []
        for i, cell in enumerate(partition.cells):
            vals = x[list(cell)]
            if vals.max() - vals.min() > ctol:
                cells = False
                bad.append(f"cell {i} is not constant")
            means.append(vals.mean())
        steps = np.diff(means)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            cells = False
            bad.append("cell values are not strictly monotone")
        signs = [np.sign(v) for v in means if abs(v) > eps]
        changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
        if changes != 1:
            cells = False
            bad.append(f"cell values change sign {changes} times")
    return StructureReport(connected, descent, cells, bad)
