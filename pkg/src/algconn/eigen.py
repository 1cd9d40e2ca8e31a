"""Dense symmetric eigensolver.

Pipeline: blocked Householder reduction to tridiagonal form, implicit-shift
QL on the tridiagonal, and (for single eigenpairs) inverse iteration on the
tridiagonal followed by back-transformation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .config import TOLERANCES

__all__ = [
    "EigenError",
    "Tridiagonal",
    "tridiagonalize",
    "tridiagonal_eigenvalues",
    "tridiagonal_eigh",
    "tridiagonal_inverse_iteration",
    "eigen_full",
    "eigenvalues",
    "second_eigenpair",
]

_EPS = np.finfo(float).eps


class EigenError(ArithmeticError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass
class Tridiagonal:
    """``A = Q T Q^T`` with ``T`` given by ``diag`` and ``offdiag``.

    ``Q`` is kept implicitly as Householder reflectors ``(start, v, beta)``;
    reflector ``k`` acts on rows ``start:`` as ``I - beta v v^T``.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    reflectors: list

    @property
    def n(self) -> int:
        return self.diag.shape[0]

    def apply_q(self, z: np.ndarray) -> np.ndarray:
        """``Q @ z`` for a vector or a matrix with ``n`` rows."""
        x = np.array(z, dtype=float)
        for s, v, beta in reversed(self.reflectors):
            if beta:
                x[s:] -= beta * np.multiply.outer(v, v @ x[s:])
        return x

    def apply_qt(self, y: np.ndarray) -> np.ndarray:
        """``Q.T @ y``."""
        x = np.array(y, dtype=float)
        for s, v, beta in self.reflectors:
            if beta:
                x[s:] -= beta * np.multiply.outer(v, v @ x[s:])
        return x


def tridiagonalize(A: np.ndarray, block: int = 32) -> Tridiagonal:
    """Blocked Householder reduction of a symmetric matrix.

    Panels of ``block`` columns are reduced with the rank-2 updates
    accumulated in ``V`` and ``W``; the trailing matrix is then updated once
    per panel with ``A -= V W^T + W V^T``.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    d = np.empty(n)
    e = np.zeros(max(n - 1, 0))
    refl = []
    k = 0
    while k < n - 2:
        b = min(block, n - 2 - k)
        m = n - k - 1
        V = np.zeros((m, b))
        W = np.zeros((m, b))
        for j in range(b):
            c = k + j
            col = A[c + 1:, c].copy()
            diag = A[c, c]
            if j:
                col -= V[j:, :j] @ W[j - 1, :j] + W[j:, :j] @ V[j - 1, :j]
                diag -= 2.0 * (V[j - 1, :j] @ W[j - 1, :j])
            norm = np.linalg.norm(col)
            alpha = -np.copysign(norm, col[0])
            v = col
            v[0] -= alpha
            vn = v @ v
            d[c] = diag
            e[c] = alpha
            beta = 0.0 if vn == 0.0 else 2.0 / vn
            p = A[c + 1:, c + 1:] @ v
            if j:
                p -= V[j:, :j] @ (W[j:, :j].T @ v) + W[j:, :j] @ (V[j:, :j].T @ v)
            p *= beta
            w = p - (0.5 * beta * (p @ v)) * v
            V[j:, j] = v
            W[j:, j] = w
            refl.append((c + 1, v, beta))
        Vt = V[b - 1:, :]
        Wt = W[b - 1:, :]
        A[k + b:, k + b:] -= Vt @ Wt.T + Wt @ Vt.T
        k += b
    if n >= 2:
        d[n - 2] = A[n - 2, n - 2]
        e[n - 2] = A[n - 1, n - 2]
    if n >= 1:
        d[n - 1] = A[n - 1, n - 1]
    return Tridiagonal(d, e, refl)


# -- QL kernels -------------------------------------------------------------

@njit(cache=True)
def _ql(d, e, z, want_vectors, max_iter):
    """Implicit-shift QL in place. ``e[i]`` couples ``i`` and ``i+1``; ``e[n-1]`` is scratch.

    Rows of ``z`` are rotated, so ``z`` ends up holding eigenvectors as rows.
    Returns -1 on success or the index that failed to converge.
    """
    n = d.shape[0]
    eps = 2.220446049250313e-16
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                return l
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            early = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    early = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_vectors:
                    for k in range(z.shape[1]):
                        f = z[i + 1, k]
                        z[i + 1, k] = s * z[i, k] + c * f
                        z[i, k] = c * z[i, k] - s * f
                i -= 1
            if early:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def _run_ql(diag, offdiag, want_vectors):
    n = diag.shape[0]
    d = np.array(diag, dtype=float)
    e = np.zeros(n)
    e[: n - 1] = offdiag[: n - 1]
    z = np.eye(n) if want_vectors else np.zeros((1, 1))
    bad = _ql(d, e, z, want_vectors, TOLERANCES.ql_sweeps)
    if bad >= 0:
        raise EigenError(
            f"QL iteration did not converge for eigenvalue index {bad} "
            f"after {TOLERANCES.ql_sweeps} sweeps", bad)
    return d, z


def tridiagonal_eigenvalues(diag: np.ndarray, offdiag: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending."""
    d, _ = _run_ql(diag, offdiag, False)
    return np.sort(d)


def tridiagonal_eigh(diag: np.ndarray, offdiag: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors (as columns) of a tridiagonal."""
    d, z = _run_ql(diag, offdiag, True)
    order = np.argsort(d, kind="stable")
    return d[order], z[order].T.copy()


# -- inverse iteration ------------------------------------------------------

@njit(cache=True)
def _tri_factor(diag, offdiag, sigma):
    """LU with partial pivoting of ``T - sigma I`` (same layout as LAPACK gttrf)."""
    n = diag.shape[0]
    dd = diag - sigma
    dl = offdiag.copy()
    du = offdiag.copy()
    du2 = np.zeros(max(n - 2, 0))
    piv = np.zeros(max(n - 1, 0), dtype=np.int8)
    scale = 0.0
    for i in range(n):
        t = abs(dd[i])
        if i < n - 1:
            t += abs(offdiag[i])
        if i > 0:
            t += abs(offdiag[i - 1])
        if t > scale:
            scale = t
    tiny = 2.220446049250313e-16 * max(scale, 1e-300)
    for i in range(n - 1):
        if abs(dd[i]) >= abs(dl[i]):
            if dd[i] == 0.0:
                dd[i] = tiny
            fact = dl[i] / dd[i]
            dl[i] = fact
            dd[i + 1] -= fact * du[i]
        else:
            fact = dd[i] / dl[i]
            dd[i] = dl[i]
            dl[i] = fact
            temp = du[i]
            du[i] = dd[i + 1]
            dd[i + 1] = temp - fact * dd[i + 1]
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
            piv[i] = 1
    if n > 0 and dd[n - 1] == 0.0:
        dd[n - 1] = tiny
    return dl, dd, du, du2, piv


@njit(cache=True)
def _tri_solve(dl, dd, du, du2, piv, b):
    n = dd.shape[0]
    for i in range(n - 1):
        if piv[i] == 0:
            b[i + 1] -= dl[i] * b[i]
        else:
            temp = b[i]
            b[i] = b[i + 1]
            b[i + 1] = temp - dl[i] * b[i]
    b[n - 1] /= dd[n - 1]
    if n > 1:
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2]
    for i in range(n - 3, -1, -1):
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i]


@njit(cache=True)
def _inverse_iteration(diag, offdiag, sigma, U, x, max_iter, tol):
    dl, dd, du, du2, piv = _tri_factor(diag, offdiag, sigma)
    k = U.shape[0]
    for j in range(k):
        x -= (U[j] @ x) * U[j]
    x /= np.sqrt(x @ x)
    for it in range(1, max_iter + 1):
        y = x.copy()
        _tri_solve(dl, dd, du, du2, piv, y)
        for j in range(k):
            y -= (U[j] @ y) * U[j]
        y /= np.sqrt(y @ y)
        if y @ x < 0.0:
            y = -y
        diff = np.sqrt(((y - x) ** 2).sum())
        x = y
        if diff <= tol and it >= 2:
            return x, it
    return x, -1


def tridiagonal_inverse_iteration(
    diag: np.ndarray,
    offdiag: np.ndarray,
    sigma: float,
    deflate: np.ndarray | None = None,
    start: np.ndarray | None = None,
    seed: int = 0,
) -> np.ndarray:
    """Unit eigenvector of the tridiagonal for the eigenvalue nearest ``sigma``.

    Rows of ``deflate`` (orthonormal) are projected out at every step.
    """
    n = diag.shape[0]
    U = np.zeros((0, n)) if deflate is None else np.atleast_2d(np.asarray(deflate, dtype=float))
    x = np.random.default_rng(seed).standard_normal(n) if start is None else np.array(start, float)
    # hitting the cap is not fatal: with clustered eigenvalues the iterate
    # stagnates at round-off level, and callers check the residual anyway
    vec, _ = _inverse_iteration(
        np.asarray(diag, float), np.asarray(offdiag, float), float(sigma), U, x,
        TOLERANCES.inverse_iteration_cap, 1e3 * _EPS * np.sqrt(n))
    return vec


# -- public drivers ---------------------------------------------------------

def _as_symmetric(M) -> np.ndarray:
    A = np.asarray(getattr(M, "entries", M), dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"expected a nonempty square matrix, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise ValueError("matrix is not exactly symmetric")
    return A


def eigenvalues(M) -> np.ndarray:
    A = _as_symmetric(M)
    T = tridiagonalize(A)
    return tridiagonal_eigenvalues(T.diag, T.offdiag)


def eigen_full(M) -> tuple[np.ndarray, np.ndarray]:
    """All eigenpairs of a symmetric matrix; eigenvectors are the columns."""
    A = _as_symmetric(M)
    T = tridiagonalize(A)
    w, Z = tridiagonal_eigh(T.diag, T.offdiag)
    V = T.apply_q(Z)
    bound = TOLERANCES.eigen_residual * (1.0 + np.abs(A).sum(axis=1).max())
    res = np.linalg.norm(A @ V - V * w, axis=0)
    worst = int(np.argmax(res))
    if res[worst] > bound:
        raise EigenError(f"eigenpair {worst} has residual {res[worst]:.3e} > {bound:.3e}", worst)
    return w, V


def second_eigenpair(M, null: np.ndarray, seed: int = 0) -> tuple[float, float, np.ndarray]:
    """Smallest eigenpair orthogonal to the known null vector ``null``.

    Intended for positive semidefinite ``M`` with ``M @ null = 0``. Returns
    ``(lambda_2, lambda_3, x)`` with ``x`` a unit vector orthogonal to
    ``null``; ``lambda_3`` is ``inf`` when ``M`` has order 2.
    """
    A = _as_symmetric(M)
    n = A.shape[0]
    if n < 2:
        raise ValueError("need order >= 2")
    u = np.asarray(null, dtype=float)
    u = u / np.linalg.norm(u)
    T = tridiagonalize(A)
    w = tridiagonal_eigenvalues(T.diag, T.offdiag)
    lam2 = float(w[1])
    lam3 = float(w[2]) if n > 2 else float("inf")
    ut = T.apply_qt(u)
    y = tridiagonal_inverse_iteration(T.diag, T.offdiag, lam2, ut[None, :], seed=seed)
    x = T.apply_q(y)
    x -= (x @ u) * u
    x /= np.linalg.norm(x)
    return lam2, lam3, x
