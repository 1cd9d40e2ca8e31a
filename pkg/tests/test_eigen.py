import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import algconn.eigen as eigen
from algconn.dsl import build, primitive
from algconn.eigen import (
    EigenError,
    eigen_full,
    eigenvalues,
    second_eigenpair,
    tridiagonal_eigh,
    tridiagonal_inverse_iteration,
    tridiagonalize,
)
from algconn.graph import build_graph
from algconn.spectral import laplacian

from oracles import charpoly_eigenvalues, dense_laplacian


def _random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    return (A + A.T) / 2


def test_laplacian_spectra_examples():
    w, _ = eigen_full(laplacian(primitive("K", 4)))
    assert np.allclose(w, [0, 4, 4, 4], atol=1e-12)
    P3 = build_graph(3, [(0, 1), (1, 2)])
    assert np.allclose(eigen_full(laplacian(P3))[0], [0, 1, 3], atol=1e-12)
    assert np.allclose(eigen_full(laplacian(primitive("C", 4)))[0], [0, 2, 2, 4], atol=1e-12)


SMALL_GRAPHS = {
    **{f"K{k}": primitive("K", k) for k in range(1, 7)},
    **{f"C{k}": primitive("C", k) for k in range(3, 7)},
    **{f"P{k}": build_graph(k, [(i, i + 1) for i in range(k - 1)]) for k in range(2, 7)},
    "star": build_graph(5, [(0, i) for i in range(1, 5)]),
    "K23": build_graph(5, [(u, v) for u in range(2) for v in range(2, 5)]),
    "G112": build("K1+K1+K2")[0],
    "K4-1": build("K4^-1")[0],
    "K6-2": build("K6^-2")[0],
    "bowtie": build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
}


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_characteristic_polynomial_oracle(name):
    G = SMALL_GRAPHS[name]
    L = dense_laplacian(G)
    want = charpoly_eigenvalues(L.astype(int))
    got = eigenvalues(laplacian(G))
    assert np.allclose(got, want, atol=1e-10, rtol=0)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2)
    .map(lambda vals: (n, vals))))
def test_random_integer_matrices_against_charpoly(case):
    n, vals = case
    A = np.zeros((n, n), dtype=int)
    A[np.triu_indices(n)] = vals
    A = A + np.triu(A, 1).T
    want = charpoly_eigenvalues(A)
    w, V = eigen_full(A.astype(float))
    assert np.allclose(w, want, atol=1e-9)
    assert np.allclose(V.T @ V, np.eye(n), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 31, 32, 33, 34, 64, 65, 100, 257])
def test_random_matrices_against_numpy(n):
    A = _random_symmetric(n, n)
    w, V = eigen_full(A)
    assert np.allclose(w, np.linalg.eigvalsh(A), atol=1e-11)
    assert np.all(np.diff(w) >= 0)
    assert np.allclose(V.T @ V, np.eye(n), atol=1e-11)
    assert np.linalg.norm(A @ V - V * w) < 1e-10


@pytest.mark.parametrize("n", [4, 33, 90])
def test_tridiagonal_reconstruction(n):
    A = _random_symmetric(n, 7 + n)
    T = tridiagonalize(A)
    Tm = np.diag(T.diag) + np.diag(T.offdiag, 1) + np.diag(T.offdiag, -1)
    Q = T.apply_q(np.eye(n))
    assert np.allclose(Q @ Tm @ Q.T, A, atol=1e-12)
    assert np.allclose(T.apply_qt(Q), np.eye(n), atol=1e-12)


def test_tridiagonal_eigh_and_inverse_iteration():
    n = 50
    d = np.full(n, 2.0)
    e = np.full(n - 1, -1.0)
    w, Z = tridiagonal_eigh(d, e)
    exact = 2 - 2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1))
    assert np.allclose(w, exact, atol=1e-12)
    Tm = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    for k in (0, 7, n - 1):
        y = tridiagonal_inverse_iteration(d, e, w[k])
        assert abs(np.linalg.norm(y) - 1) < 1e-12
        assert np.linalg.norm(Tm @ y - w[k] * y) < 1e-10


def test_second_eigenpair_on_path():
    n = 200
    G = build_graph(n, [(i, i + 1) for i in range(n - 1)])
    lam2, lam3, x = second_eigenpair(laplacian(G), np.ones(n))
    assert abs(lam2 - 2 * (1 - np.cos(np.pi / n))) < 1e-13
    assert abs(lam3 - 2 * (1 - np.cos(2 * np.pi / n))) < 1e-13
    assert abs(x.sum()) < 1e-10 and abs(np.linalg.norm(x) - 1) < 1e-12
    L = dense_laplacian(G)
    assert np.linalg.norm(L @ x - lam2 * x) < 1e-9


def test_second_eigenpair_order_two():
    lam2, lam3, x = second_eigenpair(laplacian(primitive("K", 2)), np.ones(2))
    assert abs(lam2 - 2) < 1e-14 and lam3 == np.inf


def test_nonconvergence_reports_index(monkeypatch):
    monkeypatch.setattr(eigen, "TOLERANCES", dataclasses.replace(eigen.TOLERANCES, ql_sweeps=0))
    with pytest.raises(EigenError) as info:
        eigenvalues(_random_symmetric(10, 1))
    assert info.value.index is not None and 0 <= info.value.index < 10
    assert "sweeps" in str(info.value)


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.zeros((0, 0)), np.array([[1.0, 2.0], [2.0 + 1e-15, 1.0]])])
def test_rejects_non_symmetric(bad):
    with pytest.raises(ValueError):
        eigen_full(bad)
