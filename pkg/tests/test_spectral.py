import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from algconn import spectral
from algconn.dsl import build, primitive
from algconn.eigen import eigenvalues
from algconn.families import GammaSpec, g_abc, gamma_d
from algconn.graph import (
    CellPartition,
    DisconnectedGraphError,
    GraphError,
    build_graph,
    coarsest_equitable_partition,
    distance_partition,
)
from algconn.spectral import (
    FiedlerResult,
    QuotientInapplicable,
    SymMatrix,
    deflated_bound,
    fiedler,
    fiedler_structure_check,
    laplacian,
    laplacian_apply,
    normalized_laplacian,
    quotient_matrix,
    quotient_mu,
    rayleigh,
    relaxation_time,
)

from oracles import dense_laplacian


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


PI2 = math.pi ** 2


# -- matrices ----------------------------------------------------------------------

def test_laplacian_examples():
    assert np.array_equal(np.asarray(laplacian(primitive("K", 2))), [[1, -1], [-1, 1]])
    L = np.asarray(laplacian(path(3)))
    assert np.array_equal(np.diag(L), [1, 2, 1]) and L[0, 1] == L[1, 2] == -1 and L[0, 2] == 0
    L = np.asarray(laplacian(primitive("K", 4)))
    assert np.array_equal(L, 4 * np.eye(4) - np.ones((4, 4)))


def test_laplacian_is_read_only_and_exact():
    G, _ = g_abc(2, 3, 4, 3)
    L = laplacian(G)
    assert np.array_equal(np.asarray(L).sum(axis=1), np.zeros(G.n))
    assert np.array_equal(np.asarray(L), dense_laplacian(G))
    with pytest.raises(ValueError):
        np.asarray(L)[0, 0] = 5.0
    with pytest.raises(ValueError):
        SymMatrix([[1.0, 2.0], [2.5, 1.0]])


def test_edgewise_apply_matches_matrix():
    G, _ = g_abc(1, 2, 3, 4)
    x = np.random.default_rng(0).standard_normal(G.n)
    assert np.allclose(laplacian_apply(G, x), dense_laplacian(G) @ x, atol=1e-13)


def test_normalized_laplacian_null_vector():
    G, _ = g_abc(1, 2, 3, 4)
    N = np.asarray(normalized_laplacian(G))
    assert np.allclose(N @ np.sqrt(G.degrees()), 0, atol=1e-13)
    with pytest.raises(DisconnectedGraphError):
        normalized_laplacian(build_graph(3, [(0, 1)]))


# -- Fiedler pairs --------------------------------------------------------------------

def test_fiedler_examples():
    assert abs(fiedler(path(3)).mu - 1) < 1e-12
    for n in (2, 5, 9):
        assert abs(fiedler(primitive("K", n)).mu - n) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 10, 57, 200])
def test_path_closed_form(n):
    r = fiedler(path(n))
    assert abs(r.mu - 2 * (1 - math.cos(math.pi / n))) <= 1e-9 * r.mu


def test_fiedler_g112_bracket():
    G, _ = g_abc(1, 1, 2, 50)
    r = fiedler(G)
    scaled = r.mu * G.n ** 2 / PI2
    assert 0.9 * 2 <= scaled <= 1.1 * 2


def test_fiedler_result_invariants():
    G, _ = g_abc(2, 3, 4, 5)
    r = fiedler(G)
    assert r.violations(G.max_degree()) == []
    assert abs(np.linalg.norm(r.vector) - 1) <= 1e-12
    assert abs(r.vector.sum()) / math.sqrt(G.n) <= 1e-10
    assert np.linalg.norm(laplacian_apply(G, r.vector) - r.mu * r.vector) <= 1e-8 * (1 + G.max_degree())
    w = eigenvalues(laplacian(G))
    assert abs(r.mu - w[1]) < 1e-10 and abs(r.lambda3 - w[2]) < 1e-10


def test_fiedler_errors():
    with pytest.raises(DisconnectedGraphError):
        fiedler(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(GraphError):
        fiedler(build_graph(1, []))
    with pytest.raises(ValueError):
        fiedler(path(3), method="sparse")
    with pytest.raises(ValueError):
        fiedler(path(3), method="quotient")


def test_csv_row():
    row = fiedler(path(3)).csv_row()
    fields = row.split(",")
    assert len(fields) == 5 and fields[0] == "3" and fields[3] == "dense"
    assert abs(float(fields[1]) - 1) < 1e-12
    assert FiedlerResult.CSV_HEADER == "n,mu,residual,method,orth_defect"


# -- Rayleigh bounds ---------------------------------------------------------------

def test_rayleigh_examples():
    assert rayleigh(primitive("K", 2), [1, -1]) == 2
    assert rayleigh(path(3), [1, 0, -1]) == 1
    G, _ = g_abc(2, 3, 4, 3)
    assert rayleigh(G, np.ones(G.n)) == 0
    with pytest.raises(ValueError):
        rayleigh(path(3), [0, 0, 0])
    with pytest.raises(ValueError):
        rayleigh(path(3), [1, 2])


def test_deflated_examples():
    assert abs(deflated_bound(path(3), [2, 1, 0]) - 1) < 1e-15
    K4 = primitive("K", 4)
    for x in np.random.default_rng(1).standard_normal((20, 4)):
        assert deflated_bound(K4, x) >= 4 - 1e-12
    with pytest.raises(ValueError):
        deflated_bound(K4, [3, 3, 3, 3])


def test_deflated_test_vector_g122():
    spec = GammaSpec.single(1, 2, 2, 30)
    G, _ = gamma_d(spec)
    mu = fiedler(G).mu
    b = deflated_bound(G, spectral.test_vector(spec))
    assert mu - 1e-10 <= b <= 1.15 * mu


@pytest.mark.parametrize("builder", [lambda: g_abc(1, 1, 2, 10)[0], lambda: build("K3+K2^-1+(K1+K2+K2)_4 o H2")[0],
                                     lambda: path(40)])
def test_random_vectors_never_beat_mu(builder):
    G = builder()
    mu = fiedler(G).mu
    rng = np.random.default_rng(42)
    for _ in range(500):
        assert deflated_bound(G, rng.standard_normal(G.n)) >= mu - 1e-10


def test_test_vector_bound_examples():
    spec = GammaSpec.single(1, 1, 2, 100)
    G, _ = gamma_d(spec)
    b = spectral.test_vector_bound(spec)
    assert fiedler(G).mu <= b <= 1.2 * 2 * PI2 / 400 ** 2

    spec = GammaSpec.single(1, 2, 2, 1)
    G, _ = gamma_d(spec)
    b = spectral.test_vector_bound(spec)
    assert math.isfinite(b) and b >= fiedler(G).mu

    spec = GammaSpec(5, ((1, 1, 4), (1, 2, 3)), (50, 50))
    G, _ = gamma_d(spec)
    b = spectral.test_vector_bound(spec)
    n = G.n
    assert 4 * PI2 / n ** 2 <= b <= 1.3 * 6 * PI2 / n ** 2
    assert b >= fiedler(G).mu


# -- quotient route -------------------------------------------------------------------

def test_quotient_examples():
    K4 = primitive("K", 4)
    assert abs(quotient_mu(K4, CellPartition([[0], [1, 2, 3]], 4)).mu - 4) < 1e-12
    C4 = primitive("C", 4)
    assert abs(quotient_mu(C4, CellPartition([[0], [1], [2], [3]], 4)).mu - 2) < 1e-12


@pytest.mark.parametrize("m", [5, 20, 80])
def test_quotient_agrees_with_dense(m):
    G, P = g_abc(1, 1, 2, m)
    q, d = quotient_mu(G, P), fiedler(G)
    assert abs(q.mu - d.mu) <= 1e-8 * d.mu
    assert q.method == "quotient" and q.violations(G.max_degree()) == []
    assert fiedler(G, method="quotient", partition=P).mu == q.mu


def test_star_quotient_is_inapplicable():
    star = build_graph(5, [(0, i) for i in range(1, 5)])
    with pytest.raises(QuotientInapplicable):
        quotient_mu(star, CellPartition([[0], [1, 2, 3, 4]], 5))


def test_quotient_rejects_bad_partitions():
    G = path(4)
    with pytest.raises(GraphError):
        quotient_mu(G, CellPartition([[0, 1], [2, 3]], 4))
    with pytest.raises(QuotientInapplicable):
        quotient_mu(primitive("K", 4), CellPartition([[0, 1, 2, 3]], 4))


@pytest.mark.parametrize("a,b,c,m", [(1, 1, 2, 6), (2, 3, 4, 3), (1, 2, 2, 7), (3, 1, 2, 4)])
def test_quotient_spectrum_is_contained(a, b, c, m):
    G, P = g_abc(a, b, c, m)
    M, sizes = quotient_matrix(G, P)
    assert np.array_equal(M, M.T)
    assert np.allclose(M @ np.sqrt(sizes), 0, atol=1e-12)
    full = eigenvalues(laplacian(G))
    for lam in eigenvalues(M):
        assert np.min(np.abs(full - lam)) <= 1e-8


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 40), st.data())
def test_distance_partitions_of_vertex_transitive_cycles(n, data):
    # on a cycle the distance partition from any vertex is equitable
    C = primitive("C", n)
    v = data.draw(st.integers(0, n - 1))
    P = distance_partition(C, v)
    M, _ = quotient_matrix(C, P)
    full = eigenvalues(laplacian(C))
    for lam in eigenvalues(M):
        assert np.min(np.abs(full - lam)) <= 1e-9


def test_coarsest_partition_quotient():
    G, _ = g_abc(2, 3, 4, 4)
    P = coarsest_equitable_partition(G)
    assert abs(quotient_mu(G, P).mu - fiedler(G).mu) <= 1e-8 * fiedler(G).mu


# -- relaxation time ----------------------------------------------------------------------

def test_relaxation_examples():
    assert abs(relaxation_time(primitive("K", 4)) - 0.75) < 1e-12
    assert abs(relaxation_time(primitive("C", 4)) - 1.0) < 1e-12


def test_relaxation_identity_on_regular():
    G = build("K3+K2^-1+(K1+K2+K2)_5 o H2")[0]
    assert abs(relaxation_time(G) * fiedler(G).mu - 4) <= 1e-9 * 4


# -- structure checks ------------------------------------------------------------------------

def test_structure_path():
    G = path(5)
    rep = fiedler_structure_check(G, fiedler(G), CellPartition([[i] for i in range(5)], 5))
    assert rep.ok and rep.cells is True and rep.violations == []


def test_structure_complete():
    K4 = primitive("K", 4)
    rep = fiedler_structure_check(K4, fiedler(K4))
    assert rep.sign_sets_connected and rep.descent and rep.cells is None


def test_structure_gamma_cells():
    spec = GammaSpec.single(1, 1, 2, 20)
    G, P = gamma_d(spec)
    rep = fiedler_structure_check(G, fiedler(G), P)
    assert rep.ok and rep.cells is True


def test_structure_detects_bad_vectors():
    G = path(6)
    x = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
    x -= x.mean()
    x /= np.linalg.norm(x)
    fake = FiedlerResult(rayleigh(G, x), x, 0.0, "dense", 0.0, None)
    rep = fiedler_structure_check(G, fake, CellPartition([[i] for i in range(6)], 6))
    assert not rep.ok
    assert not rep.sign_sets_connected and rep.cells is False and rep.violations


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10 ** 6), st.floats(-0.5, 1.0))
def test_inertia_count_matches_spectrum(n, seed, t):
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    edges += [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.2]
    G = build_graph(n, sorted(set(edges)))
    w = eigenvalues(laplacian(G))
    # shift just below an eigenvalue, the hardest case for elimination
    k = int(rng.integers(1, n))
    sigma = w[k] - 1e-7 * max(w[k], 1e-3) + t * 1e-9
    if np.min(np.abs(w - sigma)) < 1e-11:
        return
    assert spectral._count_below(G, sigma) == int((w < sigma).sum())
