"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import functools
import math

import numpy as np

from algconn import spectral
from algconn.dsl import primitive
from algconn.families import (
    GammaSpec,
    block_path,
    counterexample_pair,
    g_abc,
    gamma_d,
    table1,
    table1_rows,
)
from algconn.graph import build_graph, diameter, is_connected
from algconn.spectral import fiedler, fiedler_structure_check, quotient_mu
from algconn.verify import (
    aldous_fill_ratio,
    bracket_check,
    perturbation_trend,
    relaxation_identity,
    reproduce_counterexamples,
    table1_audit,
)

from oracles import floyd_warshall

PI2 = math.pi ** 2
SCALING_TRIPLES = ((1, 1, 2), (1, 2, 2), (1, 3, 3), (2, 2, 3))
SCALING_MS = (75, 150, 300)
MIXED = GammaSpec(5, ((1, 1, 4), (2, 2, 2)), (150, 150))


@functools.lru_cache(maxsize=None)
def gamma_instance(spec):
    """Graph, partition and dense Fiedler result, shared by criteria 4, 5 and 8."""
    G, P = gamma_d(spec)
    return G, P, fiedler(G)


def scaling_spec(abc, m):
    return GammaSpec.single(*abc, m)


def test_criterion_01_path_spectrum(criterion):
    worst, where = 0.0, None
    for n in range(2, 501):
        G = build_graph(n, [(i, i + 1) for i in range(n - 1)])
        exact = 2 * (1 - math.cos(math.pi / n))
        err = abs(fiedler(G).mu - exact) / exact
        if err > worst:
            worst, where = err, n
    assert criterion(1, "path spectrum n=2..500", worst <= 1e-9, f"max rel err {worst:.2e} at n={where}")


def _counterexample_criterion(kind, ms, degree, order):
    reports, text = reproduce_counterexamples(kind, ms)
    bad = [r.summary() for r in reports if not r.passed]
    for r, m in zip(reports, ms):
        n = order(m)
        meas = r.measured
        if not (meas["n_gamma"] == meas["n_gamma_prime"] == n and meas["diam_gap"] == 1
                and meas["regular_gamma"] and meas["regular_gamma_prime"]
                and meas["mu_gamma_prime"] < meas["mu_gamma"] and meas["strict_margin"] > 0):
            bad.append(f"m={m}")
        if kind == "cubic" and meas["diam_gamma"] != 3 * n // 4 - 3:
            bad.append(f"m={m}: diameter {meas['diam_gamma']} != 3n/4-3")
    assert len(text.splitlines()) == len(ms) + 1
    return bad


def test_criterion_02_cubic_counterexamples(criterion):
    ms = list(range(4, 61, 2))
    bad = _counterexample_criterion("cubic", ms, 3, lambda m: 4 * m + 16)
    assert criterion(2, "cubic counterexamples m=4..60 even", not bad,
                     f"{len(ms) - len(bad)}/{len(ms)} pass" + (f"; {bad[:3]}" if bad else ""))


def test_criterion_03_quartic_counterexamples(criterion):
    ms = list(range(1, 51))
    bad = _counterexample_criterion("quartic", ms, 4, lambda m: 5 * m + 13)
    assert criterion(3, "quartic counterexamples m=1..50", not bad,
                     f"{len(ms) - len(bad)}/{len(ms)} pass" + (f"; {bad[:3]}" if bad else ""))


def test_criterion_04_clique_chain_scaling(criterion):
    bad, parts = [], []
    for abc in SCALING_TRIPLES:
        target = abc[0] * abc[1] * abc[2]
        ratios = []
        for m in SCALING_MS:
            G, _, res = gamma_instance(scaling_spec(abc, m))
            ratios.append(res.mu * G.n ** 2 / (target * PI2))
        devs = [abs(r - 1) for r in ratios]
        ok = 0.9 <= ratios[-1] <= 1.1 and all(b <= a for a, b in zip(devs, devs[1:]))
        parts.append(f"{abc}:{ratios[-1]:.4f}")
        if not ok:
            bad.append((abc, ratios))
    assert criterion(4, "abc scaling at m=75,150,300", not bad, " ".join(parts))


def test_criterion_05_mixed_bracket(criterion):
    G, _, res = gamma_instance(MIXED)
    n = G.n
    lo, hi = 0.85 * 4 * PI2 / n ** 2, 1.15 * 8 * PI2 / n ** 2
    bound = spectral.test_vector_bound(MIXED)
    rep = bracket_check(MIXED)
    ok = lo <= res.mu <= hi and bound >= res.mu - 1e-10 and rep.passed
    assert criterion(5, "mixed Gamma_5 bracket", ok,
                     f"mu n^2/pi^2={res.mu * n * n / PI2:.4f} in [3.4, 9.2], bound-mu={bound - res.mu:.3e}")


def test_criterion_06_table1_audit(criterion):
    reports = table1_audit(range(3, 9), 6)
    bad = [r.summary() for r in reports if not r.passed]
    assert criterion(6, "max-diameter regular rows d=3..8, m=6", not bad,
                     f"{len(reports) - len(bad)}/{len(reports)} rows pass")


def test_criterion_07_oracle_equivalence(criterion):
    worst, bad_q, count = 0.0, [], 0
    for a in range(1, 6):
        for b in range(1, 6):
            for c in range(1, 6):
                for m in range(1, 41):
                    G, P = g_abc(a, b, c, m)
                    dense = fiedler(G).mu
                    try:
                        quo = quotient_mu(G, P).mu
                    except spectral.QuotientInapplicable as exc:
                        bad_q.append(((a, b, c, m), str(exc)))
                        continue
                    err = abs(quo - dense) / dense
                    worst = max(worst, err)
                    if err > 1e-8:
                        bad_q.append(((a, b, c, m), err))
                    count += 1
    rng = np.random.default_rng(20240601)
    bad_d = 0
    for _ in range(200):
        n = int(rng.integers(2, 65))
        edges = {(int(rng.integers(0, v)), v) for v in range(1, n)}
        p = rng.uniform(0.0, 0.15)
        edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
        G = build_graph(n, sorted(edges))
        assert is_connected(G)
        if diameter(G) != int(floyd_warshall(G).max()):
            bad_d += 1
    ok = not bad_q and bad_d == 0
    assert criterion(7, "quotient vs dense and BFS vs Floyd-Warshall", ok,
                     f"{count}/5000 quotient agree (max rel {worst:.1e}), {200 - bad_d}/200 diameters"
                     + (f"; first mismatch {bad_q[0]}" if bad_q else ""))


def test_criterion_08_fiedler_structure(criterion):
    specs = [scaling_spec(abc, m) for abc in SCALING_TRIPLES for m in SCALING_MS] + [MIXED]
    bad, skipped = [], 0
    for spec in specs:
        G, P, res = gamma_instance(spec)
        rep = fiedler_structure_check(G, res, P)
        if rep.cells is None:
            skipped += 1
        if not rep.ok:
            bad.append((spec.triples, spec.ms, rep.violations[:2]))
    assert criterion(8, "Fiedler structure on criteria 4-5 instances", not bad,
                     f"{len(specs) - len(bad)}/{len(specs)} pass, {skipped} cell checks skipped")


def _regular_instances():
    for d in range(3, 9):
        for r in table1_rows(d):
            yield f"table1({d},{r},6)", table1(d, r, 6)
        # L chains are regular for odd d, M chains for even d
        kind = "L" if d % 2 else "M"
        yield f"block_path({d},{kind},10)", block_path(d, kind, 10)
    for m in range(4, 61, 14):
        for G in counterexample_pair("cubic", m):
            yield f"cubic({m})", G
    for m in range(1, 51, 7):
        for G in counterexample_pair("quartic", m):
            yield f"quartic({m})", G


def test_criterion_09_relaxation_time(criterion):
    bad, count = [], 0
    for label, G in _regular_instances():
        rep = relaxation_identity(G, label)
        count += 1
        if not rep.passed:
            bad.append(label)
    G3 = block_path(3, "L", 253)
    G5 = block_path(5, "L", 167)
    r3, r5 = aldous_fill_ratio(G3), aldous_fill_ratio(G5)
    for G in (G3, G5):
        rep = relaxation_identity(G, f"n={G.n}")
        count += 1
        if not rep.passed:
            bad.append(rep.summary())
    ok = not bad and G3.n == 1024 and G5.n == 1020 and 0.9 <= r3 <= 1.1 and abs(r5 - 5 / 6) <= 0.1
    assert criterion(9, "relaxation identity and Aldous-Fill ratios", ok,
                     f"tau*mu=d on {count - len(bad)}/{count}; ratio d=3 {r3:.4f}, d=5 {r5:.4f}")


def test_criterion_10_perturbation(criterion):
    rep = perturbation_trend(GammaSpec.single(1, 2, 2, 50), primitive("K", 5), (50, 100, 200, 400))
    devs = ", ".join(f"{x:.4f}" for x in rep.measured["deviation"])
    assert criterion(10, "K5 gadget perturbation trend", rep.passed, f"deviations {devs}")
