"""Executable claims: each check builds graphs, measures, and records pass/fail.

Every check returns a :class:`VerificationReport` whose ``passed`` flag can
be recomputed from the stored measurements, so a report read back from disk
is self-auditing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .config import TOLERANCES
from .dsl import build
from .families import (
    GammaSpec,
    counterexample_exprs,
    counterexample_degree,
    counterexample_order,
    family_member,
    gamma_d,
    max_diameter,
    table1_expr,
    table1_rows,
)
from .graph import Graph, GraphError, build_graph, diameter, is_connected, is_regular
from .spectral import fiedler, relaxation_time, test_vector_bound

__all__ = [
    "VerificationReport",
    "bracket_check",
    "reproduce_counterexamples",
    "scaling_sweep",
    "perturbation_trend",
    "table1_audit",
    "aldous_fill_ratio",
    "relaxation_identity",
    "format_csv",
    "write_csv",
    "DESK_RANGES",
    "FULL_RANGE",
]

DESK_RANGES = {"cubic": (4, 60), "quartic": (1, 50)}
FULL_RANGE = 260


def _check(op: str, measured: Any, target: Any, tol: float) -> bool:
    if op == "==":
        return measured == target
    if op == "<":
        return measured < target
    if op == "<=":
        return measured <= target
    if op == ">":
        return measured > target
    if op == ">=":
        return measured >= target
    if op == "in":
        lo, hi = target
        return lo <= measured <= hi
    if op == "abs":
        return abs(measured - target) <= tol
    if op == "rel":
        return abs(measured - target) <= tol * abs(target)
    if op == "nonincreasing":
        return all(b <= a for a, b in zip(measured, measured[1:]))
    if op == "decreasing":
        return all(b < a for a, b in zip(measured, measured[1:]))
    raise ValueError(f"unknown comparison {op!r}")


@dataclass
class VerificationReport:
    """One claim instance.

    ``expected`` maps a measured key to ``(op, target)``; ``op`` is one of
    ``== < <= > >= in abs rel nonincreasing decreasing``. ``abs`` and
    ``rel`` use ``tolerance``.
    """

    claim_id: str
    parameters: dict[str, Any]
    measured: dict[str, Any]
    expected: dict[str, tuple[str, Any]]
    tolerance: float = 0.0
    passed: bool = field(default=False)
    notes: list[str] = field(default_factory=list)

    def failures(self) -> list[str]:
        out = []
        for key, (op, target) in self.expected.items():
            if key not in self.measured:
                out.append(f"{key}: not measured")
            elif not _check(op, self.measured[key], target, self.tolerance):
                out.append(f"{key}: measured {self.measured[key]!r}, expected {op} {target!r}")
        return out

    def recompute(self) -> bool:
        return not self.failures()

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        tail = "" if self.passed else " | " + "; ".join(self.failures() + self.notes)
        return f"{status} {self.claim_id}({params}){tail}"


def _report(claim_id, params, measured, expected, tol=0.0, notes=None) -> VerificationReport:
    r = VerificationReport(claim_id, params, measured, expected, tol, notes=list(notes or []))
    r.passed = r.recompute() and not r.notes
    return r


# -- CSV ------------------------------------------------------------------------

def _cell(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def format_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.write_text(format_csv(header, rows), encoding="ascii")
    return path


# -- claims ---------------------------------------------------------------------

def bracket_check(spec: GammaSpec) -> VerificationReport:
    """``l pi^2/n^2 <~ mu <~ L pi^2/n^2`` and the test-vector upper bound."""
    G, _ = gamma_d(spec)
    res = fiedler(G)
    n = G.n
    scaled = res.mu * n * n / math.pi ** 2
    bound = test_vector_bound(spec)
    tol = TOLERANCES.bracket
    measured = {"mu": res.mu, "mu_n2_pi2": scaled, "bound_minus_mu": bound - res.mu}
    expected = {"bound_minus_mu": (">=", -TOLERANCES.deflated_slack)}
    if sum(spec.ms) >= 200:
        expected["mu_n2_pi2"] = ("in", ((1 - tol) * spec.small_l, (1 + tol) * spec.big_l))
    params = {"d": spec.d, "triples": spec.triples, "ms": spec.ms, "n": n}
    return _report("bracket", params, measured, expected, tol)


def _validate_m_values(kind: str, ms: Sequence[int], full: bool) -> None:
    if kind not in DESK_RANGES:
        raise ValueError(f"unknown counterexample family {kind!r}")
    lo, hi = DESK_RANGES[kind]
    top = FULL_RANGE if full else hi
    for m in ms:
        if not lo <= m <= top:
            extra = "" if full else f" (values above {hi} need the full flag)"
            raise ValueError(f"m={m} outside [{lo}, {top}] for {kind}{extra}")
        if kind == "cubic" and m % 2:
            raise ValueError(f"cubic pairs need even m, got {m}")


def counterexample_report(kind: str, m: int) -> tuple[VerificationReport, list[Any]]:
    deg = counterexample_degree(kind)
    n = counterexample_order(kind, m)
    ge, gpe = counterexample_exprs(kind, m)
    G, _ = build(ge)
    Gp, _ = build(gpe)
    dg, dgp = diameter(G), diameter(Gp)
    r1, r2 = fiedler(G), fiedler(Gp)
    margin = (r1.mu - r2.mu) - TOLERANCES.strict_margin_factor * (r1.residual + r2.residual)
    measured = {
        "n_gamma": G.n, "n_gamma_prime": Gp.n,
        "regular_gamma": is_regular(G, deg), "regular_gamma_prime": is_regular(Gp, deg),
        "diam_gamma": dg, "diam_gap": dg - dgp,
        "mu_gamma": r1.mu, "mu_gamma_prime": r2.mu, "strict_margin": margin,
    }
    expected = {
        "n_gamma": ("==", n), "n_gamma_prime": ("==", n),
        "regular_gamma": ("==", True), "regular_gamma_prime": ("==", True),
        "diam_gamma": ("==", max_diameter(n, deg, True)),
        "diam_gap": ("==", 1),
        "strict_margin": (">", 0.0),
    }
    rep = _report(f"counterexample_{kind}", {"m": m, "n": n}, measured, expected)
    return rep, [m, n, dg, dgp, r1.mu, r2.mu]


COUNTEREXAMPLE_HEADER = ("m", "n", "diam_gamma", "diam_gamma_prime", "mu_gamma", "mu_gamma_prime")


def reproduce_counterexamples(
    kind: str, m_values: Iterable[int], full: bool = False, out_dir: str | Path | None = None
) -> tuple[list[VerificationReport], str]:
    """Check ``mu(Gamma') < mu(Gamma)`` for each ``m``; returns reports and CSV text."""
    ms = list(m_values)
    _validate_m_values(kind, ms, full)
    reports, rows = [], []
    for m in ms:
        rep, row = counterexample_report(kind, m)
        reports.append(rep)
        rows.append(row)
    text = format_csv(COUNTEREXAMPLE_HEADER, rows)
    if out_dir is not None:
        Path(out_dir, f"counterexample_{kind}.csv").write_text(text, encoding="ascii")
    return reports, text


SWEEP_HEADER = ("m", "n", "mu", "mu_n2_pi2", "diameter")


def scaling_sweep(
    family: str, d: int | None, ms: Sequence[int], out_dir: str | Path | None = None
) -> tuple[VerificationReport, str]:
    """``mu n^2 / pi^2`` along a doubling sequence of ``m``.

    For families with a known limit the deviation from the target must be
    non-increasing and end at most ``sweep_final``. For families that only
    have an upper bound the scaled value must end below
    ``(1 + sweep_final) * target``.
    """
    rows, devs, scaled_all = [], [], []
    member = None
    for m in ms:
        member = family_member(family, d, m)
        G = member.graph
        res = fiedler(G)
        scaled = res.mu * G.n ** 2 / math.pi ** 2
        rows.append([m, G.n, res.mu, scaled, diameter(G)])
        scaled_all.append(scaled)
        devs.append(abs(scaled / member.target - 1.0))
    tol = TOLERANCES.sweep_final
    measured = {"scaled": scaled_all, "final_scaled": scaled_all[-1]}
    if member.upper_only:
        expected = {"final_scaled": ("<=", (1 + tol) * member.target)}
    else:
        measured["deviation"] = devs
        measured["final_deviation"] = devs[-1]
        expected = {"deviation": ("nonincreasing", None), "final_deviation": ("<=", tol)}
    if family == "iv":
        measured["min_scaled"] = min(scaled_all)
        expected["min_scaled"] = (">", 3.0)
    claim = f"sweep_{family}" + (f"_d{d}" if d is not None and family != "iv" else "")
    params = {"family": family, "d": member.d, "ms": tuple(ms), "target": member.target}
    rep = _report(claim, params, measured, expected, tol)
    text = format_csv(SWEEP_HEADER, rows)
    if out_dir is not None:
        Path(out_dir, f"{claim}.csv").write_text(text, encoding="ascii")
    return rep, text


def attach_gadget(base: Graph, gadget: Graph, attachments: Sequence[tuple[int, int]]) -> Graph:
    """Disjoint union of ``base`` and ``gadget`` plus edges ``(g, k)``.

    ``g`` is a gadget vertex and ``k`` counts base vertices from the end
    (``0`` is the last vertex).
    """
    if gadget.n > 8:
        raise GraphError(f"gadget has {gadget.n} vertices, at most 8 allowed")
    edges = list(base.edges())
    edges += [(base.n + u, base.n + v) for u, v in gadget.edges()]
    edges += [(base.n + g, base.n - 1 - k) for g, k in attachments]
    G = build_graph(base.n + gadget.n, edges)
    if not is_connected(G):
        raise GraphError("gadget attachment leaves the graph disconnected")
    return G


def perturbation_trend(
    base: GammaSpec,
    gadget: Graph,
    ms: Sequence[int],
    attachments: Sequence[tuple[int, int]] = ((0, 0), (1, 1)),
) -> VerificationReport:
    """``|mu(G')/mu(G) - 1|`` shrinks as the base chain grows."""
    devs, ratios = [], []
    for m in ms:
        spec = replace(base, ms=(m,) * base.t)
        G, _ = gamma_d(spec)
        Gp = attach_gadget(G, gadget, attachments)
        ratio = fiedler(Gp).mu / fiedler(G).mu
        ratios.append(ratio)
        devs.append(abs(ratio - 1.0))
    measured = {"ratio": ratios, "deviation": devs, "final_deviation": devs[-1]}
    expected = {
        "deviation": ("decreasing", None),
        "final_deviation": ("<=", TOLERANCES.perturbation_final),
    }
    params = {"triples": base.triples, "gadget_n": gadget.n, "ms": tuple(ms)}
    return _report("perturbation", params, measured, expected, TOLERANCES.perturbation_final)


def table1_audit(d_set: Iterable[int], m: int) -> list[VerificationReport]:
    reports = []
    for d in d_set:
        if not 3 <= d <= 8:
            raise ValueError(f"d={d} outside 3..8")
        for r in table1_rows(d):
            n = (d + 1) * m + r
            notes = []
            try:
                G, _ = build(table1_expr(d, r, m))
                measured = {"n": G.n, "regular": is_regular(G, d), "diameter": diameter(G)}
            except GraphError as exc:
                measured, notes = {}, [f"construction failed: {exc}"]
            expected = {
                "n": ("==", n), "regular": ("==", True),
                "diameter": ("==", max_diameter(n, d, True)),
            }
            reports.append(_report("table1", {"d": d, "r": r, "m": m}, measured, expected,
                                   notes=notes))
    return reports


def aldous_fill_ratio(G: Graph) -> float:
    """Relaxation time over ``3 n^2 / (2 pi^2)``."""
    if not is_regular(G):
        raise GraphError("Aldous-Fill ratio is defined for regular graphs only")
    return relaxation_time(G) / (3.0 * G.n ** 2 / (2.0 * math.pi ** 2))


def relaxation_identity(G: Graph, label: str = "") -> VerificationReport:
    """``tau * mu = d`` on a ``d``-regular graph."""
    if not is_regular(G):
        raise GraphError("relaxation identity needs a regular graph")
    d = G.degree(0)
    tau = relaxation_time(G)
    mu = fiedler(G).mu
    measured = {"tau_mu": tau * mu}
    expected = {"tau_mu": ("rel", float(d))}
    return _report("relaxation", {"graph": label, "n": G.n, "d": d}, measured, expected,
                   TOLERANCES.regular_relaxation)
