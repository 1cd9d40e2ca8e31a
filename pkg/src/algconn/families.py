"""Catalog of the named graph families.

Every builder goes through the construction DSL, so each member has a
printable expression (the ``*_expr`` functions) that rebuilds it exactly.
Builders check their own postconditions (order, regularity, diameter) and
raise :class:`FamilyError` if one fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dsl import build, named_block
from .graph import (
    CellPartition,
    Graph,
    GraphError,
    bfs_distances,
    block_decomposition,
    degree_profile,
    diameter,
    is_regular,
)


class FamilyError(GraphError):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


def _grp(body: str, count: int) -> str:
    """``(body)_count+`` or nothing when ``count`` is zero."""
    return f"({body})_{count}+" if count > 0 else ""


# -- Gamma specs ------------------------------------------------------------

@dataclass(frozen=True)
class GammaSpec:
    d: int
    triples: tuple[tuple[int, int, int], ...]
    ms: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(int(x) for x in t) for t in self.triples))
        object.__setattr__(self, "ms", tuple(int(m) for m in self.ms))
        _require(len(self.triples) >= 1, "GammaSpec needs at least one triple")
        _require(len(self.triples) == len(self.ms), "triples and ms must have the same length")
        for t in self.triples:
            _require(len(t) == 3 and min(t) >= 1, f"triple {t} must have three entries >= 1")
            _require(sum(t) == self.d + 1, f"triple {t} must sum to d+1 = {self.d + 1}")
        _require(min(self.ms) >= 1, "every m_i must be >= 1")

    @classmethod
    def single(cls, a: int, b: int, c: int, m: int) -> "GammaSpec":
        return cls(a + b + c - 1, ((a, b, c),), (m,))

    @property
    def t(self) -> int:
        return len(self.triples)

    @property
    def n(self) -> int:
        return (self.d + 1) * sum(self.ms)

    @property
    def big_l(self) -> int:
        """Largest product ``a*b*c`` over the triples."""
        return max(a * b * c for a, b, c in self.triples)

    @property
    def small_l(self) -> int:
        """Smallest product ``a*b*c`` over the triples."""
        return min(a * b * c for a, b, c in self.triples)

    def cell_sizes(self) -> list[int]:
        return [x for t, m in zip(self.triples, self.ms) for _ in range(m) for x in t]


def gamma_expr(spec: GammaSpec) -> str:
    return "+".join(f"(K{a}+K{b}+K{c})_{m}" for (a, b, c), m in zip(spec.triples, spec.ms))


def gamma_d(spec: GammaSpec) -> tuple[Graph, CellPartition]:
    """Chain of the blocks ``G(a_i, b_i, c_i; m_i)`` joined end to end."""
    G, P = build(gamma_expr(spec))
    _require(P.sizes() == spec.cell_sizes(), "cell layout does not match the spec")
    return G, P


def g_abc(a: int, b: int, c: int, m: int) -> tuple[Graph, CellPartition]:
    """Sequential join of ``K_a, K_b, K_c`` repeated ``m`` times."""
    _require(min(a, b, c, m) >= 1, f"g_abc needs a, b, c, m >= 1, got {(a, b, c, m)}")
    return gamma_d(GammaSpec.single(a, b, c, m))


# -- maximum diameter -------------------------------------------------------

def max_diameter(n: int, d: int, regular: bool) -> int:
    """Largest diameter of an ``n``-vertex graph with minimum degree ``d`` (or ``d``-regular)."""
    q, r = divmod(n, d + 1)
    if not regular:
        _require(d >= 2 and n >= d + 1, f"need d >= 2 and n >= d+1, got n={n}, d={d}")
        if n <= 2 * d + 1:
            return -(-n // (d + 1))
        return 3 * q - (3 if r == 0 else 2 if r == 1 else 1)
    _require(d >= 3, f"regular case needs d >= 3, got {d}")
    _require(n >= 2 * d + 4, f"regular case needs n >= 2d+4, got n={n}, d={d}")
    _require(n * d % 2 == 0, f"no {d}-regular graph on {n} vertices (n*d odd)")
    if d % 2:
        return 3 * q - (3 if r == 0 else 1)
    return 3 * q - (3 if r == 0 else 2 if r in (1, 2) else 1)


# -- end blocks -------------------------------------------------------------

def end_block(kind: str, d: int | None = None) -> tuple[Graph, int]:
    """``H1`` (needs even ``d >= 4``), ``H2`` or ``H3`` plus its attachment vertex."""
    _require(kind in ("H1", "H2", "H3"), f"unknown end block {kind!r}")
    if kind == "H1":
        _require(d is not None and d >= 4 and d % 2 == 0, f"H1 needs even d >= 4, got {d}")
    G, v = named_block(kind, d if kind == "H1" else None)
    _require(G.degree(v) == 2, "attachment vertex must have degree 2")
    return G, v


# -- maximum-diameter regular graphs ----------------------------------------------------------------

def table1_rows(d: int) -> list[int]:
    """Admissible residues ``r`` for degree ``d``."""
    _require(d >= 3, f"d must be >= 3, got {d}")
    return list(range(0, d, 2)) if d % 2 else list(range(d + 1))


def table1_expr(d: int, r: int, m: int) -> str:
    _require(m >= 3, f"m must be >= 3, got {m}")
    _require(r in table1_rows(d), f"({d}, {r}) is not a row of the table")
    if d % 2:
        k = d - 1
        head = f"K2+K{k}^-1+"
        rep = f"K1+K1+K{k}"
        if r == 0:
            return head + _grp(rep, m - 3) + f"{rep} u+1 K{k}^-1+K2"
        return head + _grp(rep, m - 2) + f"K1+K1+K{k}^-{r - 1}+Kb{r}^+1"
    k = d - 2
    head = f"K3+K{k}^-1+"
    rep = f"K1+K2+K{k}"
    if r == 0:
        return head + _grp(rep, m - 3) + f"{rep} u+1 K{k}^-1+K3"
    if r == 2:
        return head + f"({rep})_{m - 2} o H1({d})"
    body = head + _grp(rep, m - 2)
    if r == 1:
        return body + f"K1+Kb2+K{d - 1}"
    if r == d - 1:
        return body + f"K1+Kb2+Kb{d - 1}+Kb{d - 2}^+1"
    if r == d:
        return body + f"K1+Kb2+Kb{d - 1} +-1 C{d - 1}"
    return body + f"K1+K2+K{k}^-{r - 1}+C{r}"


def _check_regular_extremal(G: Graph, d: int, n: int, what: str) -> None:
    _require(G.n == n, f"{what}: expected {n} vertices, built {G.n}")
    _require(is_regular(G, d), f"{what}: not {d}-regular, degrees {degree_profile(G).counts}")
    want = max_diameter(n, d, True)
    got = diameter(G)
    _require(got == want, f"{what}: diameter {got}, expected maximum {want}")


def table1(d: int, r: int, m: int) -> Graph:
    """A ``d``-regular graph on ``(d+1)m + r`` vertices of maximum diameter."""
    G, _ = build(table1_expr(d, r, m))
    _check_regular_extremal(G, d, (d + 1) * m + r, f"table1({d},{r},{m})")
    return G


# -- counterexample pairs ---------------------------------------------------

def counterexample_exprs(kind: str, m: int, d: int | None = None) -> tuple[str, str]:
    """Expressions for the pair ``(Gamma, Gamma')`` of the given kind."""
    if kind == "cubic":
        _require(m >= 4 and m % 2 == 0, f"cubic pair needs even m >= 4, got {m}")
        h = m // 2
        g = (f"K2+K2^-1+(K1+K1+K2)_{h}+K1+K1+K2 u+1 K2+(K1+K1+K2)_{h}"
             f"+K1+K1+K2^-1+K2")
        gp = f"K2+K2^-1+(K1+K1+K2)_{m}+K1+K1+K2 u+1 K2 u+1 K2 u+1 K2^-1+K2"
        return g, gp
    if kind == "quartic":
        _require(m >= 1, f"quartic pair needs m >= 1, got {m}")
        g = f"K3+K2^-1+(K1+K2+K2)_{m} o H2"
        if m == 1:
            gp = "H3 o (K2+K2) o H3"
        else:
            gp = "H3 o (K2+K2+K1)+K2+K2+" + _grp("K1+K2+K2", m - 2)
            gp = gp.rstrip("+") + " o H3"
        return g, gp
    if kind == "odd_d":
        _require(d is not None and d >= 5 and d % 2, f"odd_d needs odd d >= 5, got {d}")
        _require(2 * m >= d + 7, f"odd_d needs m >= (d+7)/2, got {m}")
        k = d - 3
        g = (f"K4+K{k}^-1+" + _grp(f"K1+K3+K{k}", m - 3)
             + f"K1+K3+K{k} u+1 K{k}^-1+K4")
        j = d - 1
        splice = f"K1+K1+K{j}" + f" u+1 K{j}" * ((d + 1) // 2)
        rest = m - 3 - (d + 1) // 2
        gp = (f"K2+K{j}^-1+{splice}+" + _grp(f"K1+K1+K{j}", rest)
              + f"K1+K1+K{j} u+1 K{j}^-1+K2")
        return g, gp
    if kind == "even_d":
        _require(d is not None and d >= 6 and d % 2 == 0, f"even_d needs even d >= 6, got {d}")
        _require(m >= 2 * (d + 1), f"even_d needs m >= 2(d+1), got {m}")
        k = d - 2
        g = (f"K3+K{k}^-2+Kb2+K2+K{d - 3}+" + _grp(f"K2+K2+K{d - 3}", m - 3)
             + f"K2+Kb2+K{k}^-2+K3")
        splice = f"K1+K2+(K{k} u+1 K{k}+Kb2+Kb2)_{d + 1}+"
        tail = m - 2 - (2 * d + 1)
        if tail >= 0:
            rest = f"K{k}+" + _grp(f"K1+K2+K{k}", tail) + f"K1+K2+K{k}^-3+C4"
        else:
            rest = f"K{k}^-3+C4"
        gp = f"K3+K{k}^-1+" + splice + rest
        return g, gp
    raise FamilyError(f"unknown counterexample kind {kind!r}")


def counterexample_degree(kind: str, d: int | None = None) -> int:
    return {"cubic": 3, "quartic": 4}.get(kind, d)


def counterexample_order(kind: str, m: int, d: int | None = None) -> int:
    if kind == "cubic":
        return 4 * m + 16
    if kind == "quartic":
        return 5 * m + 13
    if kind == "odd_d":
        return m * (d + 1)
    if kind == "even_d":
        return m * (d + 1) + 4
    raise FamilyError(f"unknown counterexample kind {kind!r}")


def counterexample_gap(kind: str, m: int, d: int | None = None) -> int:
    """Expected ``diam(Gamma) - diam(Gamma')``."""
    if kind in ("cubic", "quartic"):
        return 1
    n = counterexample_order(kind, m, d)
    dmax = max_diameter(n, d, True)
    if kind == "odd_d":
        return dmax - (3 * m - d - 1)
    return dmax - (3 * m - 2 * d + 3)


def counterexample_pair(kind: str, m: int, d: int | None = None) -> tuple[Graph, Graph]:
    """Build and check ``(Gamma, Gamma')``; ``Gamma`` has maximum diameter, ``Gamma'`` not."""
    deg = counterexample_degree(kind, d)
    n = counterexample_order(kind, m, d)
    ge, gpe = counterexample_exprs(kind, m, d)
    G, _ = build(ge)
    Gp, _ = build(gpe)
    _check_regular_extremal(G, deg, n, f"{kind} Gamma (m={m})")
    _require(Gp.n == n, f"{kind} Gamma': expected {n} vertices, built {Gp.n}")
    _require(is_regular(Gp, deg), f"{kind} Gamma': not {deg}-regular")
    gap = diameter(G) - diameter(Gp)
    _require(gap == counterexample_gap(kind, m, d), f"{kind} Gamma': diameter gap {gap}")
    return G, Gp


# -- block paths ------------------------------------------------------------

def block_path_expr(d: int, kind: str, m: int) -> str:
    """Path-like graph with ``m`` middle blocks ``L_d`` or ``M_d``."""
    _require(kind in ("L", "M"), f"kind must be 'L' or 'M', got {kind!r}")
    _require(m >= 2, f"need m >= 2 middle blocks, got {m}")
    _require(d >= 3 if kind == "L" else d >= 4, f"d={d} out of range for kind {kind}")
    if kind == "L":
        if d % 2:
            return table1_expr(d, 0, m + 3)
        return f"K{d}+(K1+K1+K{d - 1})_{m}+K1+K1+K{d}"
    if d % 2 == 0:
        return table1_expr(d, 0, m + 3)
    return f"K{d}+(K1+K2+K{d - 2})_{m}+K1+K{d}"


def block_path(d: int, kind: str, m: int) -> Graph:
    G, _ = build(block_path_expr(d, kind, m))
    _require(degree_profile(G).min == d, f"block_path({d},{kind},{m}) has minimum degree != {d}")
    return G


def middle_block_count(G: Graph) -> int:
    """Number of non-end blocks with at least three vertices."""
    bd = block_decomposition(G)
    ends = set(bd.end_blocks)
    return sum(1 for i, b in enumerate(bd.blocks) if i not in ends and len(b) >= 3)


# -- scaling families -------------------------------------------------------

@dataclass(frozen=True)
class FamilyMember:
    """A built family member with the data the sweeps need.

    ``target`` is the constant ``c`` in ``mu ~ c pi^2 / n^2``. When
    ``upper_only`` is set the family is only known to satisfy
    ``mu <= (1+o(1)) c pi^2/n^2``. ``regular_core`` is ``None`` for exactly
    regular members, otherwise whether every vertex far from both ends has
    the nominal degree.
    """

    graph: Graph
    expr: str
    d: int
    target: float
    upper_only: bool = False
    regular_core: bool | None = None


def _core_regular(G: Graph, d: int, window: int) -> bool:
    da, db = bfs_distances(G, 0), bfs_distances(G, G.n - 1)
    return all(G.degree(v) == d for v in range(G.n) if min(da[v], db[v]) > window)


def scaling_expr(kind: str, m: int, d: int | None = None) -> str:
    if kind == "iv":
        _require(m >= 1, f"m must be >= 1, got {m}")
        return f"K4+(K1+K2+K2)_{m}+K3"
    _require(d is not None, f"{kind} needs a degree")
    if kind == "iii_base":
        _require(d >= 5 and m >= 3, f"iii_base needs d >= 5 and m >= 3, got d={d}, m={m}")
        if d % 2 == 0:
            return (f"K3+K{d - 2}^-2+Kb2+K2+K{d - 3}+" + _grp(f"K2+K2+K{d - 3}", m - 3)
                    + f"K2+Kb2+K{d - 2}^-2+K3")
        if d == 5:
            return "K3+Kb3+Kb2+K2+K2+" + _grp("K2+K2+K2", m - 3) + "K2+Kb2+Kb3+K3"
        k = d - 3
        return (f"K4+K{k}^-2+K2+K2+K{k}+" + _grp(f"K2+K2+K{k}", m - 3)
                + f"K2+K2+K{k}^-2+K4")
    if kind == "iii_odd":
        _require(d >= 5 and d % 2 and m >= 2, "iii_odd needs odd d >= 5, m >= 2")
        return f"((K1+K{d + 1}+K1)^-2)_{m}"
    if kind == "iii_even":
        _require(d >= 6 and d % 2 == 0 and m >= 2, "iii_even needs even d >= 6, m >= 2")
        return f"((K1+K{d - 1}+K2)^-1)_{m}"
    raise FamilyError(f"unknown scaling family {kind!r}")


def scaling_family(kind: str, m: int, d: int | None = None) -> FamilyMember:
    """Members of the sequences used for the asymptotic scaling claims."""
    expr = scaling_expr(kind, m, d)
    G, _ = build(expr)
    if kind == "iv":
        _require(degree_profile(G).min == 4, "iv member must have minimum degree 4")
        return FamilyMember(G, expr, 4, 4.0)
    if kind == "iii_base":
        _require(G.n == (d + 1) * m + 4, f"iii_base order {G.n} != {(d + 1) * m + 4}")
        _require(is_regular(G, d), f"iii_base member is not {d}-regular")
        return FamilyMember(G, expr, d, 4.0 * (d - 3))
    core = _core_regular(G, d, d + 3)
    _require(core, f"{kind} core is not {d}-regular")
    target = d + 1 if kind == "iii_odd" else 2 * (d - 1)
    return FamilyMember(G, expr, d, float(target), upper_only=True, regular_core=core)


def block_path_member(d: int, kind: str, m: int) -> FamilyMember:
    expr = block_path_expr(d, kind, m)
    G, _ = build(expr)
    target = 2 * (d - 2) if kind == "M" else d - 1
    return FamilyMember(G, expr, d, float(target))


FAMILY_NAMES = ("L", "M", "iii_base", "iii_odd", "iii_even", "iv")


def family_member(name: str, d: int | None, m: int) -> FamilyMember:
    """Dispatch on a sweep family name."""
    if name in ("L", "M"):
        _require(d is not None, f"family {name} needs a degree")
        return block_path_member(d, name, m)
    if name in FAMILY_NAMES:
        return scaling_family(name, m, d)
    raise FamilyError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
