"""Construction algebra for sequential joins and the notation that drives it.

A construction string such as ``K2+K2^-1+(K1+K1+K2)_3`` is parsed into an
expression tree and evaluated into a :class:`~algconn.graph.Graph` plus the
ordered cell partition recording every primitive's vertex range.

Operators act on the boundary between the last cell of the left operand and
the first cell of the right operand:

``+``      full join
``u+1``    disjoint union plus the identity matching
``+-1``    full join minus the identity matching
``o``      attach an end block's degree-2 vertex to the terminal cell

``X^-r`` / ``X^+r`` remove/add canonical round-robin 1-factors on the whole
vertex span of ``X``. ``(e)_m`` repeats ``e`` ``m`` times joined by ``+``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .graph import CellPartition, Graph, GraphError, build_graph

__all__ = [
    "ConstructionError",
    "DSLSyntaxError",
    "Primitive",
    "NamedBlock",
    "FactorMod",
    "Join",
    "UnionPlusOne",
    "JoinMinusOne",
    "Repeat",
    "AttachCirc",
    "Expr",
    "parse",
    "to_string",
    "evaluate",
    "build",
    "primitive",
    "sequential_join",
    "factor_mod",
    "union_with_factor",
    "attach_end_block",
    "round_robin_factor",
    "named_block",
]


class ConstructionError(GraphError):
    """An operator precondition failed during evaluation."""


class DSLSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


# -- expression tree ------------------------------------------------------

@dataclass(frozen=True)
class Primitive:
    kind: str  # "K", "Kb" or "C"
    k: int


@dataclass(frozen=True)
class NamedBlock:
    name: str  # "H1", "H2" or "H3"
    d: int | None = None


@dataclass(frozen=True)
class FactorMod:
    child: "Expr"
    r: int
    sign: str  # "-" or "+"


@dataclass(frozen=True)
class Join:
    children: tuple["Expr", ...]


@dataclass(frozen=True)
class UnionPlusOne:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class JoinMinusOne:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Repeat:
    child: "Expr"
    m: int


@dataclass(frozen=True)
class AttachCirc:
    """``chain o block`` (side ``"right"``) or ``block o chain`` (side ``"left"``)."""

    chain: "Expr"
    block: "Expr"
    side: str


Expr = Union[Primitive, NamedBlock, FactorMod, Join, UnionPlusOne, JoinMinusOne, Repeat, AttachCirc]

_COMPOUND = (Join, UnionPlusOne, JoinMinusOne, AttachCirc)


# -- tokenizer ------------------------------------------------------------

def _tokenize(text: str) -> list[tuple[str, object, int]]:
    chars, off = [], 0
    for c in text:
        if not c.isspace():
            chars.append((c, off))
        off += len(c.encode("utf-8"))
    s = "".join(c for c, _ in chars)
    pos = [i for _, i in chars] + [off]
    toks: list[tuple[str, object, int]] = []
    i = 0
    fixed = ("u+1", "+-1", "^-", "^+", "H1(", "H2", "H3", "Kb", "K", "C", "(", ")", "_", "{", "}", "+", "o")
    while i < len(s):
        if s[i].isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            toks.append(("INT", int(s[i:j]), pos[i]))
            i = j
            continue
        for f in fixed:
            if s.startswith(f, i):
                toks.append((f, None, pos[i]))
                i += len(f)
                break
        else:
            raise DSLSyntaxError(f"unexpected character {s[i]!r}", pos[i])
    toks.append(("EOF", None, pos[len(s)]))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str | None = None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "integer" if kind == "INT" else repr(kind)
            got = "end of input" if tok[0] == "EOF" else repr(tok[0] if tok[0] != "INT" else tok[1])
            raise DSLSyntaxError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def integer(self, minimum: int) -> int:
        tok = self.take("INT")
        if tok[1] < minimum:
            raise DSLSyntaxError(f"integer {tok[1]} below minimum {minimum}", tok[2])
        return tok[1]

    def expr(self) -> Expr:
        acc = self.term()
        open_join = False
        while self.peek() in ("+", "u+1", "+-1", "o"):
            op = self.take()[0]
            rhs = self.term()
            if op == "+":
                if open_join:
                    acc = Join(acc.children + (rhs,))
                else:
                    acc = Join((acc, rhs))
                    open_join = True
                continue
            open_join = False
            if op == "u+1":
                acc = UnionPlusOne(acc, rhs)
            elif op == "+-1":
                acc = JoinMinusOne(acc, rhs)
            elif isinstance(acc, NamedBlock) and not isinstance(rhs, NamedBlock):
                acc = AttachCirc(rhs, acc, "left")
            else:
                acc = AttachCirc(acc, rhs, "right")
        return acc

    def term(self) -> Expr:
        node = self.atom()
        if self.peek() in ("^-", "^+"):
            sign = self.take()[0][1]
            node = FactorMod(node, self.integer(1), sign)
        return node

    def atom(self) -> Expr:
        kind, _, off = self.toks[self.i]
        if kind in ("K", "Kb"):
            self.take()
            return Primitive(kind, self.integer(1))
        if kind == "C":
            self.take()
            return Primitive("C", self.integer(3))
        if kind == "H1(":
            self.take()
            d = self.integer(4)
            self.take(")")
            return NamedBlock("H1", d)
        if kind in ("H2", "H3"):
            self.take()
            return NamedBlock(kind)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            if self.peek() == "_":
                self.take()
                if self.peek() == "{":
                    self.take()
                    m = self.integer(1)
                    self.take("}")
                else:
                    m = self.integer(1)
                return Repeat(inner, m)
            return inner
        got = "end of input" if kind == "EOF" else repr(kind)
        raise DSLSyntaxError(f"expected a term, found {got}", off)


def parse(text: str) -> Expr:
    """Parse construction notation; syntax errors report a byte offset."""
    p = _Parser(text)
    node = p.expr()
    if p.peek() != "EOF":
        tok = p.toks[p.i]
        raise DSLSyntaxError(f"unexpected {tok[0] if tok[0] != 'INT' else tok[1]!r}", tok[2])
    return node


# -- printer --------------------------------------------------------------

def to_string(node: Expr) -> str:
    """Print ``node`` so that :func:`parse` reproduces it exactly."""

    def wrap(n: Expr) -> str:
        s = to_string(n)
        return f"({s})" if isinstance(n, _COMPOUND) else s

    if isinstance(node, Primitive):
        return f"{node.kind}{node.k}"
    if isinstance(node, NamedBlock):
        return f"H1({node.d})" if node.name == "H1" else node.name
    if isinstance(node, FactorMod):
        inner = to_string(node.child)
        if not isinstance(node.child, (Primitive, NamedBlock, Repeat)):
            inner = f"({inner})"
        return f"{inner}^{node.sign}{node.r}"
    if isinstance(node, Repeat):
        return f"({to_string(node.child)})_{node.m}"
    if isinstance(node, Join):
        first, *rest = node.children
        head = f"({to_string(first)})" if isinstance(first, Join) else to_string(first)
        return "+".join([head] + [wrap(c) for c in rest])
    if isinstance(node, UnionPlusOne):
        return f"{to_string(node.left)} u+1 {wrap(node.right)}"
    if isinstance(node, JoinMinusOne):
        return f"{to_string(node.left)} +-1 {wrap(node.right)}"
    if isinstance(node, AttachCirc):
        if node.side == "right":
            return f"{to_string(node.chain)} o {wrap(node.block)}"
        # a left-side block is a NamedBlock, so it never needs brackets
        return f"{to_string(node.block)} o {wrap(node.chain)}"
    raise TypeError(f"not a construction expression: {node!r}")


# -- canonical 1-factors --------------------------------------------------

def round_robin_factor(N: int, j: int) -> list[tuple[int, int]]:
    """Factor ``j`` of the circle-method 1-factorization of ``K_N`` (``N`` even).

    Vertex ``N-1`` is fixed and paired with ``j mod (N-1)``; the rest pair
    ``(j+i)`` with ``(j-i)`` modulo ``N-1``.
    """
    if N % 2 or N < 2:
        raise ConstructionError(f"1-factor needs a positive even order, got {N}")
    M = N - 1
    j %= M
    pairs = [(j, N - 1)]
    for i in range(1, N // 2):
        pairs.append(((j + i) % M, (j - i) % M))
    return [(a, b) if a < b else (b, a) for a, b in pairs]


# -- named end blocks -----------------------------------------------------

# Edge lists on labels r1..r8; attachment vertex is r8 (H2) or r7 (H3).
_H2_EDGES = [(5, 2), (1, 2), (1, 5), (1, 3), (1, 4), (2, 3), (2, 4), (3, 6), (4, 3),
             (4, 7), (5, 7), (5, 6), (6, 7), (7, 8), (6, 8)]
_H2_ORDER = [8, 6, 7, 3, 4, 5, 1, 2]
_H3_EDGES = [(5, 2), (1, 2), (1, 5), (1, 3), (1, 4), (2, 3), (2, 4), (3, 6), (4, 3),
             (4, 6), (5, 6), (7, 6), (5, 7)]
_H3_ORDER = [7, 5, 6, 1, 2, 3, 4]


def _named_layout(name: str, d: int | None) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edges with the attachment vertex at local index 0."""
    if name == "H2":
        idx = {lab: i for i, lab in enumerate(_H2_ORDER)}
        return 8, [(idx[a], idx[b]) for a, b in _H2_EDGES]
    if name == "H3":
        idx = {lab: i for i, lab in enumerate(_H3_ORDER)}
        return 7, [(idx[a], idx[b]) for a, b in _H3_EDGES]
    if name == "H1":
        if d is None or d < 4 or d % 2:
            raise ConstructionError(f"H1 needs an even degree d >= 4, got {d}")
        # 0 attach; 1..4 path p2, p5, p3, p4 in that index order; then K_{d-2}^{-1}
        p2, p5, p3, p4 = 1, 2, 3, 4
        edges = [(0, p2), (0, p5), (p2, p3), (p3, p4), (p4, p5)]
        k = d - 2
        cell = list(range(5, 5 + k))
        missing = set(round_robin_factor(k, 1))
        for a in range(k):
            for b in range(a + 1, k):
                if (a, b) not in missing:
                    edges.append((cell[a], cell[b]))
        for p in (p2, p5, p3, p4):
            edges.extend((p, c) for c in cell)
        return 5 + k, edges
    raise ConstructionError(f"unknown end block {name!r}")


# -- evaluator ------------------------------------------------------------

@dataclass
class _Frag:
    start: int
    size: int
    cells: list[tuple[int, int]]
    attach: int | None = None


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: set[tuple[int, int]] = set()

    def alloc(self, k: int) -> int:
        s = self.n
        self.n += k
        return s

    def add(self, u: int, v: int) -> None:
        self.edges.add((u, v) if u < v else (v, u))

    def degree_in(self, v: int, lo: int, hi: int) -> int:
        return sum(1 for a, b in self.edges if (a == v and lo <= b < hi) or (b == v and lo <= a < hi))

    def add_graph(self, G: Graph) -> _Frag:
        s = self.alloc(G.n)
        for u, v in G.edges():
            self.edges.add((s + u, s + v))
        return _Frag(s, G.n, [(s, G.n)])

    def primitive(self, kind: str, k: int) -> _Frag:
        if k < 1 or (kind == "C" and k < 3):
            raise ConstructionError(f"{kind}{k}: order out of range")
        s = self.alloc(k)
        if kind == "K":
            for a in range(s, s + k):
                for b in range(a + 1, s + k):
                    self.edges.add((a, b))
        elif kind == "C":
            for a in range(k):
                self.add(s + a, s + (a + 1) % k)
        elif kind != "Kb":
            raise ConstructionError(f"unknown primitive kind {kind!r}")
        return _Frag(s, k, [(s, k)])

    def named(self, name: str, d: int | None, side: str) -> _Frag:
        size, edges = _named_layout(name, d)
        s = self.alloc(size)
        pos = (lambda i: s + i) if side == "right" else (lambda i: s + size - 1 - i)
        for a, b in edges:
            self.add(pos(a), pos(b))
        return _Frag(s, size, [(s, size)], attach=pos(0))

    def factor(self, f: _Frag, r: int, sign: str) -> _Frag:
        N = f.size
        if N % 2:
            raise ConstructionError(f"factor modification needs even order, got {N}")
        if r > N - 1:
            raise ConstructionError(f"K_{N} has only {N - 1} 1-factors, asked for {r}")
        for j in range(1, r + 1):
            for a, b in round_robin_factor(N, j):
                e = (f.start + a, f.start + b)
                if sign == "-":
                    if e not in self.edges:
                        raise ConstructionError(f"factor {j} edge {e} is missing, cannot remove it")
                    self.edges.remove(e)
                else:
                    if e in self.edges:
                        raise ConstructionError(f"factor {j} edge {e} already present, cannot add it")
                    self.edges.add(e)
        return _Frag(f.start, f.size, f.cells)

    @staticmethod
    def _merge(a: _Frag, b: _Frag) -> _Frag:
        return _Frag(a.start, a.size + b.size, a.cells + b.cells)

    def join(self, a: _Frag, b: _Frag, mode: str = "+") -> _Frag:
        (sa, ka), (sb, kb) = a.cells[-1], b.cells[0]
        if mode != "+" and ka != kb:
            raise ConstructionError(f"1-factor between cells needs equal sizes, got {ka} and {kb}")
        for i in range(ka):
            for j in range(kb):
                if mode == "+" or (mode == "-1" and i != j) or (mode == "u1" and i == j):
                    self.edges.add((sa + i, sb + j))
        return self._merge(a, b)

    def attach(self, chain: _Frag, block: _Frag, side: str) -> _Frag:
        lo, hi = block.start, block.start + block.size
        v = block.attach
        if v is None:
            deg2 = [u for u in range(lo, hi) if self.degree_in(u, lo, hi) == 2]
            if len(deg2) != 1:
                raise ConstructionError(
                    f"end block needs a unique degree-2 vertex, found {len(deg2)}")
            v = deg2[0]
        elif self.degree_in(v, lo, hi) != 2:
            raise ConstructionError("attachment vertex does not have degree 2 in its block")
        s, k = chain.cells[-1] if side == "right" else chain.cells[0]
        for u in range(s, s + k):
            self.add(v, u)
        return self._merge(chain, block) if side == "right" else self._merge(block, chain)

    def eval(self, node: Expr, side: str = "right") -> _Frag:
        if isinstance(node, Primitive):
            return self.primitive(node.kind, node.k)
        if isinstance(node, NamedBlock):
            return self.named(node.name, node.d, side)
        if isinstance(node, FactorMod):
            return self.factor(self.eval(node.child), node.r, node.sign)
        if isinstance(node, Join):
            acc = self.eval(node.children[0])
            for c in node.children[1:]:
                acc = self.join(acc, self.eval(c))
            return acc
        if isinstance(node, UnionPlusOne):
            a = self.eval(node.left)
            return self.join(a, self.eval(node.right), "u1")
        if isinstance(node, JoinMinusOne):
            a = self.eval(node.left)
            return self.join(a, self.eval(node.right), "-1")
        if isinstance(node, Repeat):
            if node.m < 1:
                raise ConstructionError(f"repetition count must be >= 1, got {node.m}")
            acc = self.eval(node.child)
            for _ in range(node.m - 1):
                acc = self.join(acc, self.eval(node.child))
            return acc
        if isinstance(node, AttachCirc):
            if node.side == "right":
                chain = self.eval(node.chain)
                block = self.eval(node.block, "right")
            else:
                block = self.eval(node.block, "left")
                chain = self.eval(node.chain)
            return self.attach(chain, block, node.side)
        raise TypeError(f"not a construction expression: {node!r}")

    def finish(self, f: _Frag) -> tuple[Graph, CellPartition]:
        G = build_graph(self.n, sorted(self.edges))
        P = CellPartition([range(s, s + k) for s, k in f.cells], self.n)
        return G, P


def evaluate(expr: Expr) -> tuple[Graph, CellPartition]:
    """Evaluate an expression tree; vertex indices follow textual order."""
    b = _Builder()
    return b.finish(b.eval(expr))


def build(text: str) -> tuple[Graph, CellPartition]:
    """Parse and evaluate in one step."""
    return evaluate(parse(text))


# -- graph-level operators ------------------------------------------------

def primitive(kind: str, k: int) -> Graph:
    """``K_k`` (``"K"``), its complement (``"Kb"``) or the cycle ``C_k`` (``"C"``)."""
    b = _Builder()
    return b.finish(b.primitive(kind, k))[0]


def named_block(name: str, d: int | None = None) -> tuple[Graph, int]:
    """An end block and the index of its attachment vertex."""
    b = _Builder()
    f = b.named(name, d, "right")
    return b.finish(f)[0], f.attach


def sequential_join(parts: Sequence[Graph]) -> tuple[Graph, CellPartition]:
    """Join every vertex of each part to every vertex of the next."""
    if not parts:
        raise ConstructionError("sequential join of an empty list")
    b = _Builder()
    acc = b.add_graph(parts[0])
    for G in parts[1:]:
        acc = b.join(acc, b.add_graph(G))
    return b.finish(acc)


def factor_mod(G: Graph, r: int, sign: str) -> Graph:
    """Remove (``"-"``) or add (``"+"``) canonical factors ``1..r`` of ``K_n``."""
    if sign not in ("-", "+"):
        raise ConstructionError(f"sign must be '-' or '+', got {sign!r}")
    if r < 1:
        raise ConstructionError(f"r must be >= 1, got {r}")
    b = _Builder()
    f = b.add_graph(G)
    return b.finish(b.factor(f, r, sign))[0]


def union_with_factor(G: Graph, H: Graph, mode: str) -> Graph:
    """``G u+1 H`` (mode ``"UnionPlusOne"``) or ``G +-1 H`` (``"JoinMinusOne"``)."""
    codes = {"UnionPlusOne": "u1", "JoinMinusOne": "-1"}
    if mode not in codes:
        raise ConstructionError(f"unknown mode {mode!r}")
    if G.n != H.n:
        raise ConstructionError(f"1-factor between graphs needs equal orders, got {G.n} and {H.n}")
    b = _Builder()
    a = b.add_graph(G)
    return b.finish(b.join(a, b.add_graph(H), codes[mode]))[0]


def attach_end_block(
    chain: Graph,
    terminal_cell: Sequence[int],
    block: Graph,
    attach: int,
    side: str = "right",
) -> Graph:
    """Join ``block``'s degree-2 vertex ``attach`` to every vertex of ``terminal_cell``.

    The block's vertices follow the chain's for ``side="right"`` and precede
    them for ``side="left"``.
    """
    if not terminal_cell:
        raise ConstructionError("terminal cell is empty")
    if block.degree(attach) != 2:
        raise ConstructionError(
            f"attachment vertex {attach} has degree {block.degree(attach)}, expected 2")
    b = _Builder()
    if side == "right":
        cf, bf = b.add_graph(chain), b.add_graph(block)
    elif side == "left":
        bf, cf = b.add_graph(block), b.add_graph(chain)
    else:
        raise ConstructionError(f"side must be 'left' or 'right', got {side!r}")
    v = bf.start + attach
    for u in terminal_cell:
        if not 0 <= u < chain.n:
            raise ConstructionError(f"terminal cell vertex {u} outside the chain")
        b.add(v, cf.start + u)
    return build_graph(b.n, sorted(b.edges))
