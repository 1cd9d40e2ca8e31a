"""Command-line entry point: ``algconn <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .dsl import DSLSyntaxError, build
from .graph import (
    GraphError,
    block_decomposition,
    coarsest_equitable_partition,
    degree_profile,
    diameter,
    is_regular,
    read_graph,
    write_graph,
)
from .spectral import fiedler, quotient_mu, relaxation_time
from .verify import reproduce_counterexamples, scaling_sweep, table1_audit
from .families import FAMILY_NAMES


def _m_range(text: str) -> list[int]:
    parts = text.split(":")
    if not 2 <= len(parts) <= 3:
        raise argparse.ArgumentTypeError(f"expected a:b or a:b:step, got {text!r}")
    try:
        a, b, *rest = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-integer in range {text!r}") from None
    step = rest[0] if rest else 1
    if step < 1 or b < a:
        raise argparse.ArgumentTypeError(f"empty or malformed range {text!r}")
    return list(range(a, b + 1, step))


def _m_list(text: str) -> list[int]:
    try:
        ms = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not ms or min(ms) < 1:
        raise argparse.ArgumentTypeError("m values must be positive")
    return ms


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="algconn", description="Algebraic connectivity toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="evaluate a construction expression and write the graph")
    b.add_argument("expr")
    b.add_argument("-o", dest="output", required=True, help="output graph file")

    m = sub.add_parser("mu", help="print the algebraic connectivity as a CSV row")
    m.add_argument("file")
    m.add_argument("--method", choices=("dense", "quotient"), default="dense")

    d = sub.add_parser("diameter", help="print the diameter")
    d.add_argument("file")

    a = sub.add_parser("analyze", help="summarize structure and spectrum")
    a.add_argument("file")

    v = sub.add_parser("verify", help="run a claim check")
    v.add_argument("claim", choices=("counterexample",))
    v.add_argument("--family", choices=("cubic", "quartic"), required=True)
    v.add_argument("--m", type=_m_range, required=True, help="a:b[:step]")
    v.add_argument("--full", action="store_true", help="allow m up to 260 (slow)")
    v.add_argument("--out", default=".", help="directory for the CSV table")

    s = sub.add_parser("sweep", help="scaling sweep of mu n^2/pi^2")
    s.add_argument("--family", choices=FAMILY_NAMES, required=True)
    s.add_argument("--d", type=int, default=None)
    s.add_argument("--m", type=_m_list, required=True, help="comma-separated m values")
    s.add_argument("--out", required=True, help="output CSV file")

    t = sub.add_parser("table1", help="audit every row of the maximum-diameter table")
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    return p


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _cmd_build(ns, out) -> int:
    G, _ = build(ns.expr)
    write_graph(G, ns.output)
    return 0


def _cmd_mu(ns, out) -> int:
    G = read_graph(ns.file)
    if ns.method == "quotient":
        res = quotient_mu(G, coarsest_equitable_partition(G))
    else:
        res = fiedler(G)
    print(res.csv_row(), file=out)
    return 0


def _cmd_diameter(ns, out) -> int:
    print(diameter(read_graph(ns.file)), file=out)
    return 0


def _cmd_analyze(ns, out) -> int:
    G = read_graph(ns.file)
    prof = degree_profile(G)
    bd = block_decomposition(G)
    res = fiedler(G)
    degs = " ".join(f"{k}:{v}" for k, v in prof.counts.items())
    lines = [
        f"n {G.n}",
        f"edges {G.edge_count}",
        f"degrees min={prof.min} max={prof.max} counts={degs}",
        f"regular {'yes' if is_regular(G) else 'no'}",
        f"blocks {len(bd.blocks)}",
        f"cut_vertices {len(bd.cut_vertices)}",
        f"path_like {'yes' if bd.block_tree_is_path else 'no'}",
        f"diameter {diameter(G)}",
        f"mu {_fmt(res.mu)}",
        f"tau {_fmt(relaxation_time(G))}",
    ]
    print("\n".join(lines), file=out)
    return 0


def _cmd_verify(ns, out) -> int:
    outdir = Path(ns.out)
    if not outdir.is_dir():
        raise OSError(f"output directory {outdir} does not exist")
    reports, _ = reproduce_counterexamples(ns.family, ns.m, full=ns.full, out_dir=outdir)
    for r in reports:
        print(r.summary(), file=out)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} passed", file=out)
    return 1 if failed else 0


def _cmd_sweep(ns, out) -> int:
    rep, text = scaling_sweep(ns.family, ns.d, ns.m)
    Path(ns.out).write_text(text, encoding="ascii")
    print(rep.summary(), file=out)
    return 0 if rep.passed else 1


def _cmd_table1(ns, out) -> int:
    reports = table1_audit([ns.d], ns.m)
    for r in reports:
        print(r.summary(), file=out)
    return 0 if all(r.passed for r in reports) else 1


_COMMANDS = {
    "build": _cmd_build,
    "mu": _cmd_mu,
    "diameter": _cmd_diameter,
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "table1": _cmd_table1,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[ns.command](ns, out)
    except (GraphError, DSLSyntaxError, OSError, ValueError, ArithmeticError) as exc:
        print(f"algconn {ns.command}: error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
