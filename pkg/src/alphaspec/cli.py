"""``alphaspec`` command line: spectrum, verify, sweep, enumerate.

Exit status: 0 on success or a PASS report, 2 for a FINDINGS or FAIL
report, 1 for any error (including bad arguments).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .enumeration import Graph6Error, connected_graphs, decode_graph6, encode_graph6, trees
from .families import FamilySpec, make
from .graph import Graph, GraphError, build, max_degree
from .spectra import AlphaValue, SpectralError, bound_lower_star, bound_sandwich, spectral_radius


class CliError(Exception):
    """User-facing failure; printed without a traceback, exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means FINDINGS here
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    alpha_grid: list[str] = field(default_factory=list)
    caps: dict = field(default_factory=dict)
    corpus: Optional[str] = None
    output: Optional[str] = None
    workers: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        for a in self.alpha_grid:
            AlphaValue.parse(a)  # raises on values outside [0, 1)
        if self.workers < 1:
            raise CliError("--workers must be >= 1")

    def record(self) -> dict:
        """Everything that determines the output; worker count and output path excluded."""
        out = asdict(self)
        del out["workers"], out["output"]
        return out


def _alphas(values: Sequence[str]) -> list[str]:
    out = []
    for chunk in values:
        for text in chunk.split(","):
            text = text.strip()
            if not text:
                continue
            try:
                AlphaValue.parse(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise CliError(f"bad alpha {text!r}: {exc}") from None
            out.append(text)
    return out


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def read_edge_list(path: str) -> Graph:
    """Edge-list file: one ``u v`` pair per line, ``#`` comments.

    An optional first data line holding a single integer sets the order;
    otherwise the order is one more than the largest label.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            try:
                nums = [int(p) for p in parts]
            except ValueError:
                raise CliError(f"{path}:{lineno}: non-integer token in {text!r}") from None
            if len(nums) == 1 and n is None and not edges:
                n = nums[0]
            elif len(nums) == 2:
                edges.append((nums[0], nums[1]))
            else:
                raise CliError(f"{path}:{lineno}: expected 'u v', got {text!r}")
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return build(n, edges)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def _graph_source(args) -> tuple[str, Graph]:
    if args.family:
        return args.family, make(args.family)
    if args.graph6:
        return args.graph6, decode_graph6(args.graph6)
    return args.edges, read_edge_list(args.edges)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    label, g = _graph_source(args)
    grid = _alphas(args.alpha) or ["0"]
    cfg = RunConfig("spectrum", grid, output=args.output)
    lines = [f"graph {label} n={g.n} m={g.edge_count}", f"config {json.dumps(cfg.record(), sort_keys=True)}"]
    for text in grid:
        al = AlphaValue.parse(text)
        res = spectral_radius(g, al)
        lower, upper = bound_sandwich(g, al) if g.edge_count else (0.0, 0.0)
        star = bound_lower_star(max_degree(g), al) if g.edge_count else 0.0
        lines.append(f"alpha {al} lambda {res.lam!r}")
        lines.append("  perron " + " ".join(f"{x:.12g}" for x in res.perron))
        lines.append(f"  residual {res.residual:.3e}")
        lines.append(f"  bounds max_degree_lower {star!r} average_degree_lower {lower!r} edge_upper {upper!r}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_verify(args) -> int:
    from .extremal import report_status_code, verify_theorem

    grid = _alphas(args.alpha) if args.alpha else None
    ns = _ints(args.n) if args.n else None
    cfg = RunConfig("verify", grid or [], {"n": ns}, args.corpus, args.output, args.workers, args.seed)
    rep = verify_theorem(args.theorem, ns, grid, args.workers, args.corpus, args.seed)
    rep.config["run"] = cfg.record()
    _emit(rep.to_json(), args.output)
    print(f"{args.theorem}: {rep.status}", file=sys.stderr)
    for msg in rep.findings:
        print(f"  {msg}", file=sys.stderr)
    return report_status_code(rep.status)


def _decimal(text: str, name: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad {name} {text!r}") from None


def alpha_range(lo: str, hi: str, step: str) -> list[str]:
    """Exact grid lo, lo+step, ..., up to and including hi."""
    a, b, s = _decimal(lo, "--from"), _decimal(hi, "--to"), _decimal(step, "--step")
    if s <= 0:
        raise CliError("--step must be positive")
    if a > b:
        raise CliError("--from must not exceed --to")
    if a < 0 or b >= 1:
        raise CliError("alpha range must lie in [0, 1)")
    out = []
    x = a
    while x <= b:
        out.append(_fmt_alpha(x))
        x += s
    return out


def _fmt_alpha(x: Fraction) -> str:
    """Terminating decimals print as decimals (11/20 -> 0.55); others stay exact."""
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if x.denominator == 1:
        return str(x.numerator)
    return str(float(x)) if d == 1 else str(x)


def cmd_sweep(args) -> int:
    from .extremal import alpha_sweep, sweep_csv

    grid = alpha_range(args.start, args.stop, args.step)
    graphs = [(str(FamilySpec.parse(f)), make(f)) for f in args.family]
    _emit(sweep_csv(alpha_sweep(graphs, grid)), args.output)
    return 0


def cmd_enumerate(args) -> int:
    from .extremal import ClassKey, class_members

    if args.trees is not None:
        n, scope = args.trees, "trees"
    else:
        n, scope = args.connected, "connected"
    if args.corpus is not None:
        scope = "corpus"
    if args.indep is not None:
        graphs = class_members(ClassKey(n, args.indep, scope, args.corpus))
    elif scope == "trees":
        graphs = list(trees(n))
    else:
        graphs = list(connected_graphs(n, args.corpus))
    text = "".join(encode_graph6(g) + "\n" for g in graphs)
    _emit(text, args.output)
    print(f"{len(graphs)} graphs", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alphaspec", description="A_alpha spectral radius toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="lambda_alpha, Perron vector and bounds of one graph")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="family spec, e.g. g12:2,1,1,2")
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--edges", help="edge-list file")
    sp.add_argument("--alpha", action="append", default=[], help="alpha value(s); fractions like 7/9 allowed")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_spectrum)

    vp = sub.add_parser("verify", help="run a verification driver and write a JSON report")
    vp.add_argument("theorem")
    vp.add_argument("--n", help="comma-separated orders")
    vp.add_argument("--alpha", action="append", default=[], help="alpha grid (overrides the default)")
    vp.add_argument("--workers", type=int, default=1)
    vp.add_argument("--corpus", help="graph6 corpus file")
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("-o", "--output")
    vp.set_defaults(func=cmd_verify)

    wp = sub.add_parser("sweep", help="CSV of lambda_alpha over an alpha range")
    wp.add_argument("--family", action="append", required=True)
    wp.add_argument("--from", dest="start", required=True)
    wp.add_argument("--to", dest="stop", required=True)
    wp.add_argument("--step", required=True)
    wp.add_argument("-o", "--output")
    wp.set_defaults(func=cmd_sweep)

    ep = sub.add_parser("enumerate", help="write a class of graphs as graph6")
    which = ep.add_mutually_exclusive_group(required=True)
    which.add_argument("--trees", type=int, metavar="N")
    which.add_argument("--connected", type=int, metavar="N")
    ep.add_argument("--indep", type=int, metavar="I", help="keep independence number I")
    ep.add_argument("--corpus")
    ep.add_argument("-o", "--output")
    ep.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GraphError, Graph6Error, SpectralError, ValueError, OSError) as exc:
        print(f"alphaspec {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
