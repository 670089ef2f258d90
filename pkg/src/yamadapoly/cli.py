"""Command-line entry point: ``yamadapoly <command> ...``.

Exit codes: 0 success, 1 usage error, 2 computation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Callable, Iterator, Optional, Sequence, TextIO

from . import chainpoly, diagram, graph, hpoly, ring, yamada, zeros
from .config import Config, ConfigError

USAGE_ERROR = 1
COMPUTE_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> graph.MultiGraph:
    return graph.parse_graph(_read(path))


def _load_diagram(path: str) -> diagram.SpatialDiagram:
    return diagram.parse_diagram(_read(path))


def _key_value(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise UsageError(f"expected label=value, got {text!r}")
    return key, value


# -- commands -----------------------------------------------------------------------


def cmd_h_poly(args, cfg: Config, out: TextIO) -> None:
    g = _load_graph(args.graph)
    out.write(f"{hpoly.h_poly(g, args.method, max_edges=cfg.max_subset_edges)}\n")


def cmd_flow_poly(args, cfg: Config, out: TextIO) -> None:
    g = _load_graph(args.graph)
    out.write(chainpoly.flow_poly(g).to_string("q") + "\n")


def cmd_chain_poly(args, cfg: Config, out: TextIO) -> None:
    g = _load_graph(args.graph)
    assignment = {k: ring.parse_poly(v) for k, v in map(_key_value, args.assign or [])}
    w = ring.parse_poly(args.w)
    if args.method == "definition":
        value = chainpoly.chain_definition(g, assignment, w, max_edges=cfg.max_subset_edges)
    else:
        value = chainpoly.chain_recursive(g, assignment, w)
    out.write(f"{value}\n")


def cmd_compose(args, cfg: Config, out: TextIO) -> None:
    g = _load_graph(args.graph)
    reps = {}
    for item in args.replace or []:
        label, spec = _key_value(item)
        parts = spec.rsplit(":", 2)
        if len(parts) != 3:
            raise UsageError(f"expected label=file:u:v, got {item!r}")
        path, u, v = parts
        k = _load_graph(path)
        reps[label] = chainpoly.replacement_data(k, k.vertex_by_name(u), k.vertex_by_name(v))
    out.write(f"{chainpoly.compose_h_via_chain(g, reps)}\n")


def cmd_yamada(args, cfg: Config, out: TextIO) -> None:
    d = _load_diagram(args.diagram)
    out.write(f"{yamada.r_state_sum(d, max_crossings=cfg.max_crossings, threads=cfg.threads)}\n")


def _bead(name: str):
    if name in ("infplus", "infminus", "edge"):
        return name
    return _load_diagram(name)


def cmd_family(args, cfg: Config, out: TextIO) -> None:
    bead = _bead(args.bead)
    pair = yamada.bead_values(bead, max_crossings=cfg.max_crossings)
    value = yamada.r_replace(args.kind, [pair] * args.size)
    if args.emit_diagram:
        d = yamada.build_replaced_diagram(args.kind, [bead] * args.size)
        Path(args.emit_diagram).write_text(diagram.serialize_diagram(d))
    out.write(f"{value}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise UsageError("sizes must be positive integers")
    return values


def cmd_zeros_scan(args, cfg: Config, out: TextIO) -> None:
    target = Path(args.out or cfg.out_dir)
    summary = zeros.density_scan(
        args.family, args.s, _int_list(args.n), out=target,
        tol=args.tol if args.tol is not None else cfg.root_tol,
        threads=cfg.threads, max_degree=cfg.max_root_degree, exclusion=cfg.region_eps,
    )
    if args.quiet:
        return
    if summary["degenerate"]:
        out.write(f"degenerate family {summary['family']} s={args.s}: not scanned\n")
        return
    for row in summary["per_n"]:
        out.write(f"n={row['n']} roots={row['roots']} max_residual={row['max_residual']:.3e} "
                  f"max_bkw_residual={row['max_bkw_residual']:.6f}\n")


def _window(text: str) -> tuple[float, float, float, float]:
    try:
        a, b, c, d = (float(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected window a,b,c,d, got {text!r}") from None
    if not (a < b and c < d):
        raise UsageError("window needs a < b and c < d")
    return a, b, c, d


def cmd_zeros_region(args, cfg: Config, out: TextIO) -> None:
    a, b, c, d = _window(args.window)
    grid = zeros.grid_region(args.which, (a, b), (c, d), args.res)
    roots = []
    if args.roots:
        try:
            roots = [complex(float(r["re"]), float(r["im"])) for r in csv.DictReader(io.StringIO(_read(args.roots)))]
        except (KeyError, TypeError, ValueError):
            raise UsageError(f"{args.roots} is not a roots CSV from zeros scan") from None
    svg = zeros.region_svg(grid, (a, b), (c, d), roots, px_per_unit=args.px)
    target = Path(args.out)
    target.write_text(svg)
    if args.quiet:
        return
    inside = sum(map(sum, grid))
    out.write(f"{zeros.region_name(args.which)}: {inside}/{args.res * args.res} cells inside -> {target}\n")


# -- selftest -------------------------------------------------------------------------


def _selftest_checks(cfg: Config, flip: bool) -> Iterator[tuple[str, Callable[[], tuple]]]:
    """Yields ``(name, thunk)``; the thunk returns ``(got, expected)`` or raises."""
    S = ring.sigma()
    yield "sigma", lambda: (S.terms, {1: 1, 0: 1, -1: 1})
    yield "H(point)", lambda: (hpoly.h_delcon(graph.MultiGraph.from_edges([], [0])), ring.LaurentPoly.const(-1))
    for k in range(1, 9):
        yield f"H(T_{k})", lambda k=k: (hpoly.h_delcon(graph.family("tree", k)), ring.ZERO)
        yield f"H(C_{k})", lambda k=k: (hpoly.h_delcon(graph.family("cycle", k)), S)
        yield f"H(B_{k})", lambda k=k: (hpoly.h_delcon(graph.family("bouquet", k)), S ** k * (-1) ** (k - 1))
        yield f"H(Theta_{k})", lambda k=k: (
            hpoly.h_delcon(graph.family("theta", k)),
            ring.rf_reduce(S + (-S) ** k, S + 1).to_poly(),
        )
    yield "H(Theta_3) = sigma(1 - sigma)", lambda: (hpoly.h_closed("theta", 3), S * (1 - S))

    def composed():
        part = chainpoly.replacement_data(graph.family("theta", 2), 0, 1)
        base = graph.family("cycle", 2)
        reps = {base.label(e): part for e in base.edges}
        return chainpoly.compose_h_via_chain(base, reps), S * (S * S - S + 1)

    yield "C_2<Theta_2, Theta_2> = H(Theta_4)", composed
    yield "R[inf+]", lambda: (yamada.r_state_sum(diagram.infinity_plus(), flipped=flip), S.shift(-2))
    yield "R[inf+']", lambda: (
        yamada.r_state_sum(diagram.close_terminals(diagram.infinity_plus()), flipped=flip), S)
    yield "R[positive kink]", lambda: (yamada.r_state_sum(diagram.kink_diagram(True), flipped=flip), S.shift(2))
    closed = {
        "cycle": lambda n: (-S.shift(-2)) ** n + S * (ring.A ** -2 + 1) ** n,
        "theta": lambda n: ring.rf_reduce((-S) ** n + S * ((S + 1).shift(-2) + 1) ** n, 1 + S).to_poly(),
        "bouquet": lambda n: S ** n * (-1) ** (n - 1),
    }
    for fam, formula in closed.items():
        for n in range(1, 5):
            def check(fam=fam, n=n, formula=formula):
                d = yamada.build_replaced_diagram(fam, ["infplus"] * n)
                if len(d.crossings) > cfg.max_crossings:
                    raise hpoly.SizeGuardError(f"{len(d.crossings)} crossings")
                return yamada.r_state_sum(d, max_crossings=cfg.max_crossings, flipped=flip), formula(n)
            yield f"R[{fam}_{n}(inf+)] closed form", check


def run_selftest(cfg: Config, out: TextIO, flip: bool = False) -> int:
    first_failure: Optional[str] = None
    for name, thunk in _selftest_checks(cfg, flip):
        try:
            got, expected = thunk()
        except hpoly.SizeGuardError as exc:
            out.write(f"SKIP {name}: {exc}\n")
            continue
        if got == expected:
            out.write(f"PASS {name}\n")
        else:
            out.write(f"FAIL {name}: got {got}, expected {expected}\n")
            first_failure = first_failure or f"{name}: got {got}, expected {expected}"
    if first_failure:
        sys.stderr.write(f"selftest failed at {first_failure}\n")
        return COMPUTE_ERROR
    return 0


def cmd_selftest(args, cfg: Config, out: TextIO) -> int:
    return run_selftest(cfg, out, flip=args.flip_convention)


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="yamadapoly", description="Yamada polynomials of graphs and spatial graph diagrams.")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--threads", type=int, help="worker processes for state sums and scans")
    p.add_argument("--quiet", action="store_true", help="no summary lines from commands that write files")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("h-poly", help="H(G) of a graph file")
    s.add_argument("graph")
    s.add_argument("--method", choices=["delcon", "definition", "closed"], default="delcon")
    s.set_defaults(func=cmd_h_poly)

    s = sub.add_parser("flow-poly", help="flow polynomial of a graph file, in q")
    s.add_argument("graph")
    s.set_defaults(func=cmd_flow_poly)

    s = sub.add_parser("chain-poly", help="chain polynomial at Laurent-polynomial label values")
    s.add_argument("graph")
    s.add_argument("--assign", action="append", metavar="LABEL=POLY")
    s.add_argument("--w", required=True, metavar="POLY")
    s.add_argument("--method", choices=["recursive", "definition"], default="recursive")
    s.set_defaults(func=cmd_chain_poly)

    s = sub.add_parser("compose", help="H after replacing labelled edges by two-terminal parts")
    s.add_argument("graph")
    s.add_argument("--replace", action="append", metavar="LABEL=FILE:U:V")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("yamada", help="R[g] of a diagram file by state sum")
    s.add_argument("diagram")
    s.set_defaults(func=cmd_yamada)

    s = sub.add_parser("family", help="R of a cycle, theta or bouquet with every edge replaced by a bead")
    s.add_argument("--kind", choices=["cycle", "theta", "bouquet"], required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--bead", default="infplus", help="infplus, infminus, edge or a diagram file with terminals")
    s.add_argument("--emit-diagram", metavar="PATH")
    s.set_defaults(func=cmd_family)

    z = sub.add_parser("zeros", help="root scans and density regions")
    zsub = z.add_subparsers(dest="zeros_command", parser_class=_Parser)
    s = zsub.add_parser("scan")
    s.add_argument("--family", choices=list(zeros.FAMILIES), required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--n", required=True, metavar="N1,N2,...")
    s.add_argument("--tol", type=float)
    s.add_argument("--out")
    s.set_defaults(func=cmd_zeros_scan)
    s = zsub.add_parser("region")
    s.add_argument("--which", choices=["omega", "sigma", "plus", "minus"], required=True)
    s.add_argument("--window", default="-3,3,-3,3", metavar="A,B,C,D")
    s.add_argument("--res", type=int, default=200)
    s.add_argument("--px", type=float, default=100.0, help="pixels per unit")
    s.add_argument("--roots", help="roots.csv from a scan to overlay")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_zeros_region)

    s = sub.add_parser("selftest", help="check the pinned values")
    s.add_argument("--flip-convention", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selftest)
    return p


_COMPUTE_ERRORS = (
    graph.GraphError,
    diagram.DiagramError,
    hpoly.SizeGuardError,
    ring.InexactDivisionError,
    chainpoly.BetaZeroError,
    chainpoly.MissingLabelError,
    zeros.RootFindingError,
    zeros.SingularPointError,
    ValueError,
)


def _glue_window(argv: list[str]) -> list[str]:
    # "--window -2,2,-2,2" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _glue_window(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError(parser.format_usage().strip())
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        cfg = Config.load(args.config).with_overrides(threads=args.threads)
    except (UsageError, ConfigError) as exc:
        sys.stderr.write(f"{exc}\n")
        return USAGE_ERROR
    try:
        code = args.func(args, cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return USAGE_ERROR
    except _COMPUTE_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return COMPUTE_ERROR
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
