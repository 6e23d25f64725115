"""Command-line interface.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys

from . import families
from .errors import GraphError, NumericalError, PreconditionError
from .graph import PairState, Perturbation, all_twin_pairs, perturb
from .io import dumps, graph_dumps, graph_loads, graph_to_dict, parse_time
from .spectral import verify_lemma1
from .transfer import (
    LPST_TOL,
    SearchConfig,
    apply_lpst_preservation,
    apply_periodicity_to_lpst,
    apply_pgst_preservation,
    check_pair_lpst,
    construct_kn_minus_edge,
    construct_kn_minus_matching,
    scan_fidelity,
    search_pgst,
)


class UsageError(Exception):
    pass


def _pair(text: str) -> PairState:
    try:
        a, b = (int(x) for x in text.split(","))
        return PairState(a, b)
    except (ValueError, PreconditionError):
        raise argparse.ArgumentTypeError(f"expected a vertex pair like 0,1, got {text!r}") from None


def _pairs(text: str) -> list[PairState]:
    return [_pair(chunk) for chunk in text.split(";") if chunk.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _time(text: str) -> float:
    try:
        return parse_time(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_graph(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
    return graph_loads(text)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        horizon=args.horizon,
        grid_points=args.grid,
        refine_iterations=args.refine,
        epsilon=args.eps,
    )


def cmd_twins(args) -> int:
    g = _read_graph(args.graph)
    _emit(dumps([[p.a, p.b] for p in all_twin_pairs(g)]), args.output)
    return 0


def cmd_check_pst(args) -> int:
    g = _read_graph(args.graph)
    cert = check_pair_lpst(g, args.src, args.dst, args.time, args.tol)
    _emit(dumps(cert.to_dict()), args.output)
    return 0 if cert.verdict else 1


def cmd_search(args) -> int:
    g = _read_graph(args.graph)
    cert = search_pgst(g, args.src, args.dst, _search_config(args))
    _emit(dumps(cert.to_dict()), args.output)
    return 0 if cert.verdict else 1


def cmd_perturb(args) -> int:
    g = _read_graph(args.graph)
    _emit(graph_dumps(perturb(g, Perturbation(args.pair, args.alpha))), args.output)
    return 0


def cmd_family(args) -> int:
    tag, params = args.tag, args.params
    connection_set: frozenset[int] = frozenset()
    matching: tuple = ()
    try:
        if tag == "circulant":
            if len(params) != 2:
                raise UsageError("usage: family circulant N S1,S2,...")
            connection_set = frozenset(_ints(params[1]))
            params = params[:1]
        elif tag == "kn-minus-matching":
            if len(params) not in (1, 2):
                raise UsageError("usage: family kn-minus-matching N [A,B;C,D;...]")
            if len(params) == 2:
                matching = tuple((p.a, p.b) for p in _pairs(params[1]))
            params = params[:1]
        ints = tuple(int(x) for x in params)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(str(exc)) from None
    spec = families.FamilySpec(tag, ints, connection_set, matching)
    _emit(graph_dumps(spec.build()), args.output)
    return 0


def cmd_scan(args) -> int:
    g = _read_graph(args.graph)
    rows = scan_fidelity(g, args.src, args.dst, args.t0, args.t1, args.steps)
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "fidelity"])
    for t, f in rows:
        writer.writerow([f"{t:.15g}", f"{f:.15g}"])
    _emit(buf.getvalue(), args.output)
    return 0


def cmd_verify_lemma1(args) -> int:
    g = _read_graph(args.graph)
    residual, ok = verify_lemma1(g, Perturbation(args.pair, args.alpha), args.time, args.tol)
    report = {
        "pair": [args.pair.a, args.pair.b],
        "alpha": args.alpha,
        "time": args.time,
        "residual": residual,
        "tolerance": args.tol,
        "pass": ok,
    }
    _emit(dumps(report), args.output)
    return 0 if ok else 1


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "cor1":
        _need(args, "n", "pair")
        g, certs = construct_kn_minus_edge(args.n, args.pair.a, args.pair.b, args.time)
    elif kind == "cor2":
        _need(args, "n", "matching", "target")
        g, certs = construct_kn_minus_matching(args.n, args.matching, args.target, args.time)
    elif kind == "thm2b":
        _need(args, "graph", "pair", "alpha", "src", "dst")
        base = _read_graph(args.graph)
        known = check_pair_lpst(base, args.src, args.dst, args.time, args.tol)
        g, cert = apply_lpst_preservation(base, Perturbation(args.pair, args.alpha), known)
        certs = [cert]
    elif kind == "thm3b":
        _need(args, "graph", "pair", "alpha", "q")
        base = _read_graph(args.graph)
        a = args.pair.a
        periodic = [PairState(a, q) for q in args.q]
        g, certs = apply_periodicity_to_lpst(
            base, Perturbation(args.pair, args.alpha), periodic, args.time, args.tol
        )
    else:
        _need(args, "graph", "pair", "alpha", "src", "dst")
        base = _read_graph(args.graph)
        g, cert = apply_pgst_preservation(
            base, Perturbation(args.pair, args.alpha), args.src, args.dst, _search_config(args)
        )
        certs = [cert]
    out = {"graph": graph_to_dict(g), "certificates": [c.to_dict() for c in certs]}
    _emit(dumps(out), args.output)
    return 0 if all(c.verdict for c in certs) else 1


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join(n if n == "graph" else "--" + n for n in missing)
        raise UsageError(f"construct {args.kind} requires {flags}")


def _add_search_flags(p) -> None:
    p.add_argument("--horizon", type=float, default=50.0)
    p.add_argument("--grid", type=int, default=20001)
    p.add_argument("--refine", type=int, default=60)
    p.add_argument("--eps", type=float, default=0.01)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairtransfer",
        description="Laplacian pair state transfer on graphs with twin-vertex perturbations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help, graph=True):
        p = sub.add_parser(name, help=help)
        if graph:
            p.add_argument("graph", help="graph JSON file, or - for stdin")
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.set_defaults(func=func)
        return p

    command("twins", cmd_twins, "list all twin vertex pairs")

    p = command("check-pst", cmd_check_pst, "check perfect pair state transfer at one time")
    p.add_argument("--src", type=_pair, required=True)
    p.add_argument("--dst", type=_pair, required=True)
    p.add_argument("--time", type=_time, required=True)
    p.add_argument("--tol", type=float, default=LPST_TOL)

    p = command("search", cmd_search, "search a time horizon for the best transfer")
    p.add_argument("--src", type=_pair, required=True)
    p.add_argument("--dst", type=_pair, required=True)
    _add_search_flags(p)

    p = command("perturb", cmd_perturb, "add alpha to the weight of one edge")
    p.add_argument("--pair", type=_pair, required=True)
    p.add_argument("--alpha", type=float, required=True)

    p = command("family", cmd_family, "generate a graph family", graph=False)
    p.add_argument("tag", choices=families.FAMILY_TAGS)
    p.add_argument("params", nargs="*")

    p = command("scan", cmd_scan, "sample fidelity over a time range as CSV")
    p.add_argument("--src", type=_pair, required=True)
    p.add_argument("--dst", type=_pair, required=True)
    p.add_argument("--t0", type=_time, default=0.0)
    p.add_argument("--t1", type=_time, required=True)
    p.add_argument("--steps", type=int, default=101)

    p = command("verify-lemma1", cmd_verify_lemma1, "check the twin perturbation factorization")
    p.add_argument("--pair", type=_pair, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--time", type=_time, required=True)
    p.add_argument("--tol", type=float, default=1e-9)

    p = command("construct", cmd_construct, "build a certified transfer instance", graph=False)
    p.add_argument("kind", choices=["thm2b", "thm3b", "cor1", "cor2", "thm4"])
    p.add_argument("graph", nargs="?", help="input graph JSON (thm2b, thm3b, thm4)")
    p.add_argument("--n", type=int)
    p.add_argument("--pair", type=_pair)
    p.add_argument("--alpha", type=float)
    p.add_argument("--src", type=_pair)
    p.add_argument("--dst", type=_pair)
    p.add_argument("--q", type=_ints, help="comma-separated partner vertices (thm3b)")
    p.add_argument("--matching", type=_pairs, help="edges like 0,1;2,3")
    p.add_argument("--target", type=_pair)
    p.add_argument("--time", type=_time, default=parse_time("pi/2"))
    p.add_argument("--tol", type=float, default=LPST_TOL)
    _add_search_flags(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, GraphError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
