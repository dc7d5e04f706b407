"""Command-line interface.

Exit codes: 0 success, 1 verified assignment infeasible, 2 bad flags or
unreadable input, 3 optimizer failure, 4 oracle mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import analyzer, engine, graph, oracles, pathwidth
from ._version import __version__

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_OPTIMIZER, EXIT_MISMATCH = 0, 1, 2, 3, 4
THREADS_ENV = "PWCOLOR_THREADS"


class UsageError(Exception):
    pass


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _exponent(text):
    try:
        return analyzer.parse_exponent(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_threads():
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _add_input(p):
    p.add_argument("input", nargs="?", help="DIMACS .col file")
    p.add_argument("--input", dest="input_flag", metavar="FILE", help="DIMACS .col file")
    p.add_argument("--strict", action="store_true", help="reject a wrong declared edge count")


def _add_engine_flags(p):
    p.add_argument("--colors", "-c", type=int, required=True)
    p.add_argument("--degree-switch", "-a", type=int, default=7, dest="a")
    p.add_argument("--alpha", type=float, default=engine.DEFAULT_ALPHA)
    p.add_argument("--no-pathwidth", action="store_true", help="never hand over to the pathwidth DP")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--stats", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwcolor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pwcolor {__version__}")
    parser.add_argument("--config", metavar="JSON", help="defaults for the subcommand's flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="piecewise running-time analysis")
    p.add_argument("--colors", "-c", type=int, required=True)
    p.add_argument("--pieces", "-p", type=_positive, default=1)
    p.add_argument("--degree-switch", "-a", type=int, default=7, dest="a")
    p.add_argument("--subroutine-exponent", type=_exponent, default=0.0, dest="c_prime",
                   help="real or log2:<base>")
    p.add_argument("--counting", action="store_true")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--csv", help="write the per-piece table here")
    p.add_argument("--threads", type=_positive, default=None)

    p = sub.add_parser("verify", help="evaluate a weight assignment on its piece")
    p.add_argument("--weights", required=True)
    p.add_argument("--colors", "-c", type=int, required=True)
    p.add_argument("--counting", action="store_true")
    p.add_argument("--tol", type=float, default=analyzer.FEASIBILITY_TOL)

    for name, text in (("solve", "decide c-colorability"), ("count", "count c-colorings")):
        p = sub.add_parser(name, help=text)
        _add_input(p)
        _add_engine_flags(p)

    p = sub.add_parser("decompose", help="path decomposition of a graph")
    _add_input(p)
    p.add_argument("--method", choices=("auto", "low-degree", "heuristic"), default="auto")
    p.add_argument("--out")

    p = sub.add_parser("gen", help="write a generated graph in DIMACS format")
    p.add_argument("--kind", required=True, choices=("path", "cycle", "complete", "gnp", "bipartite", "petersen"))
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=None, help="second side for bipartite")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("bench", help="run the engine over a directory of .col files")
    p.add_argument("--corpus", required=True)
    p.add_argument("--colors", "-c", type=int, required=True)
    p.add_argument("--mode", choices=("decide", "count"), default="decide")
    p.add_argument("--degree-switch", "-a", type=int, default=7, dest="a")
    p.add_argument("--alpha", type=float, default=engine.DEFAULT_ALPHA)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--timing", action="store_true", help="add a wall-clock column")
    p.add_argument("--threads", type=_positive, default=None)
    p.add_argument("--out")
    parser._subparsers_map = sub.choices
    return parser


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        if not isinstance(data, dict):
            parser.error("config must be a JSON object")
        data = data.get(args.command, data)
        sp = parser._subparsers_map[args.command]
        known = {a.dest for a in sp._actions}
        unknown = sorted(set(data) - known)
        if unknown:
            parser.error(f"unknown config keys for {args.command}: {', '.join(unknown)}")
        sp.set_defaults(**{k.replace("-", "_"): v for k, v in data.items()})
        args = parser.parse_args(argv)
    return parser, args


def _input_path(args) -> str:
    pos, flag = args.input, args.input_flag
    if pos and flag and pos != flag:
        raise UsageError("conflicting input files given positionally and with --input")
    path = pos or flag
    if not path:
        raise UsageError("an input .col file is required")
    return path


def _load_graph(args) -> graph.Graph:
    path = _input_path(args)
    try:
        return graph.read_dimacs(path, strict=args.strict)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except graph.DimacsError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _write(path, text):
    if path:
        Path(path).write_text(text)


# ------------------------------------------------------------- subcommands


def cmd_analyze(args, out) -> int:
    c = args.colors
    if c < 2:
        raise UsageError("analysis needs --colors >= 2")
    if not 3 <= args.a <= 7:
        raise UsageError("--degree-switch must lie in 3..7")
    threads = args.threads or _default_threads()
    try:
        report = analyzer.piecewise_analyze(
            d=c - 1, p=args.pieces, a=args.a, c_prime=args.c_prime, c=c, counting=args.counting, threads=threads
        )
    except analyzer.OptimizerError as exc:
        print(f"optimizer failure: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZER
    _write(args.out, report.to_json() + "\n")
    _write(args.csv, report.to_csv())
    worst = report.worst
    print(f"pieces {args.pieces}  worst piece [{worst.piece.l:.5f}, {worst.piece.u:.5f}]  "
          f"exponent {worst.exponent:.6f}  alpha {worst.weights.alpha:.5f}", file=out)
    print(f"max base {report.max_base:.4f}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        data = json.loads(Path(args.weights).read_text())
        w, piece = analyzer.WeightAssignment.from_dict(data)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load weights: {exc}") from exc
    if piece is None:
        raise UsageError("weight file needs the piece bounds 'l' and 'u'")
    if args.colors < 2:
        raise UsageError("--colors must be >= 2")
    ver = analyzer.verify_assignment(w, piece, args.colors, counting=args.counting, tol=args.tol)
    print(f"feasible {'yes' if ver.feasible else 'no'}", file=out)
    for tag, s in zip(ver.tags, ver.slacks):
        print(f"slack {tag} {s:.6f}", file=out)
    print(f"branching exponent {ver.branching:.6f}", file=out)
    print(f"pathwidth exponent {ver.pathwidth:.6f}", file=out)
    print(f"exponent {ver.exponent:.6f}", file=out)
    print(f"base {ver.base:.4f}", file=out)
    return EXIT_OK if ver.feasible else EXIT_INFEASIBLE


def _engine_overrides(args):
    if not 3 <= args.a <= 7:
        raise UsageError("--degree-switch must lie in 3..7")
    if not 0 <= args.alpha < 1:
        raise UsageError("--alpha must lie in [0, 1)")
    return dict(a=args.a, alpha=args.alpha, use_pathwidth=not args.no_pathwidth)


def _solve(args, out, counting: bool) -> int:
    g = _load_graph(args)
    if args.colors < 0:
        raise UsageError("--colors must be nonnegative")
    kw = _engine_overrides(args)
    if counting:
        res = engine.solve_count(g, args.colors, **kw)
        text = str(res.answer)
    else:
        res = engine.decide_colorable(g, args.colors, **kw)
        text = "YES" if res.answer else "NO"
    if args.oracle:
        try:
            truth = oracles.brute_force_oracle(g, args.colors, "count" if counting else "decide")
        except oracles.OracleSizeError as exc:
            raise UsageError(f"--oracle: {exc}") from exc
        if truth != res.answer:
            print(f"oracle mismatch: engine {res.answer}, brute force {truth}", file=sys.stderr)
            return EXIT_MISMATCH
    print(text, file=out)
    if args.stats:
        print(f"nodes_visited {res.nodes_visited}", file=out)
        print(f"pw_triggered {str(res.pw_triggered).lower()}", file=out)
        if res.pw_triggered:
            print(f"pw_trigger_degree {res.pw_trigger_degree}", file=out)
            print(f"pw_width {res.pw_width}", file=out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    g = _load_graph(args)
    if args.method == "low-degree":
        if g.max_degree() > 2:
            raise UsageError("low-degree method needs maximum degree <= 2")
        pd = pathwidth.decompose_low_degree(g)
    elif args.method == "heuristic":
        pd = pathwidth.decompose_heuristic(g)
    else:
        pd = pathwidth.decompose(g)
    verdict = pathwidth.validate_decomposition(g, pd)
    doc = {
        "bags": [sorted(b) for b in pd.bags],
        "width": pd.width,
        "valid": verdict.ok,
        "violation": verdict.violation,
    }
    _write(args.out, json.dumps(doc) + "\n")
    print(f"width {pd.width}", file=out)
    print(f"valid {'yes' if verdict.ok else 'no'}", file=out)
    if not args.out:
        print(pd.to_json(), file=out)
    return EXIT_OK


def cmd_gen(args, out) -> int:
    try:
        g = graph.generate(args.kind, n=args.n, p=args.p, seed=args.seed, m=args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = graph.write_dimacs(g, comment=f"pwcolor gen kind={args.kind} n={args.n} p={args.p} seed={args.seed}")
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    root = Path(args.corpus)
    if not root.is_dir():
        raise UsageError(f"corpus {root} is not a directory")
    files = sorted(root.glob("*.col"))
    kw = dict(a=args.a, alpha=args.alpha)

    def run(path):
        try:
            g = graph.read_dimacs(path)
        except graph.DimacsError as exc:
            raise UsageError(f"{path}: {exc}") from exc
        t0 = time.perf_counter()
        if args.mode == "count":
            res = engine.solve_count(g, args.colors, **kw)
        else:
            res = engine.decide_colorable(g, args.colors, **kw)
        dt = time.perf_counter() - t0
        agree = ""
        if args.oracle:
            truth = oracles.brute_force_oracle(g, args.colors, args.mode)
            agree = "yes" if truth == res.answer else "no"
        return path.name, g, res, dt, agree

    threads = args.threads or _default_threads()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        rows = list(pool.map(run, files))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["instance", "n", "m", "colors", "mode", "answer", "nodes_visited", "pw_triggered", "pw_width"]
    if args.oracle:
        header.append("oracle_agrees")
    if args.timing:
        header.append("seconds")
    writer.writerow(header)
    mismatch = False
    for name, g, res, dt, agree in rows:
        row = [name, g.n, g.m, args.colors, args.mode, int(res.answer), res.nodes_visited,
               int(res.pw_triggered), "" if res.pw_width is None else res.pw_width]
        if args.oracle:
            row.append(agree)
            mismatch |= agree == "no"
        if args.timing:
            row.append(f"{dt:.6f}")
        writer.writerow(row)
    if mismatch:
        print("oracle mismatch in bench corpus", file=sys.stderr)
        return EXIT_MISMATCH
    text = buf.getvalue()
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "solve": lambda a, o: _solve(a, o, counting=False),
    "count": lambda a, o: _solve(a, o, counting=True),
    "decompose": cmd_decompose,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        _, args = _parse(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # buffer so nothing is printed when the command fails
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except UsageError as exc:
        print(f"pwcolor {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if code in (EXIT_OK, EXIT_INFEASIBLE):
        out.write(buf.getvalue())
    return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
