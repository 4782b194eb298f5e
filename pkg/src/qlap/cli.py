"""Command-line interface.

Exit status: 0 on success, 1 on usage or input errors, 2 when a proven
inequality or an internal invariant fails on concrete data.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Sequence

import numpy as np

from . import corpus
from .bipartite import MtReport, RatioScan, max_cut_exact, mt_report
from .bounds import check_graph_against_bounds, qmin_bounds, turan_qmin_report
from .errors import BoundViolation, GraphParseError, QlapError
from .graph import (
    GraphLabel, add_isolated, blowup, complement, count_triangles, srg_parameters,
)
from .graphio import from_graph6, read_graph6_file, read_graph_arg, to_edge_list, to_graph6
from .search import SearchConfig, conjecture2_probe, exhaustive_search, local_search
from .spectral import (
    MatrixKind, blowup_complement_spectrum_closed, blowup_spectrum_closed, check_regular_identity,
    format_value, matrix_of, matrix_to_text, q_min, q_min_batch, spectrum,
)
from .steiner import higman_sims

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Output:
    """Single writer for a report; ``--out`` redirects it to a file."""

    def __init__(self, path: str | None, append: bool = False):
        self.path = path
        self.append = append
        self.chunks: list[str] = []

    def write(self, text: str) -> None:
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def flush(self) -> None:
        text = "".join(self.chunks)
        if self.path:
            with open(self.path, "a" if self.append else "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _graph(args):
    if not args.graph:
        raise QlapError("--graph is required for this subcommand")
    return read_graph_arg(args.graph)


# -- subcommands -------------------------------------------------------------


def cmd_construct(args, out: _Output) -> int:
    g = GraphLabel(args.kind, args.n, args.r).build()
    if args.blowup and args.blowup > 1:
        g = blowup(g, args.blowup)
    if args.complement:
        g = complement(g)
    if args.add_isolated:
        g = add_isolated(g, args.add_isolated)
    if args.format == "json":
        out.write(_json({"graph6": to_graph6(g), "n": g.n, "m": g.m}))
    elif args.edgelist:
        out.write(to_edge_list(g))
    else:
        out.write(to_graph6(g))
    return EXIT_OK


def cmd_spectrum(args, out: _Output) -> int:
    g = _graph(args)
    kind = MatrixKind.parse(args.kind)
    if args.matrix:
        out.write(matrix_to_text(matrix_of(g, kind)))
        return EXIT_OK
    spec = spectrum(g, kind)
    values = list(spec.ascending) if args.ascending else list(spec.values)
    if args.format == "json":
        out.write(json.dumps(values))
    else:
        out.write("\t".join(format_value(v) for v in values))
    return EXIT_OK


def cmd_blowup_verify(args, out: _Output) -> int:
    g = _graph(args)
    rows = []
    bad = False
    for t in args.t:
        big = blowup(g, t)
        big_bar = complement(big)
        for kind in MatrixKind:
            for label, closed, direct_graph in (
                ("blowup", blowup_spectrum_closed(g, t, kind), big),
                ("complement", blowup_complement_spectrum_closed(g, t, kind), big_bar),
            ):
                diff = closed.max_abs_diff(spectrum(direct_graph, kind))
                ok = diff <= args.tol
                bad |= not ok
                rows.append({"t": t, "kind": kind.value, "form": label, "max_abs_diff": diff, "ok": ok})
    if args.format == "json":
        out.write(_json(rows))
    else:
        out.write("t\tkind\tform\tmax_abs_diff\tok")
        for r in rows:
            out.write(f"{r['t']}\t{r['kind']}\t{r['form']}\t{r['max_abs_diff']:.3e}\t{int(r['ok'])}")
    if bad:
        print(f"closed-form mismatch for graph {to_graph6(g)}", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_mt_check(args, out: _Output) -> int:
    g = _graph(args)
    rep = mt_report(g, exact=not args.heuristic, seed=args.seed, restarts=args.restarts)
    if args.format == "json":
        out.write(_json(rep.as_dict()))
    else:
        out.write("\t".join(MtReport.HEADER))
        out.write(rep.tsv_row())
    if rep.gap < -args.tol:
        print(f"VIOLATION: bipartization cost below q_min*n/4 for {to_graph6(g)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_bounds(args, out: _Output) -> int:
    rep = qmin_bounds(args.n, args.r)
    out.write(rep.to_json() if args.format == "json" else rep.to_tsv())
    return EXIT_OK


def cmd_turan_check(args, out: _Output) -> int:
    chk = turan_qmin_report(args.n, args.r)
    fields = chk._asdict()
    fields["lower_tight"] = chk.lower_tight
    if args.format == "json":
        out.write(_json(fields))
    else:
        out.write("\t".join(fields))
        out.write("\t".join(format_value(v) if isinstance(v, float) else str(v) for v in fields.values()))
    for problem in chk.failures():
        print(f"VIOLATION: {problem}", file=sys.stderr)
    return EXIT_VIOLATION if chk.failures() else EXIT_OK


def cmd_hs_verify(args, out: _Output) -> int:
    g = higman_sims()
    params = srg_parameters(g)
    adj = spectrum(g, MatrixKind.ADJACENCY)
    q, identity = check_regular_identity(g)
    mult = [(round(v, 6), k) for v, k in adj.multiplicities()]
    expected = [(22.0, 1), (2.0, 77), (-8.0, 22)]
    checks = {
        "srg": params == (100, 22, 0, 6),
        "triangle_free": count_triangles(g) == 0,
        "adjacency_spectrum": len(mult) == 3 and all(
            k == ek and abs(v - ev) <= 1e-6 for (v, k), (ev, ek) in zip(mult, expected)),
        "qmin": abs(q - 14) <= 1e-7,
        "regular_identity": abs(q - identity) <= 1e-8 * 22,
        "bounds": not check_graph_against_bounds(g, 2, qmin=q),
    }
    report = {
        "order": g.n, "degree": params[1] if params else None,
        "lambda": params[2] if params else None, "mu": params[3] if params else None,
        "edges": g.m, "qmin": q, "d_plus_lambda_min": identity,
        "adjacency_spectrum": [[v, k] for v, k in mult], "checks": checks,
    }
    if args.format == "json":
        out.write(_json(report))
    else:
        for key in ("order", "degree", "lambda", "mu", "edges"):
            out.write(f"{key}\t{report[key]}")
        out.write(f"qmin\t{format_value(q)}")
        out.write(f"d_plus_lambda_min\t{format_value(identity)}")
        out.write("adjacency_spectrum\t" + " ".join(f"{format_value(v)}^{k}" for v, k in mult))
        for key, ok in checks.items():
            out.write(f"check_{key}\t{'pass' if ok else 'FAIL'}")
    return EXIT_OK if all(checks.values()) else EXIT_VIOLATION


def _search_config(args) -> SearchConfig:
    start = read_graph_arg(args.graph) if args.graph else args.start
    return SearchConfig(
        n=args.n, r=args.r, seed=args.seed, restarts=args.restarts, steps_per_restart=args.steps,
        anneal=not args.hillclimb, initial_temperature=args.temperature, cooling=args.cooling,
        start=start, regular=args.regular, workers=args.workers,
    )


def cmd_search(args, out: _Output) -> int:
    if args.exhaustive:
        result = exhaustive_search(args.n, args.r)
    else:
        result = local_search(_search_config(args))
    record = result.record(timestamp=not args.no_timestamp)
    if args.out or args.format == "json":
        out.write(json.dumps(record))
    else:
        keys = ["n", "r", "method", "seed", "best_qmin", "graph6", "upper_bound", "source", "gap_to_upper", "conjecture2"]
        out.write("\t".join(keys))
        out.write("\t".join(format_value(record[k]) if isinstance(record[k], float) else str(record[k]) for k in keys))
    if args.out:
        with open(args.out + ".g6", "a") as fh:
            fh.write(result.graph6 + "\n")
    if not args.exhaustive:
        print(f"seed {args.seed}", file=sys.stderr)
    if result.exceeds_upper:
        print(f"VIOLATION: q_min {result.best_qmin} exceeds {result.upper_bound_used} for {result.graph6}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_probe(args, out: _Output) -> int:
    budget = None if args.exhaustive else _search_config(args)
    rep = conjecture2_probe(args.n, args.r, budget=budget, exhaustive=args.exhaustive)
    record = rep.record(timestamp=not args.no_timestamp)
    if args.format == "json" or args.out:
        out.write(json.dumps(record))
    else:
        for key, value in record.items():
            if key != "search":
                out.write(f"{key}\t{format_value(value) if isinstance(value, float) else value}")
    if rep.search.exceeds_upper:
        print(f"VIOLATION: search output exceeds {rep.search.upper_bound_used}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_ratio_scan(args, out: _Output) -> int:
    scan = RatioScan()
    violations = []
    if args.corpus:
        for g in read_graph6_file(args.corpus):
            rep = mt_report(g, exact=g.n <= 26, seed=args.seed)
            scan.add(g, rep)
            if rep.gap < -args.tol:
                violations.append(to_graph6(g))
    else:
        for n in range(2, args.max_n + 1):
            codes = corpus.all_codes(n)
            qs = q_min_batch(corpus.adjacency_stack(codes, n))
            for code, q in zip(codes.tolist(), qs.tolist()):
                g = corpus.graph_from_code(n, code)
                cut = max_cut_exact(g).cut_value
                cost = g.m - cut
                rep = MtReport(n, g.m, cut, cost, q, q * n / 4, cost - q * n / 4,
                               cost / (q * n) if q > 1e-9 else None, "exact")
                scan.add(g, rep)
                if rep.gap < -args.tol:
                    violations.append(to_graph6(g))
    summary = scan.as_dict()
    summary["violations"] = violations
    if args.format == "json":
        out.write(_json(summary))
    else:
        for key, value in summary.items():
            if key == "violations":
                value = ",".join(value)
            out.write(f"{key}\t{format_value(value) if isinstance(value, float) else value}")
    return EXIT_VIOLATION if violations else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report to this file (search results are appended)")
    common.add_argument("--graph", help="graph6 string or path to an edge-list file")
    common.add_argument("--no-timestamp", action="store_true", help="omit timestamps for byte-identical output")

    parser = _Parser(prog="qlap", description="Smallest signless Laplacian eigenvalue of K_{r+1}-free graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="build a named graph")
    p.add_argument("--kind", required=True, choices=GraphLabel.KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--blowup", type=int, default=1, metavar="T")
    p.add_argument("--complement", action="store_true")
    p.add_argument("--add-isolated", type=int, default=0, metavar="K")
    p.add_argument("--edgelist", action="store_true", help="emit an edge list instead of graph6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of A, L or Q")
    p.add_argument("--kind", default="Q", help="A, L or Q")
    p.add_argument("--ascending", action="store_true")
    p.add_argument("--matrix", action="store_true", help="print the matrix instead of its spectrum")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("blowup-verify", parents=[common], help="closed-form blowup spectra against direct solves")
    p.add_argument("--t", type=int, nargs="+", default=[2, 3])
    p.set_defaults(func=cmd_blowup_verify)

    p = sub.add_parser("mt-check", parents=[common], help="bipartization cost against q_min*n/4")
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--restarts", type=int, default=16)
    p.set_defaults(func=cmd_mt_check)

    p = sub.add_parser("bounds", parents=[common], help="bound table for (n, r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("turan-check", parents=[common], help="q_min and mu_2 of T_r(n) against their bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_turan_check)

    p = sub.add_parser("hs-verify", parents=[common], help="verify the Higman-Sims construction")
    p.set_defaults(func=cmd_hs_verify)

    search_flags = argparse.ArgumentParser(add_help=False)
    search_flags.add_argument("--n", type=int, required=True)
    search_flags.add_argument("--r", type=int, required=True)
    search_flags.add_argument("--restarts", type=int, default=8)
    search_flags.add_argument("--steps", type=int, default=400)
    search_flags.add_argument("--hillclimb", action="store_true", help="disable annealing")
    search_flags.add_argument("--temperature", type=float, default=0.5)
    search_flags.add_argument("--cooling", type=float, default=0.995)
    search_flags.add_argument("--start", choices=("random", "turan"), default="random")
    search_flags.add_argument("--regular", action="store_true", help="degree-preserving moves from a regular start")
    search_flags.add_argument("--workers", type=int, default=1)
    search_flags.add_argument("--exhaustive", action="store_true", help="enumerate all graphs (n <= 7)")

    p = sub.add_parser("search", parents=[common, search_flags], help="search for large q_min")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("probe-conjecture2", parents=[common, search_flags], help="compare the best graph found with T_r(n)")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("ratio-scan", parents=[common], help="supremum of cost/(q_min n) over a corpus")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--corpus", help="graph6 file; default is every labeled graph up to --max-n")
    p.set_defaults(func=cmd_ratio_scan)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args.out, append=args.command == "search")
    try:
        status = args.func(args, out)
    except GraphParseError as exc:
        print(f"qlap: malformed graph: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundViolation as exc:
        out.flush()
        print(f"VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except QlapError as exc:
        print(f"qlap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
