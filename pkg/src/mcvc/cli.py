"""Command-line front end: ``mcvc kernelize | solve | gen | stream | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 unsupported input, 4 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import shlex
import sys
from fractions import Fraction

from ._rational import as_rational, format_rational
from .errors import BudgetExceeded, ContractError, InputError, Unsupported
from .exact import brute_force_opt, common_independent_opt, kernel_opt
from .graph import (WeightedGraph, WeightedHypergraph, format_graph, gen_fig3, gen_fig4, gen_fig6, gen_random,
                    gen_random_hypergraph, parse_graph)
from .kernel import kernelize, kernelize_hypergraph
from .localsearch import PotentialCoefficients, contracted_search, local_search, local_search_34, two_matroid_search
from .matroid import KINDS, format_matroid, parse_matroid
from .streaming import (EDGE_ARRIVAL, INCIDENCE, MODES, EdgeStream, format_stream, one_pass_edge_arrival,
                        one_pass_incidence, parse_stream, two_pass)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_BUDGET = 0, 1, 2, 3, 4

ALGOS = ("kernel-bf", "ls23", "ls34", "bf", "stream2p", "stream1p", "streaminc", "2matroid", "ls")
STREAM_ALGOS = ("stream2p", "stream1p", "streaminc")
NEEDS_EPS = ("kernel-bf", *STREAM_ALGOS)
ALPHA2_ALGOS = ("ls", "ls23", "2matroid")


class UsageError(InputError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_input(path: str):
    """A graph, hypergraph or stream file, told apart by its header."""
    text = _read(path)
    first = next((ln.split()[0] for ln in text.splitlines() if ln.split() and not ln.startswith("#")), "")
    if first == "stream":
        return parse_stream(text)
    return parse_graph(text)


def _emit(args, rows: dict[str, str], extra: str = "") -> None:
    rows = {"flags": " ".join(shlex.quote(a) for a in args.argv), **rows}
    if getattr(args, "csv", False):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(rows.keys())
        writer.writerow(rows.values())
        sys.stdout.write(buf.getvalue())
    else:
        for key, value in rows.items():
            print(f"{key}: {value}")
        if extra:
            sys.stdout.write(extra)


def _eps(text: str | None) -> Fraction | None:
    if text is None:
        return None
    eps = as_rational(text)
    if eps <= 0:
        raise UsageError("--eps must be positive")
    return eps


def cmd_kernelize(args) -> int:
    g = _load_input(args.graph)
    if isinstance(g, EdgeStream):
        g = g.graph()
    m = parse_matroid(_read(args.matroid))
    eps = _eps(args.eps)
    if eps > 1:
        raise UsageError("--eps must lie in (0, 1]")
    if isinstance(g, WeightedHypergraph):
        kres = kernelize_hypergraph(g, m, eps)
        retained = WeightedHypergraph(g.n, [(k, w) for k, w in kres.subset_weights.items()], g.eta)
    else:
        kres = kernelize(g, m, eps)
        retained = WeightedGraph(g.n, kres.retained_edges)
    size = len(kres.kernel_vertices)
    rows = {
        "kind": kres.kind,
        "eps": format_rational(kres.eps),
        "t": str(kres.t),
        "tau": str(kres.tau),
        "rank": str(kres.rank),
        "kernel_vertices": " ".join(map(str, kres.kernel_vertices)),
        "kernel_size": str(size),
        "size_bound": str(kres.size_bound),
        "within_bound": "yes" if size <= kres.size_bound else "no",
        "sharper_bound": "" if kres.sharper_bound is None else str(kres.sharper_bound),
        "tree_nodes": "" if kres.tree_nodes is None else str(kres.tree_nodes),
        "retained_edges": str(retained.m),
    }
    _emit(args, rows, "retained:\n" + format_graph(retained))
    return EXIT_OK


def _check_flags(args) -> None:
    algo = args.algo
    if (args.matroid2_file is None) != (algo != "2matroid"):
        raise UsageError("--matroid2-file is required with, and only allowed with, --algo 2matroid")
    if args.p is not None and algo != "2matroid":
        raise UsageError("--p only applies to --algo 2matroid")
    if args.alpha2 is not None and algo not in ALPHA2_ALGOS:
        raise UsageError("--alpha2 only applies to --algo " + ", ".join(ALPHA2_ALGOS))
    if args.seed is not None and algo not in STREAM_ALGOS:
        raise UsageError("--seed only applies to the streaming algorithms")
    if args.rank_cap is not None and algo != "ls34":
        raise UsageError("--rank-cap only applies to --algo ls34")
    if args.eps is None and algo in NEEDS_EPS:
        raise UsageError(f"--algo {algo} needs --eps")


def cmd_solve(args) -> int:
    _check_flags(args)
    src = _load_input(args.graph)
    m = parse_matroid(_read(args.matroid))
    eps = _eps(args.eps)
    algo = args.algo
    alpha2 = Fraction(3, 2) if args.alpha2 is None else as_rational(args.alpha2)
    stats = None
    if algo in STREAM_ALGOS:
        if isinstance(src, WeightedHypergraph):
            raise Unsupported("streaming solvers take graphs, not hypergraphs")
        want = INCIDENCE if algo == "streaminc" else EDGE_ARRIVAL
        stream = src if isinstance(src, EdgeStream) else EdgeStream.from_graph(src, want, args.seed)
        if isinstance(src, EdgeStream) and args.seed is not None:
            raise UsageError("--seed shuffles a graph file; a stream file is replayed as given")
        run = {"stream2p": two_pass, "stream1p": one_pass_edge_arrival, "streaminc": one_pass_incidence}[algo]
        report, stats = run(stream, m, eps)
        g = stream.graph()
    else:
        g = src.graph() if isinstance(src, EdgeStream) else src
        if isinstance(g, WeightedHypergraph) and algo not in ("bf", "kernel-bf"):
            raise Unsupported(f"--algo {algo} supports graphs only")
        if algo == "bf":
            report = brute_force_opt(g, m)
        elif algo == "kernel-bf":
            kres = kernelize_hypergraph(g, m, eps) if isinstance(g, WeightedHypergraph) else kernelize(g, m, eps)
            report = kernel_opt(g, m, kres)
        elif algo == "ls":
            report = local_search(g, m, eps, PotentialCoefficients.graph(alpha2))
        elif algo == "ls23":
            report = contracted_search(g, m, eps, alpha2)
        elif algo == "ls34":
            report = local_search_34(g, m, eps, 8 if args.rank_cap is None else args.rank_cap)
        else:
            m2 = parse_matroid(_read(args.matroid2_file))
            report = two_matroid_search(g, m, m2, 1 if args.p is None else args.p, eps, alpha2=alpha2)
    rows = report.fields()
    if stats is not None:
        rows.update(peak_retained_edges=str(stats.peak_retained_edges),
                    peak_tracked_vertices=str(stats.peak_tracked_vertices), passes=str(stats.passes))
    if args.oracle:
        if algo == "2matroid":
            oracle = common_independent_opt(g, m, parse_matroid(_read(args.matroid2_file)))
        else:
            oracle = brute_force_opt(g, m)
        rows["oracle_value"] = format_rational(oracle.value)
        rows["ratio"] = format_rational(report.value / oracle.value) if oracle.value else "1"
    _emit(args, rows)
    return EXIT_OK


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "fig3":
        g, m = gen_fig3(args.eps or "0.1")
    elif fam == "fig4":
        g, m = gen_fig4(args.k)
    elif fam == "fig6":
        g, m = gen_fig6(args.k, args.eps or "0.5")
    elif args.eta is not None:
        g, m = gen_random_hypergraph(args.n, args.m, args.eta, (args.weight_min, args.weight_max),
                                     args.kind, args.seed, args.max_rank)
    else:
        g, m = gen_random(args.n, args.m, (args.weight_min, args.weight_max), args.kind, args.seed, args.max_rank)
    graph_path, matroid_path = f"{args.out}.graph", f"{args.out}.matroid"
    _write(graph_path, format_graph(g))
    _write(matroid_path, format_matroid(m))
    _emit(args, {"graph_file": graph_path, "matroid_file": matroid_path, "n": str(g.n), "edges": str(g.m)})
    return EXIT_OK


def cmd_stream(args) -> int:
    g = parse_graph(_read(args.graph))
    if isinstance(g, WeightedHypergraph):
        raise Unsupported("streams carry graph edges only")
    text = format_stream(EdgeStream.from_graph(g, args.mode, args.seed))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    results = run_suite(args.suite, args.trials, args.seed, args.jobs)
    failed = [r for r in results if r.failures]
    for r in failed:
        os.makedirs(args.dump_dir, exist_ok=True)
        for name, text in r.files.items():
            _write(os.path.join(args.dump_dir, f"{args.suite}-{r.index}.{name}"), text)
        for msg in r.failures:
            print(f"trial {r.index}: {msg}", file=sys.stderr)
    _emit(args, {"suite": args.suite, "trials": str(len(results)), "failed": str(len(failed)),
                 "status": "fail" if failed else "pass"})
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcvc", description="Maximum vertex cover under matroid constraints.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernelize", help="extract a kernel and print it")
    p.add_argument("graph")
    p.add_argument("matroid")
    p.add_argument("--eps", required=True)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("solve", help="run one algorithm")
    p.add_argument("graph", help="graph, hypergraph or stream file")
    p.add_argument("matroid")
    p.add_argument("--algo", choices=ALGOS, required=True)
    p.add_argument("--eps")
    p.add_argument("--alpha2")
    p.add_argument("--p", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--matroid2-file")
    p.add_argument("--rank-cap", type=int)
    p.add_argument("--oracle", action="store_true", help="also run brute force and report the ratio")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write an instance family to <out>.graph and <out>.matroid")
    p.add_argument("--family", choices=("fig3", "fig4", "fig6", "random"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--eps")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--m", type=int, default=12)
    p.add_argument("--eta", type=int, help="random hypergraph with edges of size up to eta")
    p.add_argument("--kind", choices=[k for k in KINDS if k != "explicit"], default="partition")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--weight-min", type=int, default=1)
    p.add_argument("--weight-max", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stream", help="turn a graph file into a stream file")
    p.add_argument("graph")
    p.add_argument("--mode", choices=MODES, default=EDGE_ARRIVAL)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--dump-dir", default="counterexamples")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.argv = argv
    try:
        return args.func(args)
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ContractError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
