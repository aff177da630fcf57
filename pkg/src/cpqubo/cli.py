"""Command-line front end.

Subcommands: partition (one method, one graph), bench (several methods,
CSV + JSON report), sweep (prefix curves for plotting), export (QUBO files),
generate (benchmark graphs).  Exit codes: 0 success or soft warning,
1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import warnings

from .errors import DensityError, GraphFormatError, SelfCheckError
from .graph import load_graph, remove_isolated, stats
from .harness import ALL_METHODS, bench, run_method
from .objective import sweep_prefix
from .qubo import build_q, build_qhat, export_qubo
from .sbm import SbmSpec, node_labels, planted_partition, sample_sbm
from . import baselines

SEED_ENV = "CPQ_SEED"

USAGE_EXIT = 1
DATA_EXIT = 2
INTERNAL_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


class _UsageError(ValueError):
    pass


def _parse_sbm(text):
    parts = text.split(",")
    if len(parts) != 5:
        raise _UsageError("--sbm expects N,M,p1,p2,p3")
    try:
        n, m = int(parts[0]), int(parts[1])
        p1, p2, p3 = (float(t) for t in parts[2:])
    except ValueError:
        raise _UsageError(f"could not parse --sbm value {text!r}") from None
    return n, m, p1, p2, p3


def _resolve_seed(args):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return None


def _load_input(args):
    """Graph from --input or --sbm, honoring --drop-isolated defaults."""
    if getattr(args, "sbm", None):
        n, m, p1, p2, p3 = _parse_sbm(args.sbm)
        seed = _resolve_seed(args)
        spec = SbmSpec(n=n, m=m, p1=p1, p2=p2, p3=p3, seed=0 if seed is None else seed)
        g = sample_sbm(spec)
        drop = args.drop_isolated if args.drop_isolated is not None else False
    else:
        if not getattr(args, "input", None):
            raise _UsageError("either --input or --sbm is required")
        g = load_graph(args.input, format=args.format)
        drop = args.drop_isolated if args.drop_isolated is not None else True
    if drop:
        g, removed = remove_isolated(g)
        if removed:
            print(f"dropped {len(removed)} isolated node(s)", file=sys.stderr)
    return g


def _write_json(doc, path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_graph_args(p, sbm=True):
    p.add_argument("--input", help="graph file to read")
    p.add_argument("--format", choices=("edgelist", "matrixmarket"),
                   default="edgelist", help="input file format")
    if sbm:
        p.add_argument("--sbm", metavar="N,M,p1,p2,p3",
                       help="generate a block-model graph instead of reading a file")
    p.add_argument("--drop-isolated", action=argparse.BooleanOptionalAction,
                   default=None,
                   help="drop degree-0 nodes (default: on for files, off for --sbm)")


def _cmd_partition(args):
    g = _load_input(args)
    seed = _resolve_seed(args)
    result = run_method(g, args.method, samples=args.samples, sweeps=args.sweeps,
                        seed=seed)
    _write_json(result.as_dict(verbose=args.verbose), args.output)
    return 0


def _cmd_bench(args):
    g = _load_input(args)
    seed = _resolve_seed(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise _UsageError("--methods must name at least one method")
    report = bench(g, methods, samples=args.samples, sweeps=args.sweeps, seed=seed,
                   parallel=args.parallel)
    errors = [(m, e) for m, r, e in report.results if r is None]
    for method, err in errors:
        print(f"warning: method {method!r} failed: {err}", file=sys.stderr)

    rows = []
    for method, result, err in report.results:
        if result is not None:
            wall = 0.0 if args.stable_output else result.wall_time
            rows.append({
                "method": method,
                "value": repr(result.value),
                "core_size": result.core_size,
                "wall_time_s": f"{wall:.3f}",
                "seed": "" if result.seed is None else result.seed,
                "status": "ok",
            })
        else:
            rows.append({"method": method, "value": "", "core_size": "",
                         "wall_time_s": "", "seed": "", "status": "error"})
    out = sys.stdout if not args.csv else open(args.csv, "w", encoding="utf-8", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=["method", "value", "core_size",
                                                 "wall_time_s", "seed", "status"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.csv:
            out.close()
    if args.json:
        doc = report.as_dict()
        if args.stable_output:
            for row in doc["results"]:
                if "wall_time_s" in row:
                    row["wall_time_s"] = 0.0
        _write_json(doc, args.json)
    return 0


def _sweep_order(g, args, seed):
    name = args.order
    if name == "original":
        return list(range(g.n))
    if name == "degree":
        return baselines.threshold_order(g, baselines.coreness_degree(g))
    if name == "eig-a":
        return baselines.threshold_order(g, baselines.coreness_eig_a(g))
    if name == "nonlin-pm":
        return baselines.threshold_order(g, baselines.coreness_nonlin_pm(g))
    if name.startswith("file:"):
        path = name[5:]
        with open(path, "r", encoding="utf-8") as fh:
            wanted = [line.strip() for line in fh if line.strip()]
        index = {lab: i for i, lab in enumerate(g.labels)}
        if sorted(wanted) != sorted(g.labels):
            raise GraphFormatError(f"{path}: order file is not a permutation of the node labels")
        return [index[lab] for lab in wanted]
    raise _UsageError(f"unknown order {name!r}")


def _cmd_sweep(args):
    g = _load_input(args)
    seed = _resolve_seed(args)
    order = _sweep_order(g, args, seed)
    curve = sweep_prefix(g, order, objective=args.objective)
    peak = float(curve.values.max())
    scaled = curve.values / peak if peak > 0 else curve.values
    if peak <= 0:
        print("warning: curve maximum <= 0, emitting unscaled values", file=sys.stderr)
    out = sys.stdout if not args.csv else open(args.csv, "w", encoding="utf-8", newline="")
    try:
        writer = csv.writer(out)
        writer.writerow(["k", "value", "value_scaled"])
        for k, (v, sv) in enumerate(zip(curve.values, scaled)):
            writer.writerow([k, repr(float(v)), repr(float(sv))])
    finally:
        if args.csv:
            out.close()
    print(f"argmax k = {curve.argmax_k}", file=sys.stderr)
    return 0


def _cmd_export(args):
    g = _load_input(args)
    q = build_q(g) if args.matrix == "q" else build_qhat(g)
    fmt = "qubo_text" if args.export_format == "qubo" else "json"
    export_qubo(q, args.output, format=fmt)
    return 0


def _cmd_generate(args):
    n, m, p1, p2, p3 = _parse_sbm(args.sbm)
    seed = _resolve_seed(args)
    spec = SbmSpec(n=n, m=m, p1=p1, p2=p2, p3=p3, seed=0 if seed is None else seed)
    g = sample_sbm(spec)
    labels = g.labels
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(f"# block-model graph n={n} m={m} p1={p1} p2={p2} p3={p3} seed={spec.seed}\n")
        for u, v in zip(*g.edge_arrays()):
            fh.write(f"{labels[u]} {labels[v]}\n")
    sidecar = {
        "n": n,
        "m": m,
        "p1": p1,
        "p2": p2,
        "p3": p3,
        "seed": spec.seed,
        "edges": g.num_edges,
        "planted_core_labels": list(labels[:m]),
        "generator": "numpy PCG64, one draw per pair, row-major i<j",
    }
    _write_json(sidecar, args.output + ".json")
    return 0


def build_parser():
    parser = _Parser(prog="cpqubo",
                     description="Core-periphery partitioning via QUBO solvers and baselines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", parents=[], help="partition one graph with one method")
    _add_graph_args(p)
    p.add_argument("--method", choices=ALL_METHODS, required=True)
    p.add_argument("--samples", type=int, default=100, help="annealer reads")
    p.add_argument("--sweeps", type=int, default=None, help="annealer sweeps per read")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--verbose", action="store_true", help="include method extras in the report")
    p.add_argument("--output", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("bench", help="run several methods and rank them")
    _add_graph_args(p)
    p.add_argument("--methods", default=",".join(ALL_METHODS),
                   help="comma-separated method names")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--sweeps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--parallel", action="store_true", help="run methods concurrently")
    p.add_argument("--csv", help="write the CSV table here instead of stdout")
    p.add_argument("--json", help="also write a JSON report here")
    p.add_argument("--stable-output", action="store_true",
                   help="zero wall times so repeated runs are byte-identical")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("sweep", help="objective values over nested prefix cores")
    _add_graph_args(p)
    p.add_argument("--order", default="original",
                   help="original, degree, eig-a, nonlin-pm, or file:PATH")
    p.add_argument("--objective", choices=("normalized", "unnormalized"),
                   default="normalized")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--csv", help="write the curve here instead of stdout")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("export", help="write the QUBO as a solver input file")
    _add_graph_args(p)
    p.add_argument("--matrix", choices=("q", "qhat"), default="q")
    p.add_argument("--export-format", choices=("qubo", "json"), default="json",
                   dest="export_format")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("generate", help="write a block-model benchmark graph")
    p.add_argument("--sbm", metavar="N,M,p1,p2,p3", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_generate)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except _UsageError as exc:
        print(f"cpqubo: error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except SelfCheckError as exc:
        print(f"cpqubo: internal error: {exc}", file=sys.stderr)
        return INTERNAL_EXIT
    except (GraphFormatError, DensityError, FileNotFoundError, ValueError) as exc:
        print(f"cpqubo: data error: {exc}", file=sys.stderr)
        return DATA_EXIT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
