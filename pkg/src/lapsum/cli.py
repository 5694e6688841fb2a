"""Command-line interface.

Subcommands cover every library capability: spectra and excess values,
density and partition density, orientations, matchings/covers/odd covers,
arboricity and star arboricity, structure decompositions, the upper-bound
pipeline, bound scans, and family tightness probes.

Exit codes: 0 success, 1 scan found a violation, 2 usage error,
3 size-cap skip in single-graph mode. Errors go to stderr prefixed "error:".
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction

from . import harness
from .bounds import BOUND_TAGS
from .decomposition import (
    AssignmentExhausted,
    arboricity_value,
    sa_upper_bound_pipeline,
    star_arboricity_exact,
    structure_decomposition,
)
from .density import (
    OrientationInfeasible,
    SizeCapError,
    density,
    k_orientation,
    partition_density,
    partition_density_bracket,
)
from .graphs import (
    Graph6Error,
    GraphError,
    GraphSource,
    encode_graph6,
    graph_stream,
    make_family,
    parse_edge_list,
    parse_graph6,
)
from .matching import maximum_matching, min_vertex_cover, odd_set_cover
from .spectral import eps_profile, spectrum

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_SKIPPED = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_graph_flags(p: argparse.ArgumentParser, sources: bool = False):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph6", metavar="STR", help="one graph6 string")
    g.add_argument("--file", metavar="PATH", help="graph6 lines or edge-list file")
    g.add_argument("--family", metavar="NAME:ARGS", help="named family, e.g. star:6")
    if sources:
        g.add_argument(
            "--all-labeled", type=int, metavar="N", help="all labeled graphs on N vertices"
        )
        g.add_argument(
            "--gnp",
            nargs=4,
            metavar=("N", "P", "COUNT", "SEED"),
            help="seeded G(n,p) samples",
        )


def _read_file_graph(path: str):
    with open(path) as fh:
        text = fh.read()
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    parts = first.split()
    if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
        return parse_edge_list(text)
    return parse_graph6(first)


def _single_graph(args) -> "Graph":
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    if args.file is not None:
        return _read_file_graph(args.file)
    if args.family is not None:
        return make_family(args.family)
    raise GraphError("no graph input given")


def _source(args) -> GraphSource:
    if getattr(args, "all_labeled", None) is not None:
        return GraphSource("all-labeled", n=args.all_labeled)
    if getattr(args, "gnp", None) is not None:
        n, p, count, seed = args.gnp
        return GraphSource("gnp", n=int(n), p=float(p), count=int(count), seed=int(seed))
    if args.graph6 is not None:
        return GraphSource("single", graph=parse_graph6(args.graph6))
    if args.file is not None:
        return GraphSource("graph6-file", path=args.file)
    if args.family is not None:
        return GraphSource("single", graph=make_family(args.family))
    raise GraphError("no graph source given")


def _emit(payload, args):
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        text = json.dumps(payload, indent=2, default=_jsonable)
    else:
        text = _as_text(payload)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, frozenset):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _as_text(payload) -> str:
    if isinstance(payload, dict):
        return "\n".join(f"{k}: {_fmt_value(v)}" for k, v in payload.items())
    return _fmt_value(payload)


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v} ({float(v):g})"
    if isinstance(v, frozenset):
        return "{" + ",".join(map(str, sorted(v))) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    return str(v)


# ---------------------------------------------------------------------------
# Subcommand handlers

def _cmd_spectrum(args) -> int:
    for g in graph_stream(_source(args)):
        vals = spectrum(g).values
        print(",".join([encode_graph6(g), str(g.n), str(g.m), *(repr(v) for v in vals)]))
    return EXIT_OK


def _cmd_eps(args) -> int:
    g = _single_graph(args)
    prof = eps_profile(g)
    if args.k == "all":
        _emit({f"eps_{k}": prof.value(k) for k in range(1, g.n + 1)}, args)
    else:
        print(prof.value(int(args.k)))
    return EXIT_OK


def _cmd_density(args) -> int:
    g = _single_graph(args)
    wit = density(g)
    _emit({"density": wit.value, "subset": wit.subset}, args)
    return EXIT_OK


def _cmd_parden(args) -> int:
    g = _single_graph(args)
    if args.bracket:
        lo, hi = partition_density_bracket(g)
        _emit({"lower": lo, "upper": hi}, args)
        return EXIT_OK
    wit = partition_density(g)
    _emit(
        {
            "partition_density": wit.value,
            "attained_part_size": wit.attained_part_size,
            "parts": [sorted(p) for p in wit.parts],
        },
        args,
    )
    return EXIT_OK


def _cmd_orient(args) -> int:
    g = _single_graph(args)
    res = k_orientation(g, args.k)
    if isinstance(res, OrientationInfeasible):
        _emit(
            {
                "feasible": False,
                "k": res.k,
                "subset": res.subset,
                "edges_inside": res.edges_inside,
            },
            args,
        )
        return EXIT_OK
    _emit(
        {"feasible": True, "k": args.k, "arcs": res.arcs(), "indegrees": res.indegrees},
        args,
    )
    return EXIT_OK


def _cmd_match(args) -> int:
    g = _single_graph(args)
    mm = maximum_matching(g)
    _emit({"nu": mm.nu, "pairs": [list(e) for e in mm.pairs]}, args)
    return EXIT_OK


def _cmd_cover(args) -> int:
    g = _single_graph(args)
    cov = min_vertex_cover(g)
    _emit({"tau": len(cov), "cover": cov}, args)
    return EXIT_OK


def _cmd_oddcover(args) -> int:
    g = _single_graph(args)
    cov = odd_set_cover(g)
    _emit(
        {
            "weight": cov.weight,
            "vertices": list(cov.vertices),
            "odd_sets": [sorted(s) for s in cov.odd_sets],
        },
        args,
    )
    return EXIT_OK


def _cmd_arbor(args) -> int:
    g = _single_graph(args)
    a, wit = arboricity_value(g)
    _emit({"arboricity": a, "witness": wit if wit is not None else []}, args)
    return EXIT_OK


def _cmd_stararbor(args) -> int:
    g = _single_graph(args)
    sa, sfd = star_arboricity_exact(g)
    if args.classes:
        _emit(
            {
                "star_arboricity": sa,
                "classes": [[list(e) for e in cls] for cls in sfd.classes],
            },
            args,
        )
    else:
        print(sa)
    return EXIT_OK


def _cmd_structure(args) -> int:
    g = _single_graph(args)
    sd = structure_decomposition(g, args.k, parden_mode=args.parden_mode)
    _emit({"k": args.k, "U": sd.U, "C": sd.C, "I": sd.I}, args)
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    g = _single_graph(args)
    res = sa_upper_bound_pipeline(
        g, args.k, seed=args.seed, parden_mode=args.parden_mode
    )
    payload = {"k": res.k, "route": res.route, "bound_claimed": res.bound_claimed}
    if res.route == "2a":
        payload["star_classes"] = len(res.star_classes.classes)
    else:
        payload["aux_n"] = res.aux_graph.n
        payload["aux_m"] = res.aux_graph.m
        payload["tries"] = res.tries
        if isinstance(res.assignment, AssignmentExhausted):
            payload["assignment"] = "exhausted"
            payload["failure_counts"] = res.assignment.failure_counts
        else:
            payload["assignment"] = "found"
            payload["c"] = res.assignment.c
    _emit(payload, args)
    return EXIT_OK


def _cmd_scan(args) -> int:
    bounds = [b.strip() for b in args.bound.split(",") if b.strip()]
    ks = harness.parse_krange(args.k)
    report = harness.scan(_source(args), bounds, ks, jobs=args.jobs)
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)
    return EXIT_VIOLATION if report.violation_count else EXIT_OK


def _cmd_probe(args) -> int:
    ks = harness.parse_krange(args.k)
    rows = harness.tightness_probe(args.family, args.bound, ks)
    if args.format == "json":
        payload = [dict(asdict(r), equality=r.equality) for r in rows]
        text = json.dumps(payload, indent=2)
    else:
        text = harness.probe_table_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="lapsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, handler, help_text, sources=False, graph=True):
        p = sub.add_parser(name, help=help_text)
        if graph:
            _add_graph_flags(p, sources=sources)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", metavar="PATH")
        p.set_defaults(handler=handler)
        return p

    cmd("spectrum", _cmd_spectrum, "Laplacian spectra as CSV rows", sources=True)
    p = cmd("eps", _cmd_eps, "eigenvalue-sum excess eps_k")
    p.add_argument("--k", required=True, help="k value or 'all'")
    cmd("density", _cmd_density, "exact density with witness subset")
    p = cmd("parden", _cmd_parden, "exact partition density (or bracket)")
    p.add_argument("--bracket", action="store_true", help="bounds for n beyond the cap")
    p = cmd("orient", _cmd_orient, "k-orientation or infeasibility certificate")
    p.add_argument("--k", type=int, required=True)
    cmd("match", _cmd_match, "maximum matching")
    cmd("cover", _cmd_cover, "minimum vertex cover")
    cmd("oddcover", _cmd_oddcover, "minimum-weight odd set cover")
    cmd("arbor", _cmd_arbor, "arboricity with dense-subset witness")
    p = cmd("stararbor", _cmd_stararbor, "exact star arboricity")
    p.add_argument("--classes", action="store_true", help="print the decomposition")
    p = cmd("structure", _cmd_structure, "U/C/I structure decomposition")
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--parden-mode", choices=("exact", "bound", "assume"), default="exact"
    )
    p = cmd("pipeline", _cmd_pipeline, "constructive star-arboricity upper bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--parden-mode", choices=("exact", "bound", "assume"), default="exact"
    )
    p = cmd("scan", _cmd_scan, "bound scan over a graph source", sources=True)
    p.add_argument("--bound", required=True, metavar="ID[,ID...]",
                   help=f"bound ids from: {', '.join(BOUND_TAGS)}")
    p.add_argument("--k", default="all", help="'all', 'nminus2', or a list like 1,2,3")
    p.add_argument("--jobs", type=int, default=1)
    p = sub.add_parser("probe", help="tightness probe over named families")
    p.add_argument("--family", action="append", required=True, metavar="NAME:ARGS")
    p.add_argument("--bound", required=True)
    p.add_argument("--k", default="all")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(handler=_cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SKIPPED
    except (GraphError, Graph6Error, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
