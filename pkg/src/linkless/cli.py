"""Command-line front end.  Graphs travel as graph6 lines on stdin/stdout.

Exit codes: 0 success / verified, 1 no minor (``minor``), 2 counterexample or
not linkless, 3 cap exceeded, 64 usage error, 65 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import TextIO

from . import graph6
from .extremal import CONJECTURES, CapExceeded, edge_bound, run_check
from .graph import GraphError, named_graph
from .iso import EnumerationSpec, canonical_form, canonical_graph, default_jobs, enumerate_graph6, enumerate_graphs
from .minors import find_minor, find_obstruction
from .transforms import petersen_family

EX_USAGE = 64
EX_DATAERR = 65
EX_CAP = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _jobs(args) -> int:
    env = os.environ.get("LINKLESS_JOBS")
    if env:
        return max(1, int(env))
    return args.jobs if args.jobs else default_jobs()


def _dump(obj, out: TextIO, indent: int | None = None) -> None:
    out.write(json.dumps(obj, indent=indent) + "\n")


def _read_graphs(stream: TextIO):
    return list(graph6.read_lines(stream))


def cmd_family(args, out):
    fam = petersen_family()
    names = fam.names()
    rows = [
        {
            "index": i,
            "n": g.n,
            "edges": g.edge_count,
            "name": name,
            "graph6": graph6.encode(g),
        }
        for i, (g, name) in enumerate(zip(fam, names))
    ]
    if args.format == "json":
        _dump(rows, out, indent=2)
        return 0
    out.write(f"{'index':>5}  {'n':>2}  {'|E|':>3}  {'name':<15} graph6\n")
    for r in rows:
        out.write(f"{r['index']:>5}  {r['n']:>2}  {r['edges']:>3}  {r['name'] or '-':<15} {r['graph6']}\n")
    return 0


def _pattern(text: str):
    try:
        return named_graph(text)
    except GraphError:
        return graph6.decode(text)


def cmd_minor(args, out):
    h = _pattern(args.pattern)
    if args.host:
        with open(args.host) as fh:
            hosts = _read_graphs(fh)
    else:
        hosts = _read_graphs(sys.stdin)
    if not hosts:
        raise graph6.Graph6Error("no host graph given")
    status = 0
    for g in hosts:
        m = find_minor(g, h)
        _dump(None if m is None else m.to_json(), out)
        if m is None:
            status = 1
    return status


def cmd_linkless(args, out):
    fam = petersen_family()
    names = fam.names()
    status = 0
    results = []
    for g in _read_graphs(sys.stdin):
        hit = find_obstruction(g)
        rec = {"graph6": graph6.encode(g), "linkless": hit is None, "obstruction": None}
        if hit is not None:
            i, m = hit
            rec["obstruction"] = {
                "family_index": i,
                "name": names[i],
                "member_graph6": graph6.encode(fam[i]),
                "model": m.to_json(),
            }
            status = 2
        results.append(rec)
    for rec in results:
        if args.format == "json":
            _dump(rec, out)
        else:
            verdict = "linkless" if rec["linkless"] else f"not linkless (family[{rec['obstruction']['family_index']}] minor)"
            out.write(f"{rec['graph6']}: {verdict}\n")
    return status


def _report(args, out, name, n, p):
    report = run_check(
        name, n, p, jobs=_jobs(args), force=args.force, spot_check=args.spot_check
    )
    if args.format == "json":
        _dump(report.to_dict(timing=args.timing), out, indent=2)
    else:
        out.write(report.to_text(timing=args.timing) + "\n")
    return 2 if report.verdict == "counterexample" else 0


def cmd_verify(args, out):
    if args.which == "mader" and args.p is None:
        raise UsageError("verify mader needs --p")
    return _report(args, out, args.which, args.n, args.p)


def cmd_conjecture(args, out):
    if args.which == "kp" and args.p is None:
        raise UsageError("conjecture kp needs --p")
    return _report(args, out, args.which, args.n, args.p)


def cmd_bound(args, out):
    value = edge_bound(args.name, args.n, args.p, args.t)
    out.write(f"{value}\n")
    return 0


def cmd_gen(args, out):
    cls = "bipartite" if args.bipartite else "triangle_free" if args.triangle_free else "all"
    spec = EnumerationSpec(
        args.n, cls, args.min_edges, args.max_edges, connected_only=args.connected
    )
    if args.resume is not None:
        for g in enumerate_graphs(spec, args.resume):
            out.write(graph6.encode(g) + "\n")
        return 0
    for line in enumerate_graph6(spec, _jobs(args)):
        out.write(line.decode("ascii") + "\n")
    return 0


def cmd_convert(args, out):
    status = 0
    for lineno, line in enumerate(sys.stdin, 1):
        text = line.strip()
        if not text:
            continue
        g = graph6.decode(text)
        if args.check:
            again = graph6.encode(g)
            if again != text:
                sys.stderr.write(f"line {lineno}: re-encodes as {again!r}, not {text!r}\n")
                status = EX_DATAERR
            out.write(again + "\n")
        elif args.to == "canonical":
            out.write(graph6.encode(canonical_graph(g)) + "\n")
        elif args.to == "edges":
            out.write(f"{g.n} " + " ".join(f"{u}-{v}" for u, v in g.edges()) + "\n")
        elif args.to == "json":
            cf = canonical_form(g)
            out.write(json.dumps({
                "n": g.n,
                "edges": g.edges(),
                "canonical_graph6": cf.graph6,
                "automorphisms": cf.automorphism_count,
            }) + "\n")
        else:
            out.write(graph6.encode(g) + "\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linkless", description="Linkless embeddability and extremal bound checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    def scan_opts(sp):
        fmt(sp)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=int)
        sp.add_argument("--jobs", type=int, default=0, help="worker processes (default: all cores)")
        sp.add_argument("--timing", action="store_true", help="include elapsed time in the report")
        sp.add_argument("--force", action="store_true", help="ignore the practical size caps")
        sp.add_argument("--spot-check", type=float, nargs="?", const=0.01, default=0.0,
                        help="cross-check this fraction of candidates with the naive minor oracle")

    sp = sub.add_parser("family", help="list the Petersen family")
    fmt(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("minor", help="test for a minor; host graph6 on stdin")
    sp.add_argument("--pattern", required=True, help="graph name (K6, K_{3,3}, petersen, ...) or graph6")
    sp.add_argument("--host", help="file of host graph6 lines instead of stdin")
    sp.set_defaults(func=cmd_minor)

    sp = sub.add_parser("linkless", help="test linkless embeddability of graph6 lines on stdin")
    sp.add_argument("--format", choices=("text", "json"), default="json")
    sp.set_defaults(func=cmd_linkless)

    sp = sub.add_parser("verify", help="exhaustively verify a theorem at order n")
    sp.add_argument("which", choices=("main", "thm31", "mader"))
    scan_opts(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("conjecture", help="search for a counterexample at order n")
    sp.add_argument("which", choices=CONJECTURES)
    scan_opts(sp)
    sp.set_defaults(func=cmd_conjecture)

    sp = sub.add_parser("bound", help="evaluate a named edge bound exactly")
    sp.add_argument("name", choices=("main", "thm31", "mader", "kp", "trfree", "trfull"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int)
    sp.add_argument("--t", type=int, default=0)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("gen", help="isomorph-free enumeration as canonical graph6")
    sp.add_argument("--n", type=int, required=True)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--bipartite", action="store_true")
    group.add_argument("--triangle-free", action="store_true")
    sp.add_argument("--min-edges", type=int, default=0)
    sp.add_argument("--max-edges", type=int)
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--resume", help="only the subtree at this token, e.g. 0.3.1")
    sp.add_argument("--jobs", type=int, default=0)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("convert", help="re-encode graph6 lines from stdin")
    sp.add_argument("--check", action="store_true", help="fail unless every line re-encodes identically")
    sp.add_argument("--to", choices=("graph6", "canonical", "edges", "json"), default="graph6")
    sp.set_defaults(func=cmd_convert)
    return p


def run(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"linkless: error: {exc}\n")
        return EX_USAGE
    except CapExceeded as exc:
        sys.stderr.write(f"linkless: {exc}\n")
        return EX_CAP
    except (GraphError, ValueError) as exc:
        sys.stderr.write(f"linkless: {exc}\n")
        return EX_DATAERR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
