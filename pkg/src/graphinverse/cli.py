"""``graphinv``: determinants, Sachs subgraphs, inverses and spectra from the shell.

Exit status is 0 on success, 1 when a structural computation disagrees with
the exact oracle (or a verify suite fails) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from .errors import Disagreement, GraphError
from .families import corona, stellate
from .graph import WeightedGraph, adjacency_matrix, parse_graph, serialize_graph
from .inverse import determinant, invert_graph
from .sachs import det_via_sachs, enumerate_sachs, unique_sachs_witness
from .spectra import (
    check_median_bounds,
    eigenvalues,
    median_eigenvalues,
    split_certificate,
)
from .verification import run_verify

FAMILIES = {"stellated": "stellated_tree", "corona": "corona"}


class InputError(Exception):
    """Bad command-line input; maps to exit status 2."""


def fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


@dataclass
class Field:
    key: str
    value: Any
    tolerance: Optional[float] = None


@dataclass
class Report:
    command: str
    seed: int
    rows: list[list[Field]] = field(default_factory=list)
    body: str = ""  # a graph file appended verbatim in text mode
    ok: bool = True

    def add(self, *fields: Field) -> None:
        self.rows.append(list(fields))

    def text(self) -> str:
        out = [f"# seed={self.seed} command={self.command}"]
        # keep the output a valid graph file when a graph is attached
        lead = "# " if self.body else ""
        out += [lead + " ".join(f"{f.key}={fmt(f.value)}" for f in row) for row in self.rows]
        text = "\n".join(out) + "\n"
        return text + self.body

    def structured(self) -> str:
        results = [
            {"key": f.key, "value": fmt(f.value), "tolerance": f.tolerance}
            for row in self.rows
            for f in row
        ]
        doc: dict[str, Any] = {"seed": self.seed, "command": self.command, "results": results}
        if self.body:
            doc["graph"] = self.body
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- input -----------------------------------------------------------------


def read_graph(path: str) -> WeightedGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_graph(text)


def apply_signature(g: WeightedGraph, spec: str, rng: random.Random) -> WeightedGraph:
    if spec == "all-positive":
        return g.underlying()
    if spec == "random":
        return WeightedGraph(g.n, {e: rng.choice((-1, 1)) for e in g.edges})
    signs = read_graph(spec)
    if signs.n != g.n or set(signs.edges) != set(g.edges):
        raise InputError("signature file must list exactly the edges of the graph")
    if not signs.is_signed:
        raise InputError("signature file weights must be +1 or -1")
    return WeightedGraph(g.n, dict(signs.edges))


def build_family(args: argparse.Namespace, rng: random.Random) -> tuple[WeightedGraph, list[str]]:
    """The constructed graph and its sidecar map lines."""
    if not args.base:
        raise InputError("--family needs --base FILE")
    base = read_graph(args.base)
    if args.family == "stellated":
        g, smap = stellate(base)
        sidecar = [
            f"# clique {v}: {' '.join(map(str, ids))}" for v, ids in sorted(smap.clique_of.items())
        ]
    else:
        g = corona(base)
        sidecar = [f"# pendant {i}: {base.n + i}" for i in range(base.n)]
    return apply_signature(g, args.signature, rng), sidecar


# -- verbs -----------------------------------------------------------------


def cmd_det(args, report: Report, rng) -> None:
    g = read_graph(args.graph)
    sachs = det_via_sachs(g)
    oracle = determinant(adjacency_matrix(g))
    agree = sachs == oracle
    report.add(Field("sachs", sachs), Field("oracle", oracle), Field("agree", agree))
    report.ok = agree


def cmd_sachs(args, report: Report, rng) -> None:
    g = read_graph(args.graph)
    subgraphs = enumerate_sachs(g)
    report.add(Field("count", len(subgraphs)))
    for s in subgraphs:
        report.add(
            Field("cycles", ";".join("-".join(map(str, c)) for c in s.cycles) or "none"),
            Field("matching", ";".join(f"{u}-{v}" for u, v in s.matching) or "none"),
            Field("loops", ",".join(map(str, s.loops)) or "none"),
        )
    if g.is_simple:
        unique = unique_sachs_witness(g) is not None
        report.add(Field("unique_by_reduction", unique), Field("agree", unique == (len(subgraphs) == 1)))
        report.ok = unique == (len(subgraphs) == 1)


def cmd_invert(args, report: Report, rng) -> None:
    g = read_graph(args.graph)
    try:
        res = invert_graph(g, args.method)
    except Disagreement:
        report.add(Field("method", args.method), Field("agree", False))
        report.ok = False
        return
    report.add(Field("method", res.method), Field("agree", res.agreement if res.agreement is not None else "n/a"))
    report.body = serialize_graph(res.inverse)


def cmd_construct(args, report: Report, rng) -> None:
    if not args.family:
        raise InputError("construct needs --family")
    g, sidecar = build_family(args, rng)
    report.add(Field("family", args.family), Field("n", g.n), Field("m", g.edge_count))
    report.body = serialize_graph(g)
    if args.map:
        Path(args.map).write_text("\n".join(sidecar) + "\n", encoding="utf-8")


def cmd_analyze(args, report: Report, rng) -> None:
    if args.family:
        g, _ = build_family(args, rng)
    elif args.graph:
        g = read_graph(args.graph)
        if args.signature != "as-is":
            g = apply_signature(g, args.signature, rng)
    else:
        raise InputError("analyze needs a graph file or --family with --base")
    spec = eigenvalues(g)
    med = median_eigenvalues(spec)
    report.add(Field("n", med.n), Field("H", med.h), Field("L", med.l))
    report.add(Field("lambda_H", med.lambda_h, spec.tol), Field("lambda_L", med.lambda_l, spec.tol))
    report.add(Field("gap", med.gap, spec.tol))
    report.add(Field("splits", med.splits, spec.tol), Field("symmetric", med.symmetric, 1e-8))
    if g.is_simple:
        report.add(Field("certificate", split_certificate(g)))
    if args.family and g.is_unweighted:
        bounds = check_median_bounds(g, FAMILIES[args.family], tol=1e-7)
        report.add(Field("median_bounds", bounds, 1e-7))
    report.add(Field("spectrum", " ".join(fmt(x) for x in spec.values)))


def cmd_verify(args, report: Report, rng) -> None:
    results = run_verify(max_n=args.max_n, samples=args.samples, seed=args.seed)
    for r in results:
        report.add(
            Field("suite", r.name),
            Field("passed", r.passed),
            Field("cases", r.cases),
            Field("failures", r.failures),
        )
        if r.first_failure:
            report.add(Field("first_failure", r.first_failure))
    report.ok = all(r.passed for r in results)


VERBS = {
    "det": cmd_det,
    "sachs": cmd_sachs,
    "invert": cmd_invert,
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=tuple(FAMILIES))
    fam.add_argument("--base", help="graph file the family member is built from")
    sig_help = "all-positive, random, or a graph file giving a sign per edge"

    p = argparse.ArgumentParser(prog="graphinv", description="Inverses and spectra of weighted graphs.")
    sub = p.add_subparsers(dest="verb", required=True)

    for verb, helptext in (
        ("det", "Sachs and oracle determinants"),
        ("sachs", "list Sachs subgraphs and decide uniqueness"),
    ):
        sp = sub.add_parser(verb, parents=[common], help=helptext)
        sp.add_argument("graph")

    sp = sub.add_parser("invert", parents=[common], help="inverse graph as a graph file")
    sp.add_argument("graph")
    sp.add_argument("--method", choices=("both", "structural", "oracle"), default="both")

    sp = sub.add_parser("construct", parents=[common, fam], help="build a stellated or corona graph")
    sp.add_argument("--signature", default="all-positive", help=sig_help)
    sp.add_argument("--map", help="write the clique/pendant sidecar map here")

    sp = sub.add_parser("analyze", parents=[common, fam], help="median eigenvalues and split checks")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--signature", help=sig_help + " (default: all-positive for a family, else as given)")

    sp = sub.add_parser("verify", parents=[common], help="run the oracle-equivalence suites")
    sp.add_argument("--max-n", type=int, default=7)
    sp.add_argument("--samples", type=int, default=200)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "analyze" and args.signature is None:
        # a family member defaults to all-positive, a given graph is taken as-is
        args.signature = "all-positive" if args.family else "as-is"
    if args.verb == "verify" and args.max_n < 1:
        parser.error("--max-n must be positive")
    rng = random.Random(args.seed)
    report = Report(args.verb, args.seed)
    try:
        VERBS[args.verb](args, report, rng)
    except Disagreement as exc:
        print(f"graphinv: disagreement: {exc}", file=sys.stderr)
        return 1
    except (InputError, GraphError) as exc:
        print(f"graphinv: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.structured() if args.format == "structured" else report.text())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
