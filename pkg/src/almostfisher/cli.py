"""Command-line workbench.

Every command writes a JSON document (or a CSV table) that records the
exact parameters it ran with.  Exit codes: 0 success, 1 family invalid,
2 parameter or usage error, 3 format error, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import bounds, constructions, search, structure
from .errors import BudgetExhausted, FamilyError, FormatError, ParameterError, StructureError
from .family import build_auxiliary_graph, verify_almost_fisher
from .formats import load_family, load_hadamard, parse_graph, search_csv, serialize_family
from .linalg import check_rank_sandwich, exact_rank, incidence_matrix, intersection_matrix

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARAMETER = 2
EXIT_FORMAT = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Outcome:
    status: int
    documents: list[str] = field(default_factory=list)
    message: str = ""


def _render(value, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return json.dumps(list(value))
        items = [pad + _render(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(value)


def _json(doc) -> str:
    """Indented JSON with flat lists kept on one line."""
    return _render(doc, 0) + "\n"


def int_range(text: str) -> list[int]:
    """``"5"``, ``"2:6"`` (inclusive) or ``"1,3,4"``."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return values


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def _family_and_lambda(args):
    doc = load_family(args.family)
    lam = args.lam if args.lam is not None else doc.lam
    if lam is None:
        raise ParameterError("lambda not given and not recorded in the family document")
    return doc, lam


_CONSTRUCT_NEEDS = {
    "almost-disjoint": ("n", "k"),
    "k3": ("m", "t"),
    "sunflower": ("n", "lam"),
    "adjoin": ("family", "extra"),
}


def cmd_construct(args) -> Outcome:
    kind = args.kind
    missing = [name for name in _CONSTRUCT_NEEDS.get(kind, ()) if getattr(args, name) is None]
    if missing:
        flags = ", ".join("--lambda" if m == "lam" else f"--{m}" for m in missing)
        raise ParameterError(f"construct {kind} needs {flags}")
    if kind == "hadamard":
        if args.matrix:
            h = load_hadamard(args.matrix)
        elif args.order:
            h = constructions.hadamard_sylvester(args.order)
        else:
            raise ParameterError("hadamard needs --order or --matrix")
        fam, lam, k = constructions.hadamard_family(h), h.order // 4, 1
    elif kind == "almost-disjoint":
        fam, lam, k = constructions.almost_disjoint_family(args.n, args.k), 0, args.k
    elif kind == "k3":
        h = load_hadamard(args.matrix) if args.matrix else None
        fam, lam, k = constructions.k3_family(args.m, args.t, h), args.m, 3
    elif kind == "sunflower":
        fam, lam, k = constructions.fisher_sunflower(args.n, args.lam), args.lam, 0
    else:
        base = load_family(args.family)
        fam = constructions.adjoined_family(base.family, args.extra)
        lam = base.lam + args.extra if base.lam is not None else None
        k = base.k
    text = serialize_family(fam, lam, k)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return Outcome(EXIT_OK, [_json({"command": "construct", "kind": kind, "output": args.output,
                                        "sets": len(fam)})])
    return Outcome(EXIT_OK, [text])


def cmd_verify(args) -> Outcome:
    doc = load_family(args.family)
    lam = args.lam if args.lam is not None else doc.lam
    k = args.k if args.k is not None else doc.k
    if lam is None or k is None:
        raise ParameterError("k and lambda must be given or recorded in the family document")
    report = verify_almost_fisher(doc.family, k, lam)
    out = {"command": "verify", "family": args.family, "n": doc.family.ground_size,
           "m": len(doc.family), **report.to_dict()}
    return Outcome(EXIT_OK if report.valid else EXIT_INVALID, [_json(out)])


def _not_applicable(reason: str) -> dict:
    return {"applicable": False, "reason": reason}


def cmd_analyze(args) -> Outcome:
    doc, lam = _family_and_lambda(args)
    fam = doc.family
    comps = structure.decompose_components(fam, lam)
    graph = build_auxiliary_graph(fam, lam)
    out: dict = {"command": "analyze", "family": args.family, "n": fam.ground_size, "m": len(fam),
                 "lambda": lam, "max_bad_degree": graph.max_degree}
    comp_docs = []
    for c in comps:
        d = c.to_dict()
        if c.shape in ("path", "cycle", "isolated"):
            d["rank_bounds_hold"] = structure.check_component_rank_bounds(c, fam, lam)
        comp_docs.append(d)
    out["components"] = comp_docs
    if graph.max_degree <= 2:
        counts = structure.count_low_rank_structures(fam, lam)
        out["low_rank_counts"] = {"p": counts.p, "q": counts.q, "r": counts.r}
        check = bounds.combine_counts(fam.ground_size, len(fam), counts.p, counts.q, counts.r)
        out["count_bounds"] = check.to_dict()
    else:
        out["low_rank_counts"] = _not_applicable("auxiliary graph has a vertex of degree > 2")
    try:
        core = structure.rank1_p1_structure(fam, lam)
        out["core"] = core.to_dict()
    except (ParameterError, StructureError) as exc:
        core = None
        out["core"] = _not_applicable(str(exc))
    if core is not None and graph.max_degree <= 1:
        g = structure.one_per_edge_subfamily(fam, lam)
        out["dyadic"] = structure.dyadic_diagnostics(g, core, lam).to_dict()
    else:
        out["dyadic"] = _not_applicable("needs a core decomposition of a 1-almost family")
    if len(fam) >= 2:
        out["plotkin"] = structure.plotkin_check(fam).to_dict()
    else:
        out["plotkin"] = _not_applicable("needs at least two sets")
    return Outcome(EXIT_OK, [_json(out)])


def cmd_rank(args) -> Outcome:
    doc, lam = _family_and_lambda(args)
    fam = doc.family
    a = incidence_matrix(fam)
    m = intersection_matrix(fam, lam)
    ca = exact_rank(a)
    cm = exact_rank(m)
    out = {
        "command": "rank", "family": args.family, "n": fam.ground_size, "m": len(fam), "lambda": lam,
        "incidence": {"rank": ca.rank, "pivot_rows": list(ca.pivot_rows), "pivot_cols": list(ca.pivot_cols)},
        "intersection": {"rank": cm.rank, "pivot_rows": list(cm.pivot_rows), "pivot_cols": list(cm.pivot_cols)},
        "sandwich": check_rank_sandwich(fam, lam).to_dict(),
    }
    return Outcome(EXIT_OK, [_json(out)])


def cmd_bound(args) -> Outcome:
    ids = bounds.BOUND_IDS if args.theorem == "all" else (args.theorem,)
    if args.theorem not in ("all", "structure-counts") and args.theorem not in bounds.BOUND_IDS:
        raise ParameterError(f"unknown bound {args.theorem!r}")
    rows = []
    for n in args.n:
        for k in args.k:
            for lam in args.lam:
                if args.theorem == "structure-counts":
                    d = bounds.bound_structure_counts(n, lam).to_dict()
                    rows.append({"theorem_id": "structure-counts", "n": n, "lambda": lam, **d})
                    continue
                for tid in ids:
                    try:
                        rows.append(bounds.evaluate_bound(tid, n, k, lam).to_dict())
                    except ParameterError as exc:
                        if args.theorem != "all":
                            raise
                        rows.append({"theorem_id": tid, "n": n, "k": k, "lambda": lam,
                                     "applicable": False, "reason": str(exc)})
    return Outcome(EXIT_OK, [_json({"command": "bound", "theorem": args.theorem, "results": rows})])


def cmd_search(args) -> Outcome:
    results = []
    for n in args.n:
        for k in args.k:
            lams = args.lam if args.lam is not None else range(n + 1)
            for lam in lams:
                if args.method == "exhaustive":
                    r = search.brute_force_max_family(n, k, lam, backend=args.backend)
                else:
                    r = search.branch_and_bound_max_family(n, k, lam, budget=args.budget,
                                                           workers=args.workers, backend=args.backend)
                results.append(r)
    status = EXIT_OK if all(r.exhaustive_certificate for r in results) else EXIT_BUDGET
    if args.csv:
        return Outcome(status, [search_csv(results)])
    doc = {"command": "search", "method": args.method, "budget": args.budget, "workers": args.workers,
           "results": [r.to_dict() for r in results]}
    return Outcome(status, [_json(doc)])


def cmd_partition(args) -> Outcome:
    if args.graph:
        with open(args.graph, encoding="utf-8") as fh:
            graph = parse_graph(fh.read())
        source = {"graph": args.graph}
    elif args.family:
        doc, lam = _family_and_lambda(args)
        aux = build_auxiliary_graph(doc.family, lam)
        graph = structure.SimpleGraph(aux.vertex_count, aux.edges)
        source = {"family": args.family, "lambda": lam}
    else:
        raise ParameterError("partition needs --graph or a family file")
    part = structure.lovasz_partition(graph, args.targets)
    out = {"command": "partition", **source, "vertex_count": graph.vertex_count,
           "max_degree": graph.max_degree, **part.to_dict()}
    return Outcome(EXIT_OK, [_json(out)])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="almostfisher", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build an explicit family")
    c.add_argument("kind", choices=["hadamard", "almost-disjoint", "k3", "sunflower", "adjoin"])
    c.add_argument("--order", type=int, help="Sylvester order (hadamard)")
    c.add_argument("--matrix", help="Hadamard matrix file (hadamard, k3)")
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--lambda", dest="lam", type=int)
    c.add_argument("--family", help="base family document (adjoin)")
    c.add_argument("--extra", type=int)
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the k-almost lambda-Fisher property")
    v.add_argument("family")
    v.add_argument("--k", type=int)
    v.add_argument("--lambda", dest="lam", type=int)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="components, core, dyadic counts, five-cycles, Plotkin")
    a.add_argument("family")
    a.add_argument("--lambda", dest="lam", type=int)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("rank", help="exact ranks and the rank sandwich")
    r.add_argument("family")
    r.add_argument("--lambda", dest="lam", type=int)
    r.set_defaults(func=cmd_rank)

    b = sub.add_parser("bound", help="evaluate bounds over an (n, k, lambda) grid")
    b.add_argument("theorem", help=f"one of {', '.join(bounds.BOUND_IDS)}, structure-counts, all")
    b.add_argument("--n", type=int_range, required=True)
    b.add_argument("--k", type=int_range, default=[1])
    b.add_argument("--lambda", dest="lam", type=int_range, default=[0])
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("search", help="exact f(n, k, lambda) with witnesses")
    s.add_argument("--n", type=int_range, required=True)
    s.add_argument("--k", type=int_range, required=True)
    s.add_argument("--lambda", dest="lam", type=int_range, help="default: 0..n")
    s.add_argument("--method", choices=["exhaustive", "branch-and-bound"], default="branch-and-bound")
    s.add_argument("--budget", type=int, help="node limit for branch and bound")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--backend", choices=["compiled", "python"])
    s.add_argument("--csv", action="store_true", help="emit the CSV table")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("partition", help="bounded-degree vertex partition")
    t.add_argument("family", nargs="?")
    t.add_argument("--graph", help="graph document instead of a family")
    t.add_argument("--lambda", dest="lam", type=int)
    t.add_argument("--targets", type=_int_list, required=True, help="comma-separated degree quotas")
    t.set_defaults(func=cmd_partition)
    return p


def run_command(argv: Sequence[str]) -> Outcome:
    """Parse and run one command; never raises for user errors."""
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return Outcome(EXIT_PARAMETER, message=str(exc))
    try:
        return args.func(args)
    except (FormatError, FamilyError) as exc:
        return Outcome(EXIT_FORMAT, message=f"format error: {exc}")
    except BudgetExhausted as exc:
        return Outcome(EXIT_BUDGET, message=f"budget exhausted: {exc}")
    except (ParameterError, StructureError, ImportError) as exc:
        return Outcome(EXIT_PARAMETER, message=f"error: {exc}")
    except OSError as exc:
        return Outcome(EXIT_FORMAT, message=f"cannot read input: {exc}")


def main(argv: Sequence[str] | None = None) -> int:
    outcome = run_command(sys.argv[1:] if argv is None else argv)
    for doc in outcome.documents:
        sys.stdout.write(doc)
    if outcome.message:
        print(outcome.message, file=sys.stderr)
    return outcome.status


if __name__ == "__main__":
    raise SystemExit(main())
