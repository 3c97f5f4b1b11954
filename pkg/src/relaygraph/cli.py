"""Command-line front end.

Exit status: 0 when the verdict is positive (or matches ``--expect``),
1 when it is negative or inconclusive, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

from . import cycles as cy
from .errors import BudgetExceeded, GraphError, PreconditionError
from .freegroup import FreeGroup, WordError, make_z_family, parse_word, verify_z_property_i, verify_z_property_ii
from .graph import (
    RGraph,
    check_condition_r,
    check_condition_r_doubleprime,
    check_condition_r_prime,
    is_proper,
    isolated_set,
)
from .groupring import RingError, build_epsilon, load_instance, verify_r_not_one
from .io import LoadError, load_graph, to_dot
from .suites import SUITES, run_suite

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def fixture_names() -> list[str]:
    root = resources.files("relaygraph") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def resolve_path(arg: str) -> Path:
    """An existing path, or else a shipped fixture with the same file name."""
    path = Path(arg)
    if path.exists():
        return path
    name = path.name if path.name.endswith(".json") else path.name + ".json"
    if name in fixture_names():
        return Path(str(resources.files("relaygraph") / "fixtures" / name))
    raise InputError(f"{arg}: no such file (shipped fixtures: {', '.join(fixture_names())})")


def _names(g: RGraph, vs) -> list[str]:
    return [g.name(v) for v in sorted(vs)]


def _sets(g: RGraph, sets) -> list[list[str]]:
    return sorted((_names(g, s) for s in sets), key=lambda s: (len(s), s))


# ------------------------------------------------------------------ verbs
# Each verb returns (verdict: bool | None, report: dict, extras) where
# verdict None means inconclusive.


def cmd_check(args):
    path = resolve_path(args.file)
    g = load_graph(path, check=False)
    r = check_condition_r(g.base, g.star)
    report = {
        "file": str(args.file),
        "vertices": len(g),
        "base_edges": len(g.base.edges),
        "star_edges": len(g.star.edges),
        "condition_R": r.holds,
        "condition_R_prime": check_condition_r_prime(g.base, g.star).holds,
        "condition_R_doubleprime": check_condition_r_doubleprime(g.base, g.star).holds,
    }
    if not r:
        v, comp, pair = r.witness
        report["violation"] = {"vertex": g.name(v), "component": _names(g, comp), "pair": _names(g, pair)}
        return False, report, {"graph": g}
    g = RGraph(g.base, g.star, g.names)
    fam = cy.u_family(g)
    report.update({
        "omega": len(g.base_components()),
        "proper": is_proper(g),
        "empty": g.is_empty(),
        "clique": g.is_clique_graph(),
        "isolated": _names(g, isolated_set(g, g.vertices)),
        "U": {g.name(v): _names(g, g.U(v)) for v in g.sorted_vertices()},
        "U_family": len(fam.sets),
        "L": _sets(g, fam.large),
        "N": _sets(g, fam.singletons),
        "UC": cy.satisfies_uc(g).holds,
        "SC": cy.satisfies_sc(g).holds,
    })
    return True, report, {"graph": g}


def _load_rgraph(args) -> RGraph:
    return load_graph(resolve_path(args.file))


def _find(g: RGraph, method: str, budget: int, trace: list):
    """Returns (method used, cycle or None, complete?)."""
    if method == "auto":
        if is_proper(g) and cy.satisfies_uc(g):
            method = "uc"
        elif cy.rcolouring_obstruction(g, cy.colouring_partition(g)) is None:
            method = "rcolouring"
        elif cy.is_r_simple(g):
            method = "rsimple"
        else:
            method = "brute"
    if method == "uc":
        if not is_proper(g):
            raise PreconditionError("graph is not proper")
        uc = cy.satisfies_uc(g)
        if not uc:
            raise PreconditionError("R-neighbour sets violate (UC)")
        return "uc-walk", cy.find_r_cycle_uc(g, trace), True
    if method == "rcolouring":
        return "rcolouring-construction", cy.find_r_cycle_rcolouring(g, trace=trace), True
    if method == "rsimple":
        if not cy.has_r_cycle_rsimple(g):
            return "rsimple-criterion", None, True
        return "rsimple-criterion", cy.brute_force_r_cycle(g, budget=budget), True
    return "brute-force", cy.brute_force_r_cycle(g, budget=budget), True


def cmd_find_cycle(args):
    g = _load_rgraph(args)
    trace: list = []
    try:
        method, cycle, _ = _find(g, args.method, args.budget, trace)
    except BudgetExceeded as exc:
        return None, {"file": str(args.file), "found": None, "inconclusive": str(exc)}, {"graph": g}
    report = {"file": str(args.file), "method": method, "found": cycle is not None}
    if cycle is not None:
        report.update(cycle.to_json(g))
        report["length"] = len(cycle)
        report["revalidated"] = cy.validate_r_cycle(g, cycle).holds
    if trace:
        report["steps"] = [{k: (v if not isinstance(v, (set, frozenset)) else sorted(v)) for k, v in step.items()}
                           for step in trace]
    return cycle is not None, report, {"graph": g, "cycle": cycle}


def cmd_components(args):
    g = _load_rgraph(args)
    report = {
        "file": str(args.file),
        "base_components": _sets(g, g.base_components()),
        "star_components": _sets(g, g.star_components()),
        "omega": len(g.base_components()),
    }
    simple = cy.is_r_simple(g)
    report["r_simple"] = simple.holds
    if simple:
        report["r_components"] = [_names(g, c.w_set) for c in cy.r_components(g)]
    return True, report, {"graph": g}


def cmd_criterion(args):
    g = _load_rgraph(args)
    simple = cy.is_r_simple(g)
    if not simple:
        raise PreconditionError(f"graph is not R-simple (clause {simple.clause})")
    rows = []
    for c in cy.r_components(g):
        h = c.graph
        rows.append({
            "vertices": _names(g, c.w_set),
            "W": len(c.w_set),
            "U_W": len(h.u_family()),
            "omega": len(h.base_components()),
            "criterion": cy.euler_criterion(c),
        })
    has = any(r["criterion"] != 0 for r in rows)
    return has, {"file": str(args.file), "components": rows, "has_r_cycle": has}, {"graph": g}


def cmd_colouring(args):
    g = _load_rgraph(args)
    p = cy.colouring_partition(g)
    rc = cy.is_r_colouring(p)
    comps = []
    for i, comp in enumerate(p.star_components):
        q = cy.quotient_graph(p, i)
        mx, _ = cy.mx_and_j(p, comp)
        comps.append({
            "vertices": _names(g, comp),
            "classes": [_names(g, c) for c in p.classes[i]],
            "mx": mx,
            "quotient_edges": sorted([j + 1, k + 1] for j, k in q.edges),
            "quotient_complete": q.is_complete(),
        })
    report = {
        "file": str(args.file),
        "n": p.n,
        "colouring": cy.is_colouring(p),
        "r_colouring": rc.holds,
        "components": comps,
        "existence_hypotheses": cy.rcolouring_obstruction(g, p) or "satisfied",
    }
    if not rc:
        v, missing = rc.witness
        report["witness"] = {"vertex": g.name(v), "mismatch": g.name(missing)}
    return rc.holds, report, {"graph": g}


def cmd_zwords(args):
    if not args.word:
        raise InputError("give at least one --word")
    group = FreeGroup(args.rank)
    s_set = [parse_word(group, w) for w in args.word]
    ws = [parse_word(group, w) for w in args.w_word] if args.w_word else None
    fam = make_z_family(s_set, args.m, ws=ws)
    v1 = verify_z_property_i(fam)
    report = {"n": fam.n, "z": [str(z) for z in fam.z_words], "property_i": v1.holds, "p_max": args.p_max}
    if not v1:
        report["property_i_witness"] = [list(t) for t in v1.witness]
    try:
        v2 = verify_z_property_ii(fam, args.p_max, args.budget)
    except BudgetExceeded as exc:
        report["property_ii"] = None
        report["inconclusive"] = str(exc)
        return None, report, {}
    report["property_ii"] = v2.holds
    if not v2:
        report["property_ii_witness"] = [list(t) for t in v2.witness]
    return v1.holds and v2.holds, report, {}


def cmd_epsilon(args):
    inst = load_instance(resolve_path(args.file))
    rows = []
    for t, spec in enumerate(inst.specs, 1):
        eps = build_epsilon(spec)
        rows.append({
            "t": t,
            "reserved": [f"x{g + 1}" for g in spec.x_triple],
            "n": spec.z.n,
            "z": [str(z) for z in spec.z.z_words],
            "support": len(eps),
            "expected_support": 9 * spec.m + 1,
            "epsilon": eps.to_json(),
        })
    ok = all(r["support"] == r["expected_support"] for r in rows)
    return ok, {"file": str(args.file), "basis_size": inst.group.rank, "terms": rows}, {}


def cmd_verify_r(args):
    inst = load_instance(resolve_path(args.file))
    verdict, report = verify_r_not_one(inst.specs, inst.bs)
    return verdict.holds, {"file": str(args.file), **report}, {"ring_report": report}


def cmd_fuzz(args):
    report = run_suite(args.suite, args.seed, args.count, args.budget, args.p_max)
    if report["failed"]:
        return False, report, {"suite_report": report}
    if report["inconclusive"]:
        return None, report, {"suite_report": report}
    return True, report, {"suite_report": report}


def cmd_export_dot(args):
    g = _load_rgraph(args)
    cycle = None
    if args.highlight:
        cycle = cy.brute_force_r_cycle(g, budget=args.budget)
    return True, {"file": str(args.file), "dot": to_dot(g, Path(args.file).stem, cycle)}, \
        {"graph": g, "cycle": cycle}


# ------------------------------------------------------------------ output


def _flat(v) -> bool:
    return not isinstance(v, dict) and not (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))


def _text(obj, prefix="") -> list[str]:
    """``dotted.key: value`` lines; lists of scalars stay on one line."""
    if _flat(obj):
        return [f"{prefix.rstrip('.')}: {_scalar(obj)}"]
    items = sorted(obj.items()) if isinstance(obj, dict) else enumerate(obj)
    lines = []
    for k, v in items:
        lines.extend(_text(v, f"{prefix}{k}."))
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v) if v else "-"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return "inconclusive"
    return str(v).lower() if isinstance(v, bool) else str(v)


def render(report: dict, fmt: str, extras: dict) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        if "dot" in report:
            return report["dot"]
        if "graph" not in extras:
            raise InputError("--format dot needs a graph verb")
        return to_dot(extras["graph"], highlight=extras.get("cycle"))
    if "dot" in report:
        return report["dot"]
    return "\n".join(_text(report)) + "\n"


def draw(verb: str, path: str, extras: dict, seed: int) -> None:
    from . import plotting

    if "suite_report" in extras:
        plotting.draw_suite_summary(extras["suite_report"], path)
    elif "ring_report" in extras:
        plotting.draw_ring_report(extras["ring_report"], path)
    elif "graph" in extras:
        plotting.draw_rgraph(extras["graph"], path, extras.get("cycle"), title=verb, seed=seed)
    else:
        raise InputError(f"no figure available for {verb}")


# ------------------------------------------------------------------ parser

VERBS = {
    "check": cmd_check,
    "find-cycle": cmd_find_cycle,
    "components": cmd_components,
    "criterion": cmd_criterion,
    "colouring": cmd_colouring,
    "zwords": cmd_zwords,
    "epsilon": cmd_epsilon,
    "verify-r": cmd_verify_r,
    "fuzz": cmd_fuzz,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized verbs and figure layout")
    common.add_argument("--budget", type=int, default=cy.DEFAULT_BUDGET, help="state budget for exhaustive searches")
    common.add_argument("--p-max", type=int, default=3, help="largest product length for z-word checks")
    common.add_argument("--format", choices=("json", "text", "dot"),
                        help="report format (default json; dot for export-dot)")
    common.add_argument("--expect", choices=("yes", "no"), help="exit 0 exactly when the verdict matches")
    common.add_argument("--figure", metavar="PATH", help="also render a figure (format from the suffix)")
    common.add_argument("--timings", action="store_true", help="add elapsed seconds to the report")

    parser = argparse.ArgumentParser(prog="relaygraph", description="R-graph checks and R-cycle finders.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def graph_verb(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="graph JSON file or a shipped fixture name")
        return p

    graph_verb("check", "validate an R-graph and list its R-neighbour sets")
    p = graph_verb("find-cycle", "find an R-cycle, choosing a method from the graph's structure")
    p.add_argument("--method", choices=("auto", "uc", "rcolouring", "rsimple", "brute"), default="auto")
    graph_verb("components", "base, star and R-components")
    graph_verb("criterion", "Euler criterion per R-component of an R-simple graph")
    graph_verb("colouring", "colouring partition, (RC) and quotient graphs")
    p = sub.add_parser("zwords", parents=[common], help="build z-words for a word set and check them")
    p.add_argument("--word", action="append", default=[], help="word of S, e.g. 'x1^2 x2' (repeatable)")
    p.add_argument("--w-word", action="append", default=[], help="separate w words (default: same as --word)")
    p.add_argument("--m", type=int, default=3, help="number of z-words")
    p.add_argument("--rank", type=int, default=2)
    p = sub.add_parser("epsilon", parents=[common], help="build epsilon elements of an instance file")
    p.add_argument("file")
    p = sub.add_parser("verify-r", parents=[common], help="check r != 1 for an instance file")
    p.add_argument("file")
    p = sub.add_parser("fuzz", parents=[common], help="run a seeded property campaign")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--count", type=int, help="number of trials (suite default otherwise)")
    p = graph_verb("export-dot", "DOT source, star edges dashed")
    p.add_argument("--highlight", action="store_true", help="highlight an R-cycle if one exists")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "dot" if args.verb == "export-dot" else "json"
    start = time.perf_counter()
    try:
        verdict, report, extras = VERBS[args.verb](args)
        if args.timings:
            report["seconds"] = round(time.perf_counter() - start, 6)
        out = render(report, args.format, extras)
        if args.figure:
            draw(args.verb, args.figure, extras, args.seed)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, GraphError, WordError, RingError, json.JSONDecodeError, OSError) as exc:
        # PreconditionError is a GraphError: a finder called outside its hypotheses
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out)
    if args.expect is not None:
        want = args.expect == "yes"
        return EXIT_YES if verdict is not None and verdict == want else EXIT_NO
    return EXIT_YES if verdict else EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
