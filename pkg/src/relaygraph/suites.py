"""Seeded randomized property campaigns.

Every trial draws from its own ``random.Random`` seeded by the suite name,
the campaign seed and the trial index, so any single failure can be
replayed alone.  Reports carry no timings and are deterministic.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Callable

from .cycles import (
    brute_force_r_cycle,
    find_r_cycle_rcolouring,
    find_r_cycle_uc,
    has_r_cycle_rsimple,
    u_family,
    validate_r_cycle,
)
from .errors import BudgetExceeded, PreconditionError
from .freegroup import FreeGroup, WordError, make_z_family, verify_z_property_i, verify_z_property_ii
from .generators import (
    random_pair,
    random_rcolouring_instance,
    random_rgraph,
    random_rsimple_instance,
    random_uc_instance,
)
from .graph import (
    RGraph,
    SimpleGraph,
    Verdict,
    check_condition_r,
    check_condition_r_doubleprime,
    check_condition_r_prime,
    is_proper,
    isolated_set,
    r_subgraph,
)
from .groupring import random_ring_instance, verify_r_not_one
from .io import graph_document

__all__ = ["SUITES", "run_suite", "trial_rng", "simsup_check", "shrink_graph"]


def trial_rng(suite: str, seed: int, k: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{k}")


def simsup_check(g: RGraph, w_set) -> Verdict:
    """Isolated-vertex inequality for ``W`` and its complement, and the
    equality characterization.

    Witness: ``(gap, bound, equal, characterized)`` where ``gap`` is
    ``|I_W(W)| - |I(W)|`` and ``bound`` is ``|W^c| - |I(W^c)|``.
    """
    W = frozenset(w_set)
    Wc = g.vertices - W
    sub = r_subgraph(g, W)
    gap = len(isolated_set(sub, W)) - len(isolated_set(g, W))
    bound = len(Wc) - len(isolated_set(g, Wc))
    char = True
    for v in Wc - isolated_set(g, Wc):
        if g.degree(v) != 1:
            char = False
            break
        (w,) = g.base.neighbours(v)
        if w not in W or g.degree(w) != 1:
            char = False
            break
    ok = 0 <= gap <= bound and (gap == bound) == char
    return Verdict(ok, (gap, bound, gap == bound, char), None if ok else "simsup")


def shrink_graph(g: RGraph, fails: Callable[[RGraph], bool]) -> RGraph:
    """Greedy vertex deletion keeping ``fails`` true; ids are renumbered."""
    current = g
    changed = True
    while changed:
        changed = False
        for v in current.sorted_vertices():
            keep = [u for u in current.sorted_vertices() if u != v]
            idx = {u: i for i, u in enumerate(keep)}

            def sub(sg: SimpleGraph) -> SimpleGraph:
                return SimpleGraph(range(len(keep)), [(idx[a], idx[b]) for a, b in sg.edges if v not in (a, b)])

            cand = RGraph(sub(current.base), sub(current.star),
                          {idx[u]: current.name(u) for u in keep}, check=False)
            try:
                still = fails(cand)
            except Exception:
                still = False
            if still:
                current = cand
                changed = True
                break
    return current


# ------------------------------------------------------------------ trials
# Each trial returns (status, counters, detail) with status in
# {"pass", "fail", "inconclusive"}.


def _uc_trial(rng, budget, p_max):
    g = random_uc_instance(rng)
    c = find_r_cycle_uc(g)
    ok = bool(validate_r_cycle(g, c))
    exists = brute_force_r_cycle(g, budget=budget) is not None
    if ok and exists:
        return "pass", {"edge_cycles": int(c.is_edge_cycle())}, None
    return "fail", {}, {"graph": graph_document(g), "revalidates": ok, "brute_force": exists}


def _rcolouring_trial(rng, budget, p_max):
    g = random_rcolouring_instance(rng)
    trace: list = []
    c = find_r_cycle_rcolouring(g, trace=trace)
    counters = Counter(step["action"] for step in trace)
    if validate_r_cycle(g, c):
        return "pass", counters, None
    return "fail", counters, {"graph": graph_document(g)}


def _rsimple_facts(g: RGraph, budget: int) -> tuple[bool, bool, bool]:
    exists = brute_force_r_cycle(g, budget=budget) is not None
    fam = u_family(g)
    implied = is_proper(g) and len(fam.large) >= len(fam.singletons)
    return exists, has_r_cycle_rsimple(g), implied


def _rsimple_trial(rng, budget, p_max):
    g = random_rsimple_instance(rng)
    exists, crit, implied = _rsimple_facts(g, budget)
    counters = {"with_cycle": int(exists), "count_rule_applies": int(implied)}
    if exists == crit and (exists or not implied):
        return "pass", counters, None

    def fails(h):
        e, c, i = _rsimple_facts(h, budget)
        return e != c or (i and not e)

    small = shrink_graph(g, fails)
    return "fail", counters, {"graph": graph_document(g), "shrunk": graph_document(small),
                              "brute_force": exists, "criterion": crit}


def _simsup_trial(rng, budget, p_max):
    g = random_rgraph(rng, rng.randint(1, 12))
    W = [v for v in g.sorted_vertices() if rng.random() < 0.5]
    v = simsup_check(g, W)
    counters = {"equality": int(v.witness[2])}
    if v:
        return "pass", counters, None
    return "fail", counters, {"graph": graph_document(g), "W": [g.name(x) for x in W], "values": v.witness}


def _conditions(g: RGraph) -> tuple[bool, bool, bool]:
    return (bool(check_condition_r(g.base, g.star)), bool(check_condition_r_prime(g.base, g.star)),
            bool(check_condition_r_doubleprime(g.base, g.star)))


def _conditions_trial(rng, budget, p_max):
    g = random_pair(rng, rng.randint(1, 9), rng.uniform(0.1, 0.5), rng.uniform(0.1, 0.5))
    r, r1, r2 = _conditions(g)
    if r == r1 == r2:
        return "pass", {"holds": int(r)}, None
    small = shrink_graph(g, lambda h: len(set(_conditions(h))) > 1)
    return "fail", {}, {"graph": graph_document(g), "shrunk": graph_document(small),
                        "R": r, "R'": r1, "R''": r2}


def _random_s_family(rng, group, size, max_len):
    out = []
    while len(out) < size:
        letters = [(rng.randrange(group.rank), rng.choice((1, -1))) for _ in range(rng.randint(1, max_len))]
        w = group.word(letters)
        if w and w not in out:
            out.append(w)
    return out


def _zwords_trial(rng, budget, p_max):
    group = FreeGroup(2)
    s_set = _random_s_family(rng, group, rng.randint(1, 4), 3)
    fam = make_z_family(s_set, rng.randint(1, 3))
    v1 = verify_z_property_i(fam)
    try:
        v2 = verify_z_property_ii(fam, p_max, budget)
    except BudgetExceeded:
        return "inconclusive", {}, {"S": [str(w) for w in s_set]}
    if v1 and v2:
        return "pass", {}, None
    return "fail", {}, {"S": [str(w) for w in s_set], "m": fam.m,
                        "i": v1.witness, "ii": v2.witness}


def _ring_trial(rng, budget, p_max):
    inst = random_ring_instance(rng)
    verdict, report = verify_r_not_one(inst.specs, inst.bs)
    counters = {"classes_merged": sum(t["classes"] < 3 * t["m_t"] * t["n_t"] for t in report["per_t"]),
                "classes_cancelled": sum(t["M_t_star"] < t["classes"] for t in report["per_t"])}
    if verdict:
        return "pass", counters, None
    return "fail", counters, {"instance": inst.to_json(), "report": report}


SUITES: dict[str, tuple[Callable, int]] = {
    "uc": (_uc_trial, 1000),
    "rcolouring": (_rcolouring_trial, 500),
    "rsimple": (_rsimple_trial, 1000),
    "simsup": (_simsup_trial, 10000),
    "conditions": (_conditions_trial, 2000),
    "zwords": (_zwords_trial, 200),
    "ring": (_ring_trial, 200),
}


def run_suite(name: str, seed: int = 0, count: int | None = None, budget: int = 1_000_000,
              p_max: int = 3, keep_failures: int = 3) -> dict:
    """Run ``count`` trials of suite ``name`` and summarize.

    A precondition error inside a trial counts as a failure: generators
    promise instances that satisfy every hypothesis.
    """
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    trial, default = SUITES[name]
    count = default if count is None else count
    tally = Counter()
    counters: Counter = Counter()
    failures = []
    for k in range(count):
        rng = trial_rng(name, seed, k)
        try:
            status, extra, detail = trial(rng, budget, p_max)
        except BudgetExceeded:
            status, extra, detail = "inconclusive", {}, None
        except (PreconditionError, WordError) as exc:
            status, extra, detail = "fail", {}, {"error": str(exc)}
        tally[status] += 1
        counters.update(extra)
        if status == "fail" and len(failures) < keep_failures:
            failures.append({"trial": k, **(detail or {})})
    return {
        "suite": name,
        "seed": seed,
        "trials": count,
        "passed": tally["pass"],
        "failed": tally["fail"],
        "inconclusive": tally["inconclusive"],
        "counters": dict(sorted(counters.items())),
        "failures": failures,
    }
