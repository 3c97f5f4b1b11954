"""R-paths, R-cycles and the existence machinery built on them.

An R-cycle of length ``p > 1`` is a sequence of base paths ``pi_1 .. pi_p``
whose origins and termini are pairwise distinct, where the terminus of each
path is a star neighbour of the next origin and the last terminus is a star
neighbour of the first origin.  Only endpoints are constrained, so paths
from different segments may share interior vertices.

Three routes to a cycle live here:

* :func:`brute_force_r_cycle` -- complete search, the oracle for everything else;
* :func:`find_r_cycle_uc` -- constructive walk for proper graphs under (UC);
* :func:`find_r_cycle_rcolouring` -- recursive construction for R-colouring
  graphs with enough vertices per star component and few isolated vertices.

R-simple graphs get an exact counting test instead
(:func:`has_r_cycle_rsimple`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BudgetExceeded, GraphError, PreconditionError
from .graph import (
    RGraph,
    RSubgraph,
    SimpleGraph,
    Verdict,
    components,
    is_proper,
    isolated_set,
    r_subgraph,
    shortest_path,
)

DEFAULT_BUDGET = 10_000_000


# ---------------------------------------------------------------- R-cycles


@dataclass(frozen=True)
class RCycle:
    segments: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(tuple(s) for s in self.segments))

    def __len__(self):
        return len(self.segments)

    @property
    def origins(self) -> list[int]:
        return [s[0] for s in self.segments]

    @property
    def termini(self) -> list[int]:
        return [s[-1] for s in self.segments]

    def endpoints(self) -> list[int]:
        return [v for s in self.segments for v in (s[0], s[-1])]

    def links(self) -> list[tuple[int, int]]:
        """Star links ``(terminus_q, origin_{q+1})``, closing link last."""
        p = len(self.segments)
        return [(self.segments[q][-1], self.segments[(q + 1) % p][0]) for q in range(p)]

    def is_edge_cycle(self) -> bool:
        return all(len(s) == 2 for s in self.segments)

    def to_json(self, g: RGraph | None = None) -> dict:
        name = g.name if g is not None else (lambda v: v)
        return {
            "cycle": [[name(v) for v in seg] for seg in self.segments],
            "links": [[name(a), name(b)] for a, b in self.links()],
        }


def validate_r_cycle(g: RGraph, c: RCycle | Sequence[Sequence[int]]) -> Verdict:
    """Check a candidate against the R-cycle definition.

    The verdict's ``clause`` names the first failed requirement: ``"length"``
    (fewer than two segments), ``"path"`` (a segment is not a base path),
    ``"i"`` (repeated endpoint), ``"ii"`` (missing link) or ``"iii"``
    (missing closing link).
    """
    if not isinstance(c, RCycle):
        c = RCycle(tuple(tuple(s) for s in c))
    for seg in c.segments:
        for v in seg:
            if v not in g.vertices:
                raise GraphError(f"unknown vertex {v!r} in candidate cycle")
    p = len(c.segments)
    if p < 2:
        return Verdict(False, p, "length")
    for q, seg in enumerate(c.segments):
        if len(seg) < 1 or len(set(seg)) != len(seg):
            return Verdict(False, q, "path")
        if any(not g.base.has_edge(a, b) for a, b in zip(seg, seg[1:])):
            return Verdict(False, q, "path")
    ends = c.endpoints()
    if len(set(ends)) != len(ends):
        return Verdict(False, ends, "i")
    links = c.links()
    for q, (w, v) in enumerate(links[:-1]):
        if not g.star.has_edge(w, v):
            return Verdict(False, (q, (w, v)), "ii")
    w, v = links[-1]
    if not g.star.has_edge(w, v):
        return Verdict(False, (w, v), "iii")
    return Verdict(True)


def _ensure_valid(g: RGraph, c: RCycle, who: str) -> RCycle:
    verdict = validate_r_cycle(g, c)
    if not verdict:
        raise AssertionError(f"{who} produced an invalid R-cycle {c} (clause {verdict.clause})")
    return c


def _cycle_from_pairs(g: RGraph, pairs: Iterable[tuple[int, int]]) -> RCycle:
    segs = []
    for v, w in pairs:
        path = shortest_path(g.base, v, w)
        if path is None:
            raise AssertionError(f"no base path from {v} to {w}")
        segs.append(tuple(path))
    return RCycle(tuple(segs))


def brute_force_r_cycle(g: RGraph, max_len: int | None = None,
                        budget: int = DEFAULT_BUDGET) -> RCycle | None:
    """Exhaustive R-cycle search.

    Returns the first cycle in a fixed search order, or ``None`` when no
    R-cycle of at most ``max_len`` segments exists.  With the default bound
    the search is complete.  Raises :class:`BudgetExceeded` (inconclusive)
    when more than ``budget`` partial states are visited.

    Only endpoints matter, so the search runs over the alternating
    sequence ``v1 ~ w1 - v2 ~ w2 - ...`` where ``~`` is "same base
    component" and ``-`` is a star edge.  Reversing a cycle keeps it an
    R-cycle, so the smallest endpoint can always be taken as ``v1``.
    """
    verts = g.sorted_vertices()
    if max_len is None:
        max_len = len(verts) // 2
    comp_of: dict[int, frozenset[int]] = {}
    for comp in g.base_components():
        for v in comp:
            comp_of[v] = comp
    partners = {v: sorted(comp_of[v] - {v}) for v in verts}
    star_nb = {v: sorted(g.star.neighbours(v)) for v in verts}
    states = 0

    for s in verts:
        if not partners[s] or not star_nb[s]:
            continue
        closers = set(star_nb[s])
        used = {s}
        pairs: list[tuple[int, int]] = []

        def extend(v: int) -> list[tuple[int, int]] | None:
            nonlocal states
            for w in partners[v]:
                if w < s or w in used:
                    continue
                states += 1
                if states > budget:
                    raise BudgetExceeded(budget, "brute-force R-cycle search")
                used.add(w)
                pairs.append((v, w))
                if len(pairs) >= 2 and w in closers:
                    return list(pairs)
                if len(pairs) < max_len:
                    for u in star_nb[w]:
                        if u < s or u in used:
                            continue
                        if not any(x >= s and x not in used for x in partners[u]):
                            continue
                        used.add(u)
                        found = extend(u)
                        used.discard(u)
                        if found:
                            return found
                pairs.pop()
                used.discard(w)
            return None

        found = extend(s)
        if found:
            return _ensure_valid(g, _cycle_from_pairs(g, found), "brute force")
    return None


def to_edge_cycle(g: RGraph, c: RCycle) -> RCycle:
    """Replace every segment by the single edge joining its endpoints.

    Valid on clique graphs, where any two vertices of one base component
    are adjacent.
    """
    if not g.is_clique_graph():
        raise PreconditionError("edge conversion needs a clique base graph")
    if not validate_r_cycle(g, c):
        raise PreconditionError("input is not an R-cycle of this graph")
    out = RCycle(tuple((s[0], s[-1]) for s in c.segments))
    return _ensure_valid(g, out, "edge conversion")


# ------------------------------------------------------ R-neighbour families


@dataclass(frozen=True)
class UFamily:
    """Distinct R-neighbour sets split by size: >2, ==2 and ==1."""

    sets: tuple[frozenset[int], ...]
    large: tuple[frozenset[int], ...]
    medium: tuple[frozenset[int], ...]
    singletons: tuple[frozenset[int], ...]


def u_family(g: RGraph) -> UFamily:
    sets = tuple(g.u_family())
    return UFamily(
        sets,
        tuple(U for U in sets if len(U) > 2),
        tuple(U for U in sets if len(U) == 2),
        tuple(U for U in sets if len(U) == 1),
    )


def satisfies_uc(g: RGraph) -> Verdict:
    """(UC): any two R-neighbour sets are disjoint or share two or more vertices."""
    sets = g.u_family()
    for U in sets:
        if len(U) == 1:
            return Verdict(False, (U, U), "UC")
    for U, U2 in combinations(sets, 2):
        if len(U & U2) == 1:
            return Verdict(False, (U, U2), "UC")
    return Verdict(True)


def satisfies_sc(g: RGraph) -> Verdict:
    """(SC): any two R-neighbour sets are equal or disjoint."""
    sets = g.u_family()
    for U, U2 in combinations(sets, 2):
        if U & U2:
            return Verdict(False, (U, U2), "SC")
    return Verdict(True)


def find_r_cycle_uc(g: RGraph, trace: list | None = None) -> RCycle:
    """Construct an R-cycle in a proper R-graph whose R-neighbour sets
    satisfy (UC).

    Walks an edge R-path ``e_1, e_2, ...`` (always taking the smallest
    eligible vertex) until the last terminus ``w`` lets the walk close:

    * a star neighbour of ``w`` is an earlier origin ``v_q``: close at ``q``;
    * a fresh star neighbour ``u`` of ``w`` has a base neighbour that is an
      earlier origin or terminus: reroute through it and close;
    * no other case arises: if every star neighbour of ``w`` were an
      earlier terminus, (UC) would have closed the walk at an earlier step.

    Each extension consumes two fresh vertices, so at most ``|V|/2`` steps.
    """
    if not is_proper(g):
        bad = next(v for v in g.sorted_vertices() if g.degree(v) == 0)
        raise PreconditionError(f"graph is not proper: vertex {g.name(bad)} is isolated")
    uc = satisfies_uc(g)
    if not uc:
        U, U2 = uc.witness
        raise PreconditionError(
            f"(UC) fails for U-sets {sorted(map(g.name, U))} and {sorted(map(g.name, U2))}")

    def nb(v):
        return min(g.base.neighbours(v))

    v1 = g.sorted_vertices()[0]
    edges: list[tuple[int, int]] = [(v1, nb(v1))]
    origin_at = {v1: 0}
    terminus_at = {edges[0][1]: 0}

    while True:
        k = len(edges) - 1
        w = edges[k][1]
        star = sorted(g.U_open(w))
        hits = [origin_at[u] for u in star if u in origin_at]
        if hits:
            q = min(hits)
            cycle = RCycle(tuple(edges[q:]))
            _note(trace, "uc-close-origin", steps=k + 1)
            return _ensure_valid(g, cycle, "UC walk")
        fresh = [u for u in star if u not in terminus_at]
        if fresh:
            u = fresh[0]
            x = nb(u)
            if x in origin_at:
                q = origin_at[x]
                vq, wq = edges[q]
                cycle = RCycle(tuple([(u, vq, wq)] + edges[q + 1:]))
                _note(trace, "uc-close-reroute-origin", steps=k + 1)
                return _ensure_valid(g, cycle, "UC walk")
            if x in terminus_at:
                q = terminus_at[x]
                cycle = RCycle(tuple(edges[q + 1:] + [(u, x)]))
                _note(trace, "uc-close-reroute-terminus", steps=k + 1)
                return _ensure_valid(g, cycle, "UC walk")
            edges.append((u, x))
            origin_at[u] = k + 1
            terminus_at[x] = k + 1
            continue
        # Every star neighbour of w is an earlier terminus w_q.  (UC) would
        # give a second vertex in U(w) and U(v_{q+1}); it is a terminus
        # w_q' star-adjacent to the origin v_{q+1}, so the walk closed at q'.
        raise AssertionError("(UC) walk ran out of moves; (UC) cannot hold")


def _note(trace: list | None, action: str, **info) -> None:
    if trace is not None:
        trace.append({"action": action, **info})


# ------------------------------------------------------------- colourings


@dataclass(frozen=True)
class ColouringPartition:
    """Star components ``V_i`` of a graph and their classes ``V_ij``.

    Two vertices of one ``V_i`` share a class when they have the same
    star neighbourhood.  Components and classes are ordered by smallest
    vertex; indices are 0-based.
    """

    graph: RGraph
    star_components: tuple[frozenset[int], ...]
    classes: tuple[tuple[frozenset[int], ...], ...]

    @property
    def n(self) -> int:
        return len(self.star_components)

    def component_of(self, v: int) -> int:
        for i, comp in enumerate(self.star_components):
            if v in comp:
                return i
        raise GraphError(f"unknown vertex {v}")

    def class_of(self, v: int) -> tuple[int, int]:
        i = self.component_of(v)
        for j, cls in enumerate(self.classes[i]):
            if v in cls:
                return i, j
        raise AssertionError("partition does not cover its component")


def colouring_partition(g: RGraph) -> ColouringPartition:
    comps = tuple(g.star_components())
    classes = []
    for comp in comps:
        groups: dict[frozenset[int], set[int]] = {}
        for v in sorted(comp):
            groups.setdefault(g.U_open(v), set()).add(v)
        classes.append(tuple(sorted((frozenset(c) for c in groups.values()), key=min)))
    return ColouringPartition(g, comps, tuple(classes))


def is_colouring(p: ColouringPartition) -> bool:
    """Every two vertices of one star component have intersecting U-sets."""
    g = p.graph
    for comp in p.star_components:
        for a, b in combinations(sorted(comp), 2):
            if not g.U(a) & g.U(b):
                return False
    return True


def is_r_colouring(p: ColouringPartition) -> Verdict:
    """(RC) on every component: each ``v`` in ``V_ij`` is star-adjacent to
    exactly ``V_i \\ V_ij``.  Witness: ``(v, missing vertex)``."""
    g = p.graph
    for comp, classes in zip(p.star_components, p.classes):
        for cls in classes:
            want = comp - cls
            for v in sorted(cls):
                got = g.U_open(v)
                if got != want:
                    return Verdict(False, (v, min(want ^ got)), "RC")
    return Verdict(True)


@dataclass(frozen=True)
class QuotientGraph:
    """Graph on the classes of one star component.  Nodes are class
    indices; ``j -- k`` when a vertex of class ``j`` sees all of class ``k``."""

    component: int
    nodes: tuple[frozenset[int], ...]
    edges: frozenset[tuple[int, int]]

    def is_complete(self) -> bool:
        k = len(self.nodes)
        return len(self.edges) == k * (k - 1) // 2

    def as_simple_graph(self) -> SimpleGraph:
        return SimpleGraph(range(len(self.nodes)), self.edges)


def quotient_graph(p: ColouringPartition, i: int) -> QuotientGraph:
    if not 0 <= i < p.n:
        raise GraphError(f"component index {i} out of range")
    g = p.graph
    classes = p.classes[i]
    edges = set()
    for j, cls in enumerate(classes):
        rep = min(cls)
        seen = g.U_open(rep)
        for k, other in enumerate(classes):
            if k != j and other <= seen:
                edges.add((min(j, k), max(j, k)))
    return QuotientGraph(i, classes, frozenset(edges))


def mx_and_j(p: ColouringPartition, w_set: Iterable[int]) -> tuple[int, frozenset[int]]:
    """``(mx, J)``: the largest class intersection of ``w_set`` and the
    indices of the classes it touches.  ``w_set`` must lie in one component."""
    W = frozenset(w_set)
    if not W:
        return 0, frozenset()
    owners = {p.component_of(v) for v in W}
    if len(owners) > 1:
        raise GraphError(f"set straddles star components {sorted(owners)}")
    i = owners.pop()
    sizes = {j: len(W & cls) for j, cls in enumerate(p.classes[i])}
    return max(sizes.values()), frozenset(j for j, s in sizes.items() if s)


# --------------------------------------------- R-colouring construction


def rcolouring_obstruction(g: RGraph, p: ColouringPartition) -> str | None:
    rc = is_r_colouring(p)
    if not rc:
        v, missing = rc.witness
        return (f"not an R-colouring: U°({g.name(v)}) and the complement of its "
                f"class disagree at {g.name(missing)}")
    if p.n <= 1:
        return f"needs more than one star component, got {p.n}"
    for i, comp in enumerate(p.star_components):
        mx, _ = mx_and_j(p, comp)
        if len(comp) < 2 * mx + 1:
            return (f"|V_{i + 1}| = {len(comp)} < 2*mx(V_{i + 1})+1 = {2 * mx + 1}")
    iso = isolated_set(g, g.vertices)
    if len(iso) > p.n:
        return f"|I(V)| = {len(iso)} exceeds the number of star components {p.n}"
    return None


def find_r_cycle_rcolouring(g: RGraph, p: ColouringPartition | None = None,
                            trace: list | None = None) -> RCycle:
    """Construct an R-cycle in an R-colouring R-graph.

    Hypotheses: more than one star component ``V_i``; ``|V_i| >= 2 mx(V_i) + 1``
    for each ``i``; at most as many isolated vertices as star components.

    The construction strips isolated vertices to ``W``.  If the R-neighbour
    sets on ``W`` satisfy (UC) it defers to :func:`find_r_cycle_uc`.
    Otherwise either some ``V_i`` keeps at most one class alive in ``W`` and
    is dropped, or some ``V_i`` keeps exactly two classes (one of them a
    single vertex) and is shrunk to three vertices from three classes.
    Both moves stay within the hypotheses on a strictly smaller R-subgraph.
    With two components a short explicit cycle closes the case (UC) misses.

    Tie-breaks take the smallest index or vertex.  ``trace`` (a list)
    receives one record per step, including the recursion depth.
    """
    if p is None:
        p = colouring_partition(g)
    elif p.graph is not g:
        raise GraphError("partition belongs to a different graph")
    why = rcolouring_obstruction(g, p)
    if why:
        raise PreconditionError(why)
    cycle = _ps3(g, frozenset(g.vertices), 0, trace)
    return _ensure_valid(g, cycle, "R-colouring construction")


def _lift(sub: RSubgraph, c: RCycle) -> RCycle:
    return RCycle(tuple(tuple(sub.lift_path(seg)) for seg in c.segments))


def _ps3(root: RGraph, vs: frozenset[int], depth: int, trace) -> RCycle:
    sub = r_subgraph(root, vs)
    g = sub.graph
    p = colouring_partition(g)
    why = rcolouring_obstruction(g, p)
    if why:
        raise AssertionError(f"recursion left the hypotheses at depth {depth}: {why}")
    iso = isolated_set(g, vs)
    W = vs - iso
    Wi = [comp - iso for comp in p.star_components]
    on_w = r_subgraph(root, W)
    if satisfies_uc(on_w.graph):
        _note(trace, "uc", depth=depth, n=p.n, size=len(vs))
        return _lift(on_w, find_r_cycle_uc(on_w.graph))

    if p.n == 2:
        for i in (0, 1):
            mx_v, _ = mx_and_j(p, p.star_components[i])
            mx_w, _ = mx_and_j(p, Wi[i])
            if mx_v == 1 and mx_w == 1 and len(Wi[i]) >= 2:
                _note(trace, "base-explicit", depth=depth, n=2, size=len(vs))
                return _lift(sub, _two_step_cycle(g, Wi[i], W))
        raise AssertionError("two-component case found neither (UC) nor a clique side")

    for i, wi in enumerate(Wi):
        mx_w, _ = mx_and_j(p, wi)
        if len(wi) == mx_w:
            _note(trace, "drop-component", depth=depth, n=p.n, size=len(vs), component=i)
            return _ps3(root, vs - p.star_components[i], depth + 1, trace)

    for i, wi in enumerate(Wi):
        if _uc_within(on_w.graph, wi):
            continue
        mx_w, J = mx_and_j(p, wi)
        if not (len(J) == 2 and len(wi) == mx_w + 1):
            raise AssertionError("(UC) failure outside the two expected shapes")
        classes = p.classes[i]
        small, big = sorted(J, key=lambda j: (len(wi & classes[j]), j))
        a = min(wi & classes[small])
        b = min(wi & classes[big])
        untouched = [j for j in range(len(classes)) if j not in J]
        if not untouched:
            raise AssertionError("no untouched class to borrow a vertex from")
        c = min(classes[untouched[0]])
        keep = (vs - p.star_components[i]) | {a, b, c}
        _note(trace, "shrink-component", depth=depth, n=p.n, size=len(vs), component=i,
              kept=len(keep))
        return _ps3(root, keep, depth + 1, trace)
    raise AssertionError("(UC) fails but no component explains it")


def _uc_within(g: RGraph, part: frozenset[int]) -> bool:
    sets = {g.U(v) for v in part}
    return all(len(a & b) != 1 for a in sets for b in sets)


def _two_step_cycle(g: RGraph, clique_side: frozenset[int], W: frozenset[int]) -> RCycle:
    """Two-edge cycle through a star-clique side of a two-component graph."""
    v1 = min(clique_side)
    w1 = min(x for x in g.base.neighbours(v1) if x in W)
    v2 = min(x for x in g.U_open(w1) if x in W)
    w2 = min(x for x in g.base.neighbours(v2) if x in clique_side and x != v1)
    return RCycle(((v1, w1), (v2, w2)))


# --------------------------------------------------------------- R-simple


def is_r_simple(g: RGraph) -> Verdict:
    """(SC) plus no length-2 R-cycle made of edges.

    Witness for the second clause: two base edges ``(v, w), (v', w')`` with
    ``vv'`` and ``ww'`` both star edges.
    """
    sc = satisfies_sc(g)
    if not sc:
        return sc
    seen: dict[tuple[frozenset[int], frozenset[int]], tuple[int, int]] = {}
    for a, b in sorted(g.base.edges):
        Ua, Ub = g.U(a), g.U(b)
        key = (Ua, Ub) if min(Ua) < min(Ub) else (Ub, Ua)
        if key in seen:
            return Verdict(False, (seen[key], (a, b)), "ii")
        seen[key] = (a, b)
    return Verdict(True)


def _require_r_simple(g: RGraph) -> None:
    verdict = is_r_simple(g)
    if not verdict:
        raise PreconditionError(f"graph is not R-simple (clause {verdict.clause}: {verdict.witness})")


@dataclass(frozen=True)
class InducedSimpleGraph:
    """Quotient of an R-simple graph by its R-neighbour sets.

    ``graph`` has vertices ``0 .. len(usets)-1``; ``node_of`` maps each
    original vertex to its node.
    """

    usets: tuple[frozenset[int], ...]
    graph: SimpleGraph
    node_of: dict = field(compare=False)

    def degree(self, i: int) -> int:
        return self.graph.degree(i)

    def has_cycle(self) -> bool:
        return len(self.graph.edges) > len(self.graph.vertices) - len(components(self.graph))


def induced_simple_graph(g: RGraph) -> InducedSimpleGraph:
    _require_r_simple(g)
    usets = tuple(g.u_family())
    node_of = {v: i for i, U in enumerate(usets) for v in U}
    edges = {(min(node_of[a], node_of[b]), max(node_of[a], node_of[b])) for a, b in g.base.edges}
    return InducedSimpleGraph(usets, SimpleGraph(range(len(usets)), edges), node_of)


def r_components(g: RGraph) -> list[RSubgraph]:
    """R-components, ordered by smallest vertex."""
    quotient = induced_simple_graph(g)
    out = []
    for comp in components(quotient.graph):
        W = frozenset().union(*(quotient.usets[i] for i in comp))
        out.append(r_subgraph(g, W))
    return sorted(out, key=lambda s: min(s.w_set))


def euler_criterion(comp: RSubgraph | RGraph) -> int:
    """``|W| - |U_W| - omega + 1`` for an R-connected R-simple (sub)graph."""
    g = comp.graph if isinstance(comp, RSubgraph) else comp
    return len(g.vertices) - len(g.u_family()) - len(g.base_components()) + 1


def has_r_cycle_rsimple(g: RGraph) -> bool:
    """Exact R-cycle test for R-simple graphs: some R-component has a
    nonzero Euler criterion."""
    return any(euler_criterion(c) != 0 for c in r_components(g))


def spanning_forest(g: RGraph) -> RGraph:
    """Same star graph over a BFS spanning forest of the base graph."""
    edges = []
    for comp in g.base_components():
        root = min(comp)
        seen = {root}
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in sorted(g.base.neighbours(v)):
                    if w not in seen:
                        seen.add(w)
                        edges.append((v, w))
                        nxt.append(w)
            frontier = nxt
    return RGraph(SimpleGraph(g.vertices, edges), g.star, g.names)
