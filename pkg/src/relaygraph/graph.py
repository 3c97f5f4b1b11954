"""Simple graphs, R-graphs and R-subgraphs.

An R-graph is a pair of simple graphs on one vertex set: the *base* graph
``(V, E)`` and the *star* graph ``(V, E*)``.  Every vertex ``v`` has an
R-neighbour set ``U(v)`` made of ``v`` and its star neighbours, and the
defining condition (R) asks that each ``U(v)`` meets every connected
component of the base graph in at most one vertex.

Vertices are dense non-negative integers.  Display names live in a side
table and only matter for I/O.  Every object in this module is immutable
after construction and iteration is always in increasing vertex order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Mapping

from .errors import GraphError

__all__ = [
    "GraphError",
    "Verdict",
    "SimpleGraph",
    "RGraph",
    "RSubgraph",
    "components",
    "r_neighbour_set",
    "check_condition_r",
    "check_condition_r_prime",
    "check_condition_r_doubleprime",
    "is_proper",
    "r_subgraph",
    "isolated_set",
    "shortest_path",
]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checker: a truth value plus a witness when it fails."""

    holds: bool
    witness: Any = None
    clause: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class SimpleGraph:
    """Finite undirected graph without loops or multiple edges."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        verts = frozenset(vertices)
        es = set()
        for a, b in edges:
            if a == b:
                raise GraphError(f"loop at vertex {a}")
            if a not in verts or b not in verts:
                raise GraphError(f"edge ({a}, {b}) has an endpoint outside the vertex set")
            e = _edge(a, b)
            if e in es:
                raise GraphError(f"duplicate edge {e}")
            es.add(e)
        adj: dict[int, set[int]] = {v: set() for v in verts}
        for a, b in es:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"SimpleGraph({sorted(self.vertices)}, {sorted(self.edges)})"

    def neighbours(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adj.get(a, ())

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def induced(self, subset: Iterable[int]) -> "SimpleGraph":
        keep = frozenset(subset)
        return SimpleGraph(keep, (e for e in self.edges if e[0] in keep and e[1] in keep))


def components(g: SimpleGraph) -> list[frozenset[int]]:
    """Connected components, ordered by their smallest vertex."""
    seen: set[int] = set()
    out = []
    for s in g.sorted_vertices():
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbours(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def shortest_path(g: SimpleGraph, source: int, target: int,
                  allowed: frozenset[int] | set[int] | None = None) -> list[int] | None:
    """BFS path from source to target; interior vertices restricted to ``allowed``."""
    if source == target:
        return [source]
    parent = {source: None}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in sorted(g.neighbours(v)):
            if w in parent:
                continue
            if w == target:
                path = [w, v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if allowed is not None and w not in allowed:
                continue
            parent[w] = v
            queue.append(w)
    return None


def _component_index(g: SimpleGraph) -> dict[int, int]:
    return {v: i for i, comp in enumerate(components(g)) for v in comp}


def _same_vertices(base: SimpleGraph, star: SimpleGraph) -> None:
    if base.vertices != star.vertices:
        raise GraphError("base and star graphs must share one vertex set")


def _u(star: SimpleGraph, v: int) -> frozenset[int]:
    return star.neighbours(v) | {v}


def check_condition_r(base: SimpleGraph, star: SimpleGraph) -> Verdict:
    """Condition (R): every U(v) meets each base component at most once.

    On failure the witness is ``(v, component, (a, b))`` with ``a, b`` two
    members of ``U(v)`` in that component.
    """
    _same_vertices(base, star)
    comps = components(base)
    index = {v: i for i, c in enumerate(comps) for v in c}
    for v in base.sorted_vertices():
        hit: dict[int, int] = {}
        for w in sorted(_u(star, v)):
            ci = index[w]
            if ci in hit:
                return Verdict(False, (v, comps[ci], (hit[ci], w)), "R")
            hit[ci] = w
    return Verdict(True)


def check_condition_r_prime(base: SimpleGraph, star: SimpleGraph) -> Verdict:
    """Condition (R'): two distinct vertices sharing a base component and a
    star component are more than two star steps apart."""
    _same_vertices(base, star)
    base_idx = _component_index(base)
    star_idx = _component_index(star)
    for a, b in combinations(base.sorted_vertices(), 2):
        if base_idx[a] != base_idx[b] or star_idx[a] != star_idx[b]:
            continue
        if star.has_edge(a, b) or star.neighbours(a) & star.neighbours(b):
            return Verdict(False, (a, b), "R'")
    return Verdict(True)


def check_condition_r_doubleprime(base: SimpleGraph, star: SimpleGraph) -> Verdict:
    """Condition (R''): no base path joins two members of one R-neighbour set.

    Runs a path search for every pair, independent of component labels.
    """
    _same_vertices(base, star)
    usets = sorted({_u(star, v) for v in base.vertices}, key=sorted)
    for U in usets:
        for a, b in combinations(sorted(U), 2):
            path = shortest_path(base, a, b)
            if path is not None:
                return Verdict(False, (U, path), "R''")
    return Verdict(True)


class RGraph:
    """An R-graph ``(V, E, E*)``.

    Construction validates condition (R) unless ``check=False`` is passed,
    which is reserved for feeding deliberately invalid candidates to the
    checkers.
    """

    __slots__ = ("base", "star", "names", "_u", "valid")

    def __init__(self, base: SimpleGraph, star: SimpleGraph,
                 names: Mapping[int, str] | None = None, *, check: bool = True):
        _same_vertices(base, star)
        if check:
            verdict = check_condition_r(base, star)
            if not verdict:
                v, _, pair = verdict.witness
                raise GraphError(f"condition (R) fails at U({v}): {pair} share a base component")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "names", dict(names) if names else {})
        object.__setattr__(self, "_u", {v: _u(star, v) for v in base.vertices})
        object.__setattr__(self, "valid", check)

    def __setattr__(self, name, value):
        raise AttributeError("RGraph is immutable")

    @classmethod
    def from_edges(cls, n_or_vertices, base_edges=(), star_edges=(), names=None, *, check=True):
        verts = range(n_or_vertices) if isinstance(n_or_vertices, int) else n_or_vertices
        verts = frozenset(verts)
        return cls(SimpleGraph(verts, base_edges), SimpleGraph(verts, star_edges), names, check=check)

    @classmethod
    def from_names(cls, vertex_names, base_edges=(), star_edges=(), *, check=True):
        """Build from string names, numbering vertices in the given order."""
        ids = {name: i for i, name in enumerate(vertex_names)}
        return cls.from_edges(
            len(ids),
            [(ids[a], ids[b]) for a, b in base_edges],
            [(ids[a], ids[b]) for a, b in star_edges],
            {i: name for name, i in ids.items()},
            check=check,
        )

    @property
    def vertices(self) -> frozenset[int]:
        return self.base.vertices

    def __len__(self):
        return len(self.base.vertices)

    def __repr__(self):
        return (f"RGraph(V={sorted(self.vertices)}, E={sorted(self.base.edges)}, "
                f"E*={sorted(self.star.edges)})")

    def __eq__(self, other):
        if not isinstance(other, RGraph):
            return NotImplemented
        return self.base == other.base and self.star == other.star

    def __hash__(self):
        return hash((self.base, self.star))

    def name(self, v: int) -> str:
        return self.names.get(v, f"v{v}")

    def id_of(self, name: str) -> int:
        for v, n in self.names.items():
            if n == name:
                return v
        raise GraphError(f"unknown vertex name {name!r}")

    def ids(self, *names: str) -> list[int]:
        return [self.id_of(n) for n in names]

    def sorted_vertices(self) -> list[int]:
        return sorted(self.base.vertices)

    def U(self, v: int) -> frozenset[int]:
        try:
            return self._u[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def U_open(self, v: int) -> frozenset[int]:
        return self.U(v) - {v}

    def u_family(self) -> list[frozenset[int]]:
        """Distinct R-neighbour sets, ordered by sorted contents."""
        return sorted(set(self._u.values()), key=sorted)

    def degree(self, v: int) -> int:
        return self.base.degree(v)

    def is_empty(self) -> bool:
        return not self.base.edges

    def base_components(self) -> list[frozenset[int]]:
        return components(self.base)

    def star_components(self) -> list[frozenset[int]]:
        return components(self.star)

    def is_clique_graph(self) -> bool:
        """True when every base component is a complete graph."""
        for comp in components(self.base):
            k = len(comp)
            if sum(self.base.degree(v) for v in comp) != k * (k - 1):
                return False
        return True


def r_neighbour_set(g: RGraph, v: int) -> frozenset[int]:
    """U(v): the star neighbours of ``v`` together with ``v``."""
    return g.U(v)


def is_proper(g: RGraph) -> bool:
    return all(g.degree(v) > 0 for v in g.vertices)


@dataclass(frozen=True)
class RSubgraph:
    """The R-subgraph generated by ``w_set``.

    ``graph`` keeps the parent's vertex ids.  ``witness`` maps each edge of
    ``graph.base`` to a base path of the parent joining its endpoints
    through vertices outside ``w_set``.
    """

    parent: RGraph
    w_set: frozenset[int]
    graph: RGraph
    witness: Mapping[tuple[int, int], tuple[int, ...]]

    @property
    def e_w(self) -> frozenset[tuple[int, int]]:
        return self.graph.base.edges

    @property
    def e_w_star(self) -> frozenset[tuple[int, int]]:
        return self.graph.star.edges

    def U_W(self, v: int) -> frozenset[int]:
        if v not in self.w_set:
            raise GraphError(f"vertex {v} is not in the generating set")
        return self.parent.U(v) & self.w_set

    def lift_path(self, path) -> list[int]:
        """Expand a base path of the subgraph into a simple path of the parent."""
        walk = [path[0]]
        for a, b in zip(path, path[1:]):
            seg = self.witness[_edge(a, b)]
            if seg[0] != a:
                seg = seg[::-1]
            walk.extend(seg[1:])
        # drop loops so the result is a path, not just a walk
        out: list[int] = []
        pos: dict[int, int] = {}
        for v in walk:
            if v in pos:
                cut = pos[v]
                for u in out[cut + 1:]:
                    del pos[u]
                del out[cut + 1:]
            else:
                pos[v] = len(out)
                out.append(v)
        return out


def r_subgraph(g: RGraph, w_set: Iterable[int]) -> RSubgraph:
    """Build the R-subgraph generated by ``w_set``.

    ``ww'`` is an edge when the parent joins ``w`` and ``w'`` by a base path
    whose interior avoids ``w_set``.  One BFS per source through the
    complement: O(|W| (|V| + |E|)).
    """
    W = frozenset(w_set)
    if not W <= g.vertices:
        raise GraphError(f"vertices {sorted(W - g.vertices)} are not in the graph")
    outside = g.vertices - W
    witness: dict[tuple[int, int], tuple[int, ...]] = {}
    for s in sorted(W):
        parent = {s: None}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in sorted(g.base.neighbours(v)):
                if w in parent:
                    continue
                parent[w] = v
                if w in W:
                    e = _edge(s, w)
                    if e not in witness:
                        path = [w]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        witness[e] = tuple(path[::-1]) if s < w else tuple(path)
                elif w in outside:
                    queue.append(w)
    star = g.star.induced(W)
    base = SimpleGraph(W, witness.keys())
    names = {v: g.names[v] for v in W if v in g.names}
    return RSubgraph(g, W, RGraph(base, star, names), witness)


def isolated_set(g: RGraph | RSubgraph, x_set: Iterable[int]) -> frozenset[int]:
    """Vertices of ``x_set`` with no incident base edge in ``g``."""
    graph = g.graph if isinstance(g, RSubgraph) else g
    X = frozenset(x_set)
    if not X <= graph.vertices:
        raise GraphError(f"vertices {sorted(X - graph.vertices)} are not in the graph")
    return frozenset(x for x in X if graph.degree(x) == 0)
