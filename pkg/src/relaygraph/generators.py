"""Random and exhaustive instance generators for property campaigns.

Graphs meeting a theorem's hypotheses are vanishingly rare among raw
random pairs, so each family is grown directly: fix the star graph first,
then add base edges only while condition (R) (and any extra constraint)
stays intact.  Every generator takes a ``random.Random`` so campaigns are
reproducible from a seed.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .graph import RGraph, SimpleGraph

__all__ = [
    "random_pair",
    "random_rgraph",
    "random_uc_instance",
    "random_rcolouring_instance",
    "random_rsimple_instance",
    "enumerate_rsimple",
    "enumerate_pairs",
]


class _BaseBuilder:
    """Grows a base graph under a fixed star graph, keeping (R).

    Merging two base components is legal when no R-neighbour set touches
    both.  With ``simple=True`` it also refuses a second base edge between
    the same two R-neighbour sets, which keeps the graph R-simple when the
    star graph is a union of cliques.
    """

    def __init__(self, star: SimpleGraph, simple: bool = False, blocked=()):
        self.star = star
        self.blocked = frozenset(blocked)
        self.verts = sorted(star.vertices)
        self.usets = sorted({star.neighbours(v) | {v} for v in self.verts}, key=sorted)
        self.parent = {v: v for v in self.verts}
        self.touch = {v: {i for i, U in enumerate(self.usets) if v in U} for v in self.verts}
        self.edges: set[tuple[int, int]] = set()
        self.degree = {v: 0 for v in self.verts}
        self.simple = simple
        self.own = {v: self.usets.index(star.neighbours(v) | {v}) for v in self.verts}
        self.pairs: set[tuple[int, int]] = set()

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def legal(self, a: int, b: int) -> bool:
        if a == b or (min(a, b), max(a, b)) in self.edges:
            return False
        if a in self.blocked or b in self.blocked:
            return False
        ra, rb = self.find(a), self.find(b)
        if ra != rb and self.touch[ra] & self.touch[rb]:
            return False
        if self.simple:
            key = tuple(sorted((self.own[a], self.own[b])))
            if key[0] == key[1] or key in self.pairs:
                return False
        return True

    def add(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.touch[ra] |= self.touch.pop(rb)
        self.edges.add((min(a, b), max(a, b)))
        self.degree[a] += 1
        self.degree[b] += 1
        if self.simple:
            self.pairs.add(tuple(sorted((self.own[a], self.own[b]))))

    def try_add(self, a: int, b: int) -> bool:
        if self.legal(a, b):
            self.add(a, b)
            return True
        return False

    def cover_isolated(self, rng: random.Random, order=None) -> None:
        order = list(self.verts) if order is None else list(order)
        rng.shuffle(order)
        for v in order:
            if self.degree[v]:
                continue
            others = [u for u in self.verts if u != v]
            rng.shuffle(others)
            others.sort(key=lambda u: self.degree[u] > 0)
            for u in others:
                if self.try_add(v, u):
                    break

    def sprinkle(self, rng: random.Random, attempts: int) -> None:
        if len(self.verts) < 2:
            return
        for _ in range(attempts):
            a, b = rng.sample(self.verts, 2)
            self.try_add(a, b)

    def isolated(self) -> list[int]:
        return [v for v in self.verts if self.degree[v] == 0]

    def graph(self) -> RGraph:
        return RGraph(SimpleGraph(self.verts, self.edges), self.star)


def random_pair(rng: random.Random, n: int, p_base: float = 0.3, p_star: float = 0.3) -> RGraph:
    """Independent random base and star graphs, not checked for (R)."""
    base, star = [], []
    for a, b in combinations(range(n), 2):
        if rng.random() < p_base:
            base.append((a, b))
        if rng.random() < p_star:
            star.append((a, b))
    return RGraph(SimpleGraph(range(n), base), SimpleGraph(range(n), star), check=False)


def random_rgraph(rng: random.Random, n: int, p_star: float = 0.3, attempts: int | None = None) -> RGraph:
    """Random star graph, then random base edges kept only when (R) survives."""
    star = SimpleGraph(range(n), [e for e in combinations(range(n), 2) if rng.random() < p_star])
    b = _BaseBuilder(star)
    b.sprinkle(rng, attempts if attempts is not None else rng.randint(0, 2 * n))
    return b.graph()


def _multipartite(parts_sizes, start: int) -> tuple[list[list[int]], list[tuple[int, int]]]:
    parts, v = [], start
    for size in parts_sizes:
        parts.append(list(range(v, v + size)))
        v += size
    edges = [(a, b) for P, Q in combinations(parts, 2) for a in P for b in Q]
    return parts, edges


def _star_from_shapes(shapes, with_parts: bool = False):
    edges, v, all_parts = [], 0, []
    for shape in shapes:
        parts, es = _multipartite(shape, v)
        edges.extend(es)
        all_parts.append(parts)
        v += sum(shape)
    star = SimpleGraph(range(v), edges)
    return (star, all_parts) if with_parts else star


def _uc_shape(rng: random.Random, room: int) -> list[int] | None:
    """A complete multipartite shape whose R-neighbour sets satisfy (UC)."""
    options = []
    if room >= 2:
        options.append([1, 1])
    if room >= 3:
        options.append("many")
    if room >= 4:
        options.append("two-big")
    if not options:
        return None
    kind = rng.choice(options)
    if kind == "many":
        k = rng.randint(3, min(room, 5))
        sizes = [1] * k
        extra = rng.randint(0, room - k)
        for _ in range(extra):
            sizes[rng.randrange(k)] += 1
        return sizes
    if kind == "two-big":
        a = rng.randint(2, room - 2)
        b = rng.randint(2, room - a)
        return [a, b]
    return kind


def random_uc_instance(rng: random.Random, max_n: int = 12) -> RGraph:
    """Proper R-graph whose R-neighbour sets satisfy (UC).

    Star components are complete multipartite: ``K_{1,1}``, two parts of
    size at least two, or three or more parts.
    """
    while True:
        n_target = rng.randint(4, max_n)
        shapes, used = [], 0
        while True:
            shape = _uc_shape(rng, n_target - used)
            if shape is None:
                break
            shapes.append(shape)
            used += sum(shape)
            if rng.random() < 0.2:
                break
        if len(shapes) < 2:
            continue
        b = _BaseBuilder(_star_from_shapes(shapes))
        b.cover_isolated(rng)
        if b.isolated():
            continue
        b.sprinkle(rng, rng.randint(0, used))
        return b.graph()


def _rc_shape(rng: random.Random, room: int) -> list[int] | None:
    """Multipartite shape with ``size >= 2 * largest part + 1``."""
    if room < 3:
        return None
    top = rng.choice([1, 1, 2, 2, 3]) if room >= 7 else rng.choice([1, 2]) if room >= 5 else 1
    sizes = [top]
    total_min = 2 * top + 1
    budget = rng.randint(total_min, min(room, total_min + 3))
    while sum(sizes) < budget:
        s = rng.randint(1, min(top, budget - sum(sizes)))
        sizes.append(s)
    if len(sizes) < 3 or sum(sizes) < 2 * max(sizes) + 1:
        return None
    rng.shuffle(sizes)
    return sizes


def random_rcolouring_instance(rng: random.Random, max_n: int = 14) -> RGraph:
    """R-colouring R-graph meeting every hypothesis of the R-colouring
    existence theorem: at least two star components, each complete
    multipartite with ``|V_i| >= 2 mx(V_i) + 1``, and at most ``n``
    isolated vertices."""
    while True:
        shapes, used = [], 0
        room = rng.randint(6, max_n)
        while True:
            shape = _rc_shape(rng, room - used)
            if shape is None:
                break
            shapes.append(shape)
            used += sum(shape)
            if len(shapes) >= 2 and rng.random() < 0.3:
                break
        if len(shapes) < 2:
            continue
        star, parts = _star_from_shapes(shapes, with_parts=True)
        n = len(shapes)
        mode = rng.random()
        blocked: set[int] = set()
        if mode >= 0.7:
            # starve one component down to one class, or to one class plus
            # a single vertex of another, so the (UC) shortcut does not apply
            comp = parts[rng.randrange(n)]
            ordered = sorted(comp, key=len, reverse=True)
            keep = set(ordered[0])
            if mode >= 0.85:
                keep.add(rng.choice(rng.choice(ordered[1:])))
            blocked = {v for part in comp for v in part} - keep
        b = _BaseBuilder(star, blocked=blocked)
        if mode < 0.4 or mode >= 0.7:
            b.cover_isolated(rng)
        else:
            # stop adding as soon as few enough vertices are isolated
            order = list(b.verts)
            rng.shuffle(order)
            for v in order:
                if len(b.isolated()) <= rng.randint(0, n):
                    break
                if b.degree[v]:
                    continue
                others = [u for u in b.verts if u != v]
                rng.shuffle(others)
                for u in others:
                    if b.try_add(v, u):
                        break
        if rng.random() < 0.5:
            b.sprinkle(rng, rng.randint(0, used // 2))
        if len(b.isolated()) <= n:
            return b.graph()


def _clique_star(rng: random.Random, n: int, max_clique: int = 4) -> SimpleGraph:
    verts = list(range(n))
    rng.shuffle(verts)
    edges, i = [], 0
    while i < n:
        k = rng.randint(1, min(max_clique, n - i))
        block = verts[i:i + k]
        edges.extend(combinations(sorted(block), 2))
        i += k
    return SimpleGraph(range(n), edges)


def random_rsimple_instance(rng: random.Random, max_n: int = 12, proper: bool | None = None) -> RGraph:
    """R-simple R-graph: star graph a disjoint union of cliques, base edges
    filtered so no two join the same pair of cliques."""
    while True:
        n = rng.randint(2, max_n)
        b = _BaseBuilder(_clique_star(rng, n), simple=True)
        want_proper = proper if proper is not None else rng.random() < 0.5
        if want_proper:
            b.cover_isolated(rng)
            if b.isolated():
                continue
        b.sprinkle(rng, rng.randint(0, 2 * n))
        if proper is False and not b.isolated():
            continue
        return b.graph()


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def enumerate_rsimple(max_n: int = 6, min_n: int = 1) -> Iterator[RGraph]:
    """Every R-simple R-graph on ``min_n .. max_n`` vertices, once per
    isomorphism class.

    Base graphs come from the graph atlas (one per isomorphism class).  For
    each, the star partitions into cliques that keep (R) and clause (ii)
    are enumerated and reduced to one representative per orbit of the base
    graph's automorphism group.
    """
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n < min_n or n > max_n:
            continue
        nodes = sorted(G.nodes())
        autos = [dict(m) for m in GraphMatcher(G, G).isomorphisms_iter()]
        comp = {}
        for k, c in enumerate(nx.connected_components(G)):
            for v in c:
                comp[v] = k
        edges = sorted(tuple(sorted(e)) for e in G.edges())
        seen = set()
        for part in _set_partitions(nodes):
            if any(len({comp[v] for v in block}) != len(block) for block in part):
                continue
            block_of = {v: i for i, block in enumerate(part) for v in block}
            links = [tuple(sorted((block_of[a], block_of[b]))) for a, b in edges]
            if len(set(links)) != len(links):
                continue
            key = min(
                tuple(sorted(tuple(sorted(m[v] for v in block)) for block in part))
                for m in autos
            )
            if key in seen:
                continue
            seen.add(key)
            star = [e for block in part for e in combinations(sorted(block), 2)]
            yield RGraph(SimpleGraph(nodes, edges), SimpleGraph(nodes, star))


def enumerate_pairs(max_n: int = 5) -> Iterator[RGraph]:
    """All (base, star) pairs with base graphs up to isomorphism and every
    labelled star graph; unchecked, for differential tests of (R)."""
    import networkx as nx

    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        nodes = list(range(n))
        base = SimpleGraph(nodes, G.edges())
        pairs = list(combinations(nodes, 2))
        for mask in range(1 << len(pairs)):
            star = SimpleGraph(nodes, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))
            yield RGraph(base, star, check=False)
