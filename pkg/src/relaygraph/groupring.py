"""Integer group-ring arithmetic over a free group, epsilon elements and the
equality R-graph built from a product ``r = sum_t eps(x_t) b_t``.

Basis layout: generators ``x1 .. x{w}`` are ordinary word generators (the
z-words use ``x1`` and ``x2``); every epsilon element gets its own triple of
reserved generators that no psi or b word may mention.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .cycles import has_r_cycle_rsimple, is_r_simple, u_family
from .errors import GraphError, PreconditionError
from .freegroup import (FreeGroup, FreeWord, WordError, ZFamily, make_z_family, parse_word,
                        verify_z_property_ii)
from .graph import RGraph, SimpleGraph, Verdict

__all__ = [
    "RingError",
    "RingElement",
    "ring_add",
    "ring_mul",
    "EpsilonSpec",
    "make_epsilon_spec",
    "build_epsilon",
    "TermLabel",
    "expand_rt",
    "MtClassification",
    "classify_mt",
    "EqualityGraph",
    "build_equality_rgraph",
    "detect_one",
    "verify_r_not_one",
    "check_label_invariants",
    "RingInstance",
    "load_instance",
    "loads_instance",
    "random_ring_instance",
]


class RingError(ValueError):
    pass


class RingElement:
    """Finite sum of reduced words with nonzero integer coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FreeGroup, terms: Mapping[FreeWord, int] | Iterable[tuple[FreeWord, int]] = ()):
        self.group = group
        acc: dict[FreeWord, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            if w.group != group:
                raise RingError(f"basis mismatch: rank {w.group.rank} vs {group.rank}")
            acc[w] = acc.get(w, 0) + int(c)
        self.terms = {w: acc[w] for w in sorted(acc) if acc[w] != 0}

    @classmethod
    def zero(cls, group: FreeGroup) -> "RingElement":
        return cls(group)

    @classmethod
    def one(cls, group: FreeGroup) -> "RingElement":
        return cls(group, {group.identity(): 1})

    @classmethod
    def word(cls, w: FreeWord, coeff: int = 1) -> "RingElement":
        return cls(w.group, {w: coeff})

    @classmethod
    def parse(cls, group: FreeGroup, pairs: Iterable[Sequence]) -> "RingElement":
        """From ``[["x1 x2", 3], ["1", -1], ...]``; repeated words must not occur."""
        terms = {}
        for item in pairs:
            if not (isinstance(item, (list, tuple)) and len(item) == 2
                    and isinstance(item[0], str) and isinstance(item[1], int) and not isinstance(item[1], bool)):
                raise RingError(f"term must be [word, integer], got {item!r}")
            w = parse_word(group, item[0])
            if w in terms:
                raise RingError(f"word {str(w)!r} listed twice")
            if item[1] == 0:
                raise RingError(f"zero coefficient for {item[0]!r}")
            terms[w] = item[1]
        return cls(group, terms)

    def support(self) -> list[FreeWord]:
        return list(self.terms)

    def coefficient(self, w: FreeWord) -> int:
        return self.terms.get(w, 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash((self.group, tuple(self.terms.items())))

    def __add__(self, other):
        return ring_add(self, other)

    def __sub__(self, other):
        return ring_add(self, -other)

    def __neg__(self):
        return RingElement(self.group, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        return ring_mul(self, other)

    def to_json(self) -> list:
        return [[str(w), c] for w, c in self.terms.items()]

    def __repr__(self):
        if not self.terms:
            return "RingElement(0)"
        return "RingElement(" + " + ".join(f"{c}*[{w}]" for w, c in self.terms.items()) + ")"


def _check_basis(a: RingElement, b: RingElement) -> None:
    if a.group != b.group:
        raise RingError(f"basis mismatch: rank {a.group.rank} vs {b.group.rank}")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    _check_basis(a, b)
    return RingElement(a.group, list(a.terms.items()) + list(b.terms.items()))


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    _check_basis(a, b)
    return RingElement(a.group, [(u * v, c * d) for u, c in a.terms.items() for v, d in b.terms.items()])


# ------------------------------------------------------------------ epsilon


@dataclass(frozen=True)
class EpsilonSpec:
    """Data for one epsilon element.

    ``x_triple`` holds the three reserved generator indices (0-based),
    ``psi`` the nonzero element being wrapped and ``z`` the z-word family
    (``z.vs`` are the triple as words, ``z.ws`` the nontrivial psi support).
    """

    x_triple: tuple[int, int, int]
    psi: RingElement
    z: ZFamily

    @property
    def group(self) -> FreeGroup:
        return self.psi.group

    @property
    def f_words(self) -> list[FreeWord]:
        return self.psi.support()

    @property
    def alphas(self) -> list[int]:
        return list(self.psi.terms.values())

    @property
    def m(self) -> int:
        return len(self.psi)

    def x(self, k: int) -> FreeWord:
        """1-based reserved generator ``x^(k)`` as a word."""
        return self.group.gen(self.x_triple[k - 1])

    def xi(self, k: int, l: int, i: int) -> FreeWord:
        z = self.z.z(l)
        return self.x(k) * z * self.f_words[i - 1] * z


def _generators_in(w: FreeWord) -> set[int]:
    return {g for g, _ in w.syllables}


def make_epsilon_spec(psi: RingElement, x_triple: Sequence[int]) -> EpsilonSpec:
    group = psi.group
    triple = tuple(x_triple)
    if not psi:
        raise RingError("psi must be nonzero")
    if len(triple) != 3 or len(set(triple)) != 3:
        raise RingError(f"need three distinct reserved generators, got {triple!r}")
    for g in triple:
        if not 0 <= g < group.rank:
            raise RingError(f"reserved generator x{g + 1} outside rank {group.rank}")
        if g in (0, 1):
            raise RingError("x1 and x2 carry the z-words and cannot be reserved")
    for w in psi.support():
        if _generators_in(w) & set(triple):
            raise RingError(f"psi word {str(w)!r} uses a reserved generator")
    vs = [group.gen(g) for g in triple]
    nontrivial = [w for w in psi.support() if not w.is_identity()]
    z = make_z_family(vs, 3, ws=nontrivial)
    spec = EpsilonSpec(triple, psi, ZFamily(z.vs, tuple(psi.support()), z.n, z.z_words))
    _check_xi_distinct(spec)
    return spec


def _check_xi_distinct(spec: EpsilonSpec) -> None:
    seen = {}
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            for i in range(1, spec.m + 1):
                w = spec.xi(k, l, i)
                if w in seen:
                    raise PreconditionError(f"xi{seen[w]} = xi{(k, l, i)}")
                if w.is_identity():
                    raise PreconditionError(f"xi{(k, l, i)} is trivial")
                seen[w] = (k, l, i)


def build_epsilon(spec: EpsilonSpec) -> RingElement:
    """``sum_{k,l,i} alpha_i x^(k) z_l f_i z_l + 1``; support size ``9m + 1``."""
    _check_xi_distinct(spec)
    g = spec.group
    terms = [(g.identity(), 1)]
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            for i, a in enumerate(spec.alphas, 1):
                terms.append((spec.xi(k, l, i), a))
    out = RingElement(g, terms)
    if len(out) != 9 * spec.m + 1:
        raise PreconditionError(f"epsilon support {len(out)} != {9 * spec.m + 1}")
    return out


# ------------------------------------------------------------------ labels


@dataclass(frozen=True)
class TermLabel:
    """A P-vertex ``(t, k, l, i, j)``, a Q-vertex ``(t, j)`` or ``w0 = (0, 0)``."""

    kind: str
    index: tuple[int, ...]
    eta: FreeWord
    gamma: int

    @property
    def name(self) -> str:
        if self.kind == "w0":
            return "w0"
        return self.kind + "(" + ",".join(map(str, self.index)) + ")"

    @property
    def t(self) -> int:
        return self.index[0]


def _b_support(b: RingElement) -> tuple[list[FreeWord], list[int]]:
    if not b:
        raise RingError("b must be nonzero")
    return b.support(), list(b.terms.values())


def expand_rt(spec: EpsilonSpec, b: RingElement, t: int = 1) -> tuple[RingElement, list[TermLabel]]:
    """``eps * b`` together with one label per term of the uncollected expansion."""
    gs, betas = _b_support(b)
    _check_basis(spec.psi, b)
    labels = []
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            for i, a in enumerate(spec.alphas, 1):
                xi = spec.xi(k, l, i)
                for j, (g, beta) in enumerate(zip(gs, betas), 1):
                    labels.append(TermLabel("P", (t, k, l, i, j), xi * g, a * beta))
    for j, (g, beta) in enumerate(zip(gs, betas), 1):
        labels.append(TermLabel("Q", (t, j), g, beta))
    return ring_mul(build_epsilon(spec), b), labels


def collect(group: FreeGroup, labels: Iterable[TermLabel]) -> RingElement:
    return RingElement(group, [(lab.eta, lab.gamma) for lab in labels])


@dataclass(frozen=True)
class MtClassification:
    t: int
    n_t: int
    m_t: tuple[tuple[int, int, int], ...]
    classes: tuple[tuple[tuple[int, int, int], ...], ...]
    n_set: frozenset
    transversal: tuple[tuple[int, int, int], ...]
    gamma_star: Mapping[tuple[int, int, int], int]
    m_star: tuple[tuple[int, int, int], ...]

    @property
    def n_margin(self) -> int:
        """``|N_t| - n_t``; positive on every valid instance."""
        return len(self.n_set) - self.n_t

    def class_of(self, mu) -> tuple:
        for c in self.classes:
            if mu in c:
                return c
        raise KeyError(mu)


def classify_mt(labels: Sequence[TermLabel], t: int | None = None) -> MtClassification:
    """Group ``mu = (l, i, j)`` by the word ``eta(t, 1, mu)``."""
    ps = [lab for lab in labels if lab.kind == "P" and (t is None or lab.t == t)]
    if not ps:
        raise RingError("no P-labels to classify")
    t = ps[0].t
    if any(lab.t != t for lab in ps):
        raise RingError("labels span several t; pass t explicitly")
    n_t = sum(1 for lab in labels if lab.kind == "Q" and lab.t == t)
    by_eta: dict[FreeWord, list] = {}
    gamma = {}
    mus = []
    for lab in ps:
        _, k, l, i, j = lab.index
        if k != 1:
            continue
        mu = (l, i, j)
        mus.append(mu)
        gamma[mu] = lab.gamma
        by_eta.setdefault(lab.eta, []).append(mu)
    classes = sorted(tuple(sorted(c)) for c in by_eta.values())
    n_set = frozenset(c[0] for c in classes if len(c) == 1)
    transversal = tuple(c[0] for c in classes)
    gstar = {c[0]: sum(gamma[mu] for mu in c) for c in classes}
    m_star = tuple(mu for mu in transversal if gstar[mu] != 0)
    return MtClassification(t, n_t, tuple(sorted(mus)), tuple(classes), n_set, transversal, gstar, m_star)


# ------------------------------------------------------------------ equality graph


@dataclass(frozen=True)
class EqualityGraph:
    graph: RGraph
    labels: tuple[TermLabel, ...]

    @property
    def p_star(self) -> list[TermLabel]:
        return [lab for lab in self.labels if lab.kind == "P"]

    @property
    def q_star(self) -> list[TermLabel]:
        return [lab for lab in self.labels if lab.kind != "P"]

    def collected(self, group: FreeGroup) -> RingElement:
        return collect(group, self.labels)


def reduced_labels(labels: Sequence[TermLabel], classes: Sequence[MtClassification]) -> list[TermLabel]:
    """P* with collected coefficients, all Q-labels, and ``w0``."""
    group = labels[0].eta.group
    by_index = {lab.index: lab for lab in labels if lab.kind == "P"}
    out = []
    for cl in classes:
        for mu in cl.m_star:
            for k in (1, 2, 3):
                lab = by_index[(cl.t, k) + mu]
                out.append(TermLabel("P", lab.index, lab.eta, cl.gamma_star[mu]))
    out.extend(lab for lab in labels if lab.kind == "Q")
    out.append(TermLabel("w0", (0, 0), group.identity(), -1))
    return out


def build_equality_rgraph(labels: Sequence[TermLabel]) -> EqualityGraph:
    """Vertices are the labels; base edges join equal eta words; star edges
    join ``(t, k, mu)`` and ``(t, k', mu)``."""
    seen = set()
    for lab in labels:
        key = (lab.kind, lab.index)
        if key in seen:
            raise RingError(f"duplicate label {lab.name}")
        seen.add(key)
    labels = tuple(labels)
    by_eta: dict[FreeWord, list[int]] = {}
    triples: dict[tuple, list[int]] = {}
    for v, lab in enumerate(labels):
        by_eta.setdefault(lab.eta, []).append(v)
        if lab.kind == "P":
            t, _k, *mu = lab.index
            triples.setdefault((t, *mu), []).append(v)
    base = [(a, b) for group in by_eta.values() for x, a in enumerate(group) for b in group[x + 1:]]
    star = [(a, b) for group in triples.values() for x, a in enumerate(group) for b in group[x + 1:]]
    verts = range(len(labels))
    try:
        g = RGraph(SimpleGraph(verts, base), SimpleGraph(verts, star), {v: lab.name for v, lab in enumerate(labels)})
    except GraphError as exc:
        raise PreconditionError(f"equality graph violates condition (R): {exc}") from None
    return EqualityGraph(g, labels)


# ------------------------------------------------------------------ verification


def detect_one(r: RingElement) -> Verdict:
    """Holds when ``r != 1``; the witness is the non-identity support size."""
    one = RingElement.one(r.group)
    if r == one:
        return Verdict(False, 0, "r=1")
    return Verdict(True, sum(1 for w in r.terms if not w.is_identity()))


def check_label_invariants(spec: EpsilonSpec, labels: Sequence[TermLabel], cl: MtClassification,
                  p_max: int = 0) -> Verdict:
    """Instance checks: xi distinctness; equal eta with equal j, or with
    equal k and equal ``(l, i)``, forces equal vertices; the collision
    pattern among the ``mu`` is the same for every k; and for ``mu, mu'`` in
    ``M_t*`` equal eta gives ``k = k'`` iff ``mu = mu'``.  ``p_max > 0`` also runs the bounded product search on the
    xi words."""
    try:
        _check_xi_distinct(spec)
    except PreconditionError as exc:
        return Verdict(False, str(exc), "xi-distinct")
    ps = [lab for lab in labels if lab.kind == "P" and lab.t == cl.t]
    by_eta: dict[FreeWord, list[TermLabel]] = {}
    for lab in ps:
        by_eta.setdefault(lab.eta, []).append(lab)
    for group in by_eta.values():
        for x, a in enumerate(group):
            for b in group[x + 1:]:
                if a.index[4] == b.index[4]:
                    return Verdict(False, (a.name, b.name), "equal-j")
                if a.index[1] == b.index[1] and a.index[2:4] == b.index[2:4]:
                    return Verdict(False, (a.name, b.name), "equal-li")
    # a collision between mu and mu' at one k must repeat at every k
    pattern = {}
    for lab in ps:
        t, k, *mu = lab.index
        pattern.setdefault(k, {})[tuple(mu)] = lab.eta
    by_k = {k: {frozenset(m for m, e in pat.items() if e == w) for w in pat.values()}
            for k, pat in pattern.items()}
    if len({frozenset(v) for v in by_k.values()}) > 1:
        return Verdict(False, sorted(by_k), "same-at-every-k")
    star = set(cl.m_star)
    for group in by_eta.values():
        sel = [lab for lab in group if tuple(lab.index[2:]) in star]
        for x, a in enumerate(sel):
            for b in sel[x + 1:]:
                if (a.index[1] == b.index[1]) != (a.index[2:] == b.index[2:]):
                    return Verdict(False, (a.name, b.name), "k-iff-mu")
    if p_max > 0:
        v = verify_z_property_ii(spec.z, p_max)
        if not v:
            return Verdict(False, v.witness, "product")
    return Verdict(True)


def verify_r_not_one(specs: Sequence[EpsilonSpec], bs: Sequence[RingElement]) -> tuple[Verdict, dict]:
    """Compute ``r = sum_t eps_t b_t`` exactly and check ``r != 1`` together
    with the structural counts of the equality graph."""
    if len(specs) != len(bs) or not specs:
        raise RingError("need one b per epsilon spec and at least one of each")
    group = specs[0].group
    r = RingElement.zero(group)
    all_labels: list[TermLabel] = []
    classes = []
    per_t = []
    problems = []
    for t, (spec, b) in enumerate(zip(specs, bs), 1):
        if spec.group != group:
            raise RingError("all specs must share one basis")
        rt, labels = expand_rt(spec, b, t)
        if collect(group, labels) != rt:
            problems.append(f"t={t}: label sum differs from product")
        r = r + rt
        cl = classify_mt(labels, t)
        classes.append(cl)
        all_labels.extend(labels)
        rem = check_label_invariants(spec, labels, cl)
        if not rem:
            problems.append(f"t={t}: label invariant {rem.clause} failed: {rem.witness}")
        if cl.n_margin <= 0:
            problems.append(f"t={t}: |N_t| = {len(cl.n_set)} <= n_t = {cl.n_t}")
        per_t.append({
            "t": t,
            "m_t": spec.m,
            "n_t": cl.n_t,
            "epsilon_support": len(build_epsilon(spec)),
            "r_t_support": len(rt),
            "classes": len(cl.classes),
            "N_t": len(cl.n_set),
            "M_t_star": len(cl.m_star),
        })
    eq = build_equality_rgraph(reduced_labels(all_labels, classes))
    if eq.collected(group) != r - RingElement.one(group):
        problems.append("P* and Q* labels do not sum to r - 1")
    fam = u_family(eq.graph)
    big, single = len(fam.large), len(fam.singletons)
    if big < single:
        problems.append(f"|L| = {big} < |N| = {single}")
    if not eq.graph.is_clique_graph():
        problems.append("equality graph is not a clique graph")
    simple = is_r_simple(eq.graph)
    verdict = detect_one(r)
    report = {
        "r_not_one": verdict.holds,
        "r_support": len(r),
        "r_nonidentity_support": sum(1 for w in r.terms if not w.is_identity()),
        "L": big,
        "N": single,
        "vertices": len(eq.graph),
        "r_simple": simple.holds,
        "per_t": per_t,
        "problems": problems,
    }
    if simple.holds:
        report["has_r_cycle"] = has_r_cycle_rsimple(eq.graph)
    ok = verdict.holds and not problems
    return Verdict(ok, report, None if ok else ("r=1" if not verdict.holds else "structure")), report


# ------------------------------------------------------------------ instances


@dataclass(frozen=True)
class RingInstance:
    group: FreeGroup
    specs: tuple[EpsilonSpec, ...]
    bs: tuple[RingElement, ...]
    word_generators: int = 2

    def to_json(self) -> dict:
        return {
            "basis_size": self.group.rank,
            "word_generators": self.word_generators,
            "terms": [
                {"reserved": [g + 1 for g in s.x_triple], "psi": s.psi.to_json(), "b": b.to_json()}
                for s, b in zip(self.specs, self.bs)
            ],
        }


def build_instance(psis_bs: Sequence[tuple[Sequence, Sequence]], word_generators: int = 2,
                   reserved: Sequence[Sequence[int]] | None = None, basis_size: int | None = None) -> RingInstance:
    """Assemble an instance from literal term lists.

    ``reserved`` triples are 0-based; by default triple ``t`` is the next
    three generators after the word generators.
    """
    if word_generators < 2:
        raise RingError("need at least two word generators")
    m = len(psis_bs)
    if m == 0:
        raise RingError("instance needs at least one term")
    if reserved is None:
        reserved = [tuple(range(word_generators + 3 * t, word_generators + 3 * t + 3)) for t in range(m)]
    if len(reserved) != m:
        raise RingError("one reserved triple per term")
    flat = [g for tr in reserved for g in tr]
    if len(set(flat)) != len(flat):
        raise RingError("reserved triples must be pairwise disjoint")
    rank = basis_size if basis_size is not None else max([word_generators - 1] + flat) + 1
    group = FreeGroup(rank)
    specs, bs = [], []
    for t, ((psi_terms, b_terms), triple) in enumerate(zip(psis_bs, reserved), 1):
        psi = RingElement.parse(group, psi_terms)
        b = RingElement.parse(group, b_terms)
        if not b:
            raise RingError(f"term {t}: b must be nonzero")
        for w in b.support():
            if _generators_in(w) & set(flat):
                raise RingError(f"term {t}: b word {str(w)!r} uses a reserved generator")
        for w in psi.support():
            if _generators_in(w) & set(flat):
                raise RingError(f"term {t}: psi word {str(w)!r} uses a reserved generator")
        specs.append(make_epsilon_spec(psi, triple))
        bs.append(b)
    return RingInstance(group, tuple(specs), tuple(bs), word_generators)


def loads_instance(text: str) -> RingInstance:
    """Instance JSON::

        {"word_generators": 2,            # optional, default 2
         "basis_size": 5,                 # optional
         "terms": [{"psi": [["x1 x2", 3]], "b": [["1", 1]],
                    "reserved": [3, 4, 5]}]}   # reserved optional, 1-based
    """
    doc = json.loads(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list):
        raise RingError("instance must be an object with a 'terms' list")
    pairs, reserved = [], []
    for k, item in enumerate(doc["terms"], 1):
        if not isinstance(item, dict) or "psi" not in item or "b" not in item:
            raise RingError(f"term {k} needs 'psi' and 'b'")
        pairs.append((item["psi"], item["b"]))
        reserved.append([g - 1 for g in item["reserved"]] if "reserved" in item else None)
    if any(r is not None for r in reserved):
        if any(r is None for r in reserved):
            raise RingError("give 'reserved' for every term or for none")
    else:
        reserved = None
    try:
        return build_instance(pairs, doc.get("word_generators", 2), reserved, doc.get("basis_size"))
    except WordError as exc:
        raise RingError(str(exc)) from None


def load_instance(path) -> RingInstance:
    return loads_instance(Path(path).read_text())


def _random_word(rng: random.Random, gens: int, max_len: int) -> FreeWord:
    group = FreeGroup(gens)
    while True:
        letters = [(rng.randrange(gens), rng.choice((1, -1))) for _ in range(rng.randint(1, max_len))]
        w = group.word(letters)
        if w:
            return w


def _coeff(rng: random.Random) -> int:
    return rng.choice([c for c in range(-3, 4) if c])


def random_ring_instance(rng: random.Random, m_max: int = 3, support_max: int = 3,
                         word_len: int = 3, plant: float = 0.5) -> RingInstance:
    """Random instance on two word generators.

    With probability ``plant`` per term, the second b word is chosen so that
    two xi-terms collide after multiplication, and its coefficient so that
    the collided terms cancel.
    """
    m = rng.randint(1, m_max)
    group = FreeGroup(2 + 3 * m)

    def lift(w: FreeWord) -> FreeWord:
        return FreeWord(group, w.syllables)

    specs, bs = [], []
    for t in range(m):
        fs = []
        while len(fs) < rng.randint(1, support_max):
            w = lift(_random_word(rng, 2, word_len)) if rng.random() > 0.1 else group.identity()
            if w not in fs:
                fs.append(w)
        psi = RingElement(group, [(w, _coeff(rng)) for w in fs])
        spec = make_epsilon_spec(psi, (2 + 3 * t, 3 + 3 * t, 4 + 3 * t))
        n_t = rng.randint(1, support_max)
        gs: list[FreeWord] = []
        betas: list[int] = []
        if n_t >= 2 and rng.random() < plant:
            (l1, i1), (l2, i2) = rng.sample([(l, i) for l in (1, 2, 3) for i in range(1, spec.m + 1)], 2)
            g1 = lift(_random_word(rng, 2, word_len))
            g2 = ~spec.xi(1, l2, i2) * spec.xi(1, l1, i1) * g1
            if g2 != g1:
                gs = [g1, g2]
                a1, a2 = spec.alphas[i1 - 1], spec.alphas[i2 - 1]
                betas = [a2, -a1] if rng.random() < 0.5 else [_coeff(rng), _coeff(rng)]
        while len(gs) < n_t:
            w = lift(_random_word(rng, 2, word_len)) if rng.random() > 0.2 else group.identity()
            if w not in gs:
                gs.append(w)
                betas.append(_coeff(rng))
        specs.append(spec)
        bs.append(RingElement(group, list(zip(gs, betas))))
    return RingInstance(group, tuple(specs), tuple(bs))
