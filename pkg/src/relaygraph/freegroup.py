"""Reduced words in a free group of finite rank, and z-word families.

Words are stored run-length encoded as ``((generator, power), ...)`` with
nonzero powers and no two neighbouring runs on the same generator, which is
exactly the reduced normal form.  Generators are numbered from 0 internally
and written ``x1, x2, ...`` in literals such as ``"x1^5 x2 x1^-3"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .graph import Verdict

__all__ = [
    "WordError",
    "FreeGroup",
    "FreeWord",
    "reduce",
    "multiply",
    "invert",
    "parse_word",
    "ZFamily",
    "make_z_family",
    "verify_z_property_i",
    "verify_z_property_ii",
    "words_up_to",
]


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class FreeGroup:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise WordError("rank must be positive")

    def identity(self) -> "FreeWord":
        return FreeWord(self, ())

    def gen(self, index: int, power: int = 1) -> "FreeWord":
        if not 0 <= index < self.rank:
            raise WordError(f"generator x{index + 1} outside rank {self.rank}")
        return FreeWord(self, ((index, power),) if power else ())

    def word(self, letters: Iterable[tuple[int, int]]) -> "FreeWord":
        return reduce(self, letters)

    def parse(self, text: str) -> "FreeWord":
        return parse_word(self, text)


class FreeWord:
    __slots__ = ("group", "syllables", "_hash")

    def __init__(self, group: FreeGroup, syllables: tuple[tuple[int, int], ...]):
        self.group = group
        self.syllables = syllables
        self._hash = hash((group.rank, syllables))

    def __eq__(self, other):
        if not isinstance(other, FreeWord):
            return NotImplemented
        return self.group == other.group and self.syllables == other.syllables

    def __hash__(self):
        return self._hash

    def __len__(self):
        return sum(abs(p) for _, p in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __lt__(self, other: "FreeWord"):
        return (len(self), self.syllables) < (len(other), other.syllables)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return invert(self)

    def __pow__(self, k: int) -> "FreeWord":
        out = self.group.identity()
        base = self if k >= 0 else invert(self)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> list[tuple[int, int]]:
        """Expanded form: one ``(generator, +-1)`` per letter."""
        out = []
        for g, p in self.syllables:
            s = 1 if p > 0 else -1
            out.extend([(g, s)] * abs(p))
        return out

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(f"x{g + 1}" if p == 1 else f"x{g + 1}^{p}" for g, p in self.syllables)

    def __repr__(self):
        return f"FreeWord({str(self)!r})"


def _push(stack: list[list[int]], g: int, p: int) -> None:
    if stack and stack[-1][0] == g:
        stack[-1][1] += p
        if stack[-1][1] == 0:
            stack.pop()
    elif p:
        stack.append([g, p])


def reduce(group: FreeGroup, letters: Iterable[tuple[int, int]]) -> FreeWord:
    """Free reduction of a sequence of ``(generator, power)`` pairs."""
    stack: list[list[int]] = []
    for g, p in letters:
        if not 0 <= g < group.rank:
            raise WordError(f"generator x{g + 1} outside rank {group.rank}")
        _push(stack, g, p)
    return FreeWord(group, tuple((g, p) for g, p in stack))


def _same_group(a: FreeWord, b: FreeWord) -> None:
    if a.group != b.group:
        raise WordError(f"basis mismatch: rank {a.group.rank} vs {b.group.rank}")


def multiply(a: FreeWord, b: FreeWord) -> FreeWord:
    _same_group(a, b)
    left = list(a.syllables)
    right = list(b.syllables)
    while left and right and left[-1][0] == right[0][0]:
        g = left[-1][0]
        p = left.pop()[1] + right.pop(0)[1]
        if p:
            left.append((g, p))
            break
    return FreeWord(a.group, tuple(left + right))


def invert(a: FreeWord) -> FreeWord:
    return FreeWord(a.group, tuple((g, -p) for g, p in reversed(a.syllables)))


_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_word(group: FreeGroup, text: str) -> FreeWord:
    """Parse ``"x1^5 x2 x1^-3"``.  ``"1"`` or an empty string is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return group.identity()
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad word token {tok!r} in {text!r}")
        g = int(m.group(1)) - 1
        p = int(m.group(2)) if m.group(2) is not None else 1
        if p == 0:
            raise WordError(f"zero power in {tok!r}")
        if g < 0:
            raise WordError(f"generator index must start at 1 in {tok!r}")
        letters.append((g, p))
    return reduce(group, letters)


# ------------------------------------------------------------------ z-words


@dataclass(frozen=True)
class ZFamily:
    """``z_l = x1^(n+l) x2 x1^(n+l)`` for ``l = 1..m`` with ``n`` twice the
    longest word of ``vs + ws``."""

    vs: tuple[FreeWord, ...]
    ws: tuple[FreeWord, ...]
    n: int
    z_words: tuple[FreeWord, ...]

    @property
    def s_set(self) -> tuple[FreeWord, ...]:
        return tuple(dict.fromkeys(self.vs + self.ws))

    @property
    def m(self) -> int:
        return len(self.z_words)

    def z(self, l: int) -> FreeWord:
        """1-based accessor."""
        return self.z_words[l - 1]


def make_z_family(s_set: Sequence[FreeWord], m: int, *, ws: Sequence[FreeWord] | None = None,
                  x1: int = 0, x2: int = 1) -> ZFamily:
    """Build ``m`` z-words for the word set ``s_set``.

    ``s_set`` supplies the ``v`` words; ``ws`` supplies the ``w`` words and
    defaults to ``s_set`` itself.
    """
    vs = tuple(s_set)
    ws = vs if ws is None else tuple(ws)
    words = vs + ws
    if not words:
        raise WordError("the word set must be non-empty")
    group = words[0].group
    if group.rank < 2:
        raise WordError("z-words need a basis of rank at least 2")
    if x1 == x2:
        raise WordError("z-words need two distinct generators")
    for w in words:
        _same_group(words[0], w)
        if w.is_identity():
            raise WordError("the word set must not contain the identity")
    if len(set(vs)) != len(vs) or len(set(ws)) != len(ws):
        raise WordError("words within each list must be pairwise distinct")
    if m < 1:
        raise WordError("need at least one z-word")
    n = 2 * max(len(w) for w in words)
    zs = tuple(FreeWord(group, ((x1, n + l), (x2, 1), (x1, n + l))) for l in range(1, m + 1))
    return ZFamily(vs, ws, n, zs)


def verify_z_property_i(f: ZFamily) -> Verdict:
    """``v_k z_l w_i z_l`` are pairwise distinct over all ``(k, l, i)``.

    Witness on failure: the two colliding index triples (1-based).
    """
    seen: dict[FreeWord, tuple[int, int, int]] = {}
    for k, v in enumerate(f.vs, 1):
        for l, z in enumerate(f.z_words, 1):
            vz = v * z
            for i, w in enumerate(f.ws, 1):
                word = vz * w * z
                if word in seen:
                    return Verdict(False, (seen[word], (k, l, i)), "i")
                seen[word] = (k, l, i)
    return Verdict(True)


DEFAULT_Z_BUDGET = 5_000_000


def verify_z_property_ii(f: ZFamily, p_max: int = 3, budget: int = DEFAULT_Z_BUDGET) -> Verdict:
    """Search for a counterexample to property (ii) with at most ``p_max``
    factors.

    A factor is ``(z_l w_i z_l)^-1 (z_n w_j z_n)`` with ``(l, i) != (n, j)``;
    a counterexample is a product of ``p`` factors equal to 1 in which no
    factor's right index ``n_q`` equals the next factor's left index
    ``l_{q+1}``.  Each ``p`` is searched exhaustively by meeting in the
    middle.  Witness: the factor list ``[(l, i, n, j), ...]`` (1-based).
    Raises :class:`BudgetExceeded` when more than ``budget`` partial
    products would be formed.
    """
    group = f.z_words[0].group
    cores = {(l, i): z * w * z for l, z in enumerate(f.z_words, 1) for i, w in enumerate(f.ws, 1)}
    keys = sorted(cores)
    factors = [(a, b, ~cores[a] * cores[b]) for a in keys for b in keys if a != b]
    count = 0

    def chains(length: int):
        """All admissible chains of ``length`` factors with their products."""
        nonlocal count
        level = [((), group.identity())]
        for _ in range(length):
            nxt = []
            for chain, word in level:
                for a, b, fac in factors:
                    if chain and chain[-1][1][0] == a[0]:
                        continue
                    count += 1
                    if count > budget:
                        raise BudgetExceeded(budget, "z-word property (ii) search")
                    nxt.append((chain + ((a, b),), word * fac))
            level = nxt
        return level

    for p in range(1, p_max + 1):
        left_len = p // 2
        right_len = p - left_len
        table: dict[FreeWord, list] = {}
        for chain, word in chains(left_len):
            table.setdefault(word, []).append(chain)
        for chain, word in chains(right_len):
            need = ~word
            for left in table.get(need, ()):
                if left and left[-1][1][0] == chain[0][0][0]:
                    continue
                full = left + chain
                return Verdict(False, [(a[0], a[1], b[0], b[1]) for a, b in full], "ii")
    return Verdict(True)


def words_up_to(group: FreeGroup, max_len: int) -> list[FreeWord]:
    """Every reduced nontrivial word of length at most ``max_len``."""
    out = []
    layer = [group.identity()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for g, s in product(range(group.rank), (1, -1)):
                ext = w * FreeWord(group, ((g, s),))
                if len(ext) == len(w) + 1:
                    nxt.append(ext)
        out.extend(nxt)
        layer = nxt
    return out
