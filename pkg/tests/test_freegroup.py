import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaygraph.errors import BudgetExceeded
from relaygraph.freegroup import (
    FreeGroup,
    FreeWord,
    WordError,
    ZFamily,
    invert,
    make_z_family,
    multiply,
    parse_word,
    reduce,
    verify_z_property_i,
    verify_z_property_ii,
    words_up_to,
)

from .oracles import cancel_fixpoint, expand

F2 = FreeGroup(2)
letter_lists = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=14)


def test_basic_reductions():
    assert reduce(F2, [(0, 1), (0, -1)]).is_identity()
    assert reduce(F2, [(0, 1), (1, 1), (1, -1), (0, 1)]) == F2.gen(0, 2)


def test_unknown_generator():
    with pytest.raises(WordError):
        reduce(F2, [(2, 1)])
    with pytest.raises(WordError):
        F2.gen(5)


@settings(max_examples=300, deadline=None)
@given(letter_lists)
def test_reduce_matches_cancellation_oracle(letters):
    w = reduce(F2, letters)
    assert expand(w.syllables) == cancel_fixpoint(letters)
    assert reduce(F2, w.syllables) == w
    assert (w * ~w).is_identity()


@settings(max_examples=200, deadline=None)
@given(letter_lists, letter_lists, letter_lists)
def test_group_laws(a, b, c):
    a, b, c = (reduce(F2, x) for x in (a, b, c))
    assert (a * b) * c == a * (b * c)
    assert a * F2.identity() == a == F2.identity() * a
    assert len(a * b) <= len(a) + len(b)
    assert len(invert(a)) == len(a)
    assert invert(a * b) == invert(b) * invert(a)


def test_inverse_of_product():
    x1, x2 = F2.gen(0), F2.gen(1)
    assert invert(x1 * x2) == F2.word([(1, -1), (0, -1)])


def test_basis_mismatch():
    with pytest.raises(WordError):
        multiply(F2.gen(0), FreeGroup(3).gen(0))


def test_parse_and_format():
    w = parse_word(F2, "x1^5 x2 x1^-3")
    assert w.syllables == ((0, 5), (1, 1), (0, -3))
    assert str(w) == "x1^5 x2 x1^-3"
    assert parse_word(F2, "1").is_identity() and parse_word(F2, "").is_identity()
    assert parse_word(F2, "x1 x1^-1 x2") == F2.gen(1)
    assert len(w) == 9


@pytest.mark.parametrize("text", ["x1^0", "y1", "x0", "x1^", "x1^a", "x3"])
def test_parse_rejects(text):
    with pytest.raises(WordError):
        parse_word(F2, text)


def test_z_family_formula():
    # n_S = 2 gives n = 4 and z_1 = x1^5 x2 x1^5
    fam = make_z_family([parse_word(F2, "x1 x2")], 1)
    assert fam.n == 4
    assert str(fam.z(1)) == "x1^5 x2 x1^5"
    fam = make_z_family([F2.gen(0), F2.gen(1)], 2)
    assert [str(z) for z in fam.z_words] == ["x1^3 x2 x1^3", "x1^4 x2 x1^4"]


def test_z_words_are_reduced_as_written():
    fam = make_z_family(words_up_to(F2, 2)[:4], 3)
    for l, z in enumerate(fam.z_words, 1):
        assert reduce(F2, [(0, fam.n + l), (1, 1), (0, fam.n + l)]) == z
        assert len(z) == 2 * (fam.n + l) + 1


@pytest.mark.parametrize("bad, m", [([F2.identity()], 1), ([F2.gen(0)], 0),
                                    ([F2.gen(0), F2.gen(0)], 1), ([], 1)])
def test_z_family_preconditions(bad, m):
    with pytest.raises(WordError):
        make_z_family(bad, m)


def test_z_family_needs_rank_two():
    with pytest.raises(WordError):
        make_z_family([FreeGroup(1).gen(0)], 1)


def test_property_i_holds_and_detects_corruption():
    fam = make_z_family([F2.gen(0), F2.gen(1)], 2)
    assert verify_z_property_i(fam)
    broken = ZFamily(fam.vs, fam.ws, fam.n, (fam.z_words[0], fam.z_words[0]))
    v = verify_z_property_i(broken)
    assert not v and v.clause == "i"
    (k, l, i), (h, n, j) = v.witness
    assert (k, i) == (h, j) and l != n


def test_property_ii_small_family():
    fam = make_z_family([parse_word(F2, "x1 x2")], 2)
    assert verify_z_property_ii(fam, p_max=2)


def test_property_ii_detects_planted_product():
    # z_1 = z_2 makes factor ((1,1),(2,1)) trivial
    fam = make_z_family([F2.gen(0)], 2)
    broken = ZFamily(fam.vs, fam.ws, fam.n, (fam.z_words[0], fam.z_words[0]))
    v = verify_z_property_ii(broken, p_max=1)
    assert not v and v.witness == [(1, 1, 2, 1)]


def test_property_ii_budget():
    fam = make_z_family([F2.gen(0), F2.gen(1)], 3)
    with pytest.raises(BudgetExceeded):
        verify_z_property_ii(fam, p_max=3, budget=10)


def test_property_ii_agrees_with_plain_enumeration():
    # compare the split search against direct enumeration for p <= 2
    fam = make_z_family([F2.gen(0), parse_word(F2, "x2^-1 x1")], 2)
    cores = {(l, i): z * w * z for l, z in enumerate(fam.z_words, 1) for i, w in enumerate(fam.ws, 1)}
    keys = list(cores)
    bad = []
    for p in (1, 2):
        for seq in product(product(keys, keys), repeat=p):
            if any(a == b for a, b in seq):
                continue
            if any(seq[q][1][0] == seq[q + 1][0][0] for q in range(p - 1)):
                continue
            w = F2.identity()
            for a, b in seq:
                w = w * ~cores[a] * cores[b]
            if w.is_identity():
                bad.append(seq)
    assert not bad
    assert verify_z_property_ii(fam, p_max=2)


@pytest.mark.parametrize("seed", range(25))
def test_random_families(seed):
    rng = random.Random(seed)
    pool = words_up_to(F2, 3)
    s_set = rng.sample(pool, rng.randint(1, 4))
    fam = make_z_family(s_set, 3)
    assert verify_z_property_i(fam)
    assert verify_z_property_ii(fam, p_max=2)


def test_separate_v_and_w_lists():
    fam = make_z_family([F2.gen(0)], 2, ws=[F2.gen(1), parse_word(F2, "x2^2")])
    assert fam.n == 4
    assert len(fam.s_set) == 3
    assert verify_z_property_i(fam)


def test_words_up_to_counts():
    # reduced words of length k over two generators: 4 * 3^(k-1)
    assert len(words_up_to(F2, 3)) == 4 + 12 + 36
    assert all(isinstance(w, FreeWord) for w in words_up_to(F2, 1))
