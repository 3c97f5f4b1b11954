import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaygraph.cycles import u_family
from relaygraph.errors import PreconditionError
from relaygraph.freegroup import FreeGroup, parse_word
from relaygraph.groupring import (
    RingElement,
    RingError,
    TermLabel,
    build_epsilon,
    build_equality_rgraph,
    build_instance,
    check_label_invariants,
    classify_mt,
    collect,
    detect_one,
    expand_rt,
    loads_instance,
    make_epsilon_spec,
    random_ring_instance,
    reduced_labels,
    ring_add,
    ring_mul,
    verify_r_not_one,
)

from .conftest import fixture_path
from .oracles import convolve, expand

G5 = FreeGroup(5)


def el(*pairs, group=G5):
    return RingElement.parse(group, [list(p) for p in pairs])


def spec_of(*psi_pairs):
    return make_epsilon_spec(el(*psi_pairs), (2, 3, 4))


def test_ring_basics():
    f = parse_word(G5, "x1 x2^2")
    assert RingElement.word(f) * RingElement.word(~f) == RingElement.one(G5)
    a = el(("x1", 2), ("x2", -1))
    assert a * RingElement.zero(G5) == RingElement.zero(G5)
    assert a - a == RingElement.zero(G5)
    assert ring_add(a, a).coefficient(parse_word(G5, "x1")) == 4


def test_zero_coefficients_are_dropped():
    x = parse_word(G5, "x1")
    assert len(RingElement(G5, [(x, 2), (x, -2)])) == 0


def test_basis_mismatch():
    with pytest.raises(RingError):
        ring_mul(el(("x1", 1)), RingElement.one(FreeGroup(2)))


@pytest.mark.parametrize("bad", [[["x1", 0]], [["x1", 1], ["x1", 2]], [["x1"]], [["x1", 1.5]]])
def test_parse_rejects(bad):
    with pytest.raises(RingError):
        RingElement.parse(G5, bad)


words = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=5)
elements = st.lists(st.tuples(words, st.integers(-4, 4).filter(bool)), max_size=5)


@settings(max_examples=200, deadline=None)
@given(elements, elements)
def test_product_matches_convolution_oracle(a_terms, b_terms):
    g = FreeGroup(2)
    a = RingElement(g, [(g.word(w), c) for w, c in a_terms])
    b = RingElement(g, [(g.word(w), c) for w, c in b_terms])
    prod = a * b
    want = convolve({tuple(expand(w.syllables)): c for w, c in a.terms.items()},
                    {tuple(expand(w.syllables)): c for w, c in b.terms.items()})
    assert {tuple(expand(w.syllables)): c for w, c in prod.terms.items()} == want
    assert set(prod.terms) <= {u * v for u in a.terms for v in b.terms}


def test_epsilon_support_sizes():
    assert len(build_epsilon(spec_of(("x1", 1)))) == 10
    eps = build_epsilon(spec_of(("x1", 1), ("x2", 2), ("x1 x2^-1", -3)))
    assert len(eps) == 28
    assert eps.coefficient(G5.identity()) == 1


def test_epsilon_allows_identity_in_psi():
    eps = build_epsilon(spec_of(("1", 4), ("x2", 1)))
    assert len(eps) == 19


def test_epsilon_spec_validation():
    with pytest.raises(RingError):
        make_epsilon_spec(RingElement.zero(G5), (2, 3, 4))
    with pytest.raises(RingError):
        make_epsilon_spec(el(("x1", 1)), (2, 2, 4))
    with pytest.raises(RingError):
        make_epsilon_spec(el(("x1", 1)), (0, 3, 4))
    with pytest.raises(RingError):
        make_epsilon_spec(el(("x3 x1", 1)), (2, 3, 4))


def test_expand_with_neutral_b():
    spec = spec_of(("x1", 1), ("x2", -2))
    prod, labels = expand_rt(spec, RingElement.one(G5))
    assert prod == build_epsilon(spec)
    assert sum(lab.kind == "P" for lab in labels) == 9 * 2
    assert sum(lab.kind == "Q" for lab in labels) == 1


@pytest.mark.parametrize("seed", range(30))
def test_label_sum_equals_product(seed):
    inst = random_ring_instance(random.Random(seed), m_max=1)
    spec, b = inst.specs[0], inst.bs[0]
    prod, labels = expand_rt(spec, b)
    assert collect(inst.group, labels) == prod
    assert prod == build_epsilon(spec) * b


def test_expand_rejects_zero_b():
    with pytest.raises(RingError):
        expand_rt(spec_of(("x1", 1)), RingElement.zero(G5))


def test_classify_single_g():
    spec = spec_of(("x1", 1), ("x2", 1))
    _, labels = expand_rt(spec, el(("x2 x1", 3)))
    cl = classify_mt(labels)
    assert cl.n_t == 1
    assert cl.n_set == frozenset(cl.m_t)
    assert len(cl.n_set) == 3 * spec.m
    assert cl.n_margin == 3 * spec.m - 1


def test_classify_detects_planted_collision_and_cancellation():
    spec = spec_of(("x1", 2), ("x2", 5))
    g1 = parse_word(G5, "x2")
    # g2 chosen so xi(1,1,1) g1 = xi(1,2,2) g2, coefficients cancel
    g2 = ~spec.xi(1, 2, 2) * spec.xi(1, 1, 1) * g1
    b = RingElement(G5, [(g1, 5), (g2, -2)])
    _, labels = expand_rt(spec, b)
    cl = classify_mt(labels)
    j1 = b.support().index(g1) + 1
    j2 = b.support().index(g2) + 1
    merged = cl.class_of((1, 1, j1))
    assert (2, 2, j2) in merged and len(merged) == 2
    rep = merged[0]
    assert cl.gamma_star[rep] == 2 * 5 + 5 * -2 == 0
    assert rep not in cl.m_star
    assert len(cl.n_set) > cl.n_t
    assert check_label_invariants(spec, labels, cl, p_max=2)


def test_corrupted_eta_is_detected():
    spec = spec_of(("x1", 1))
    _, labels = expand_rt(spec, el(("1", 1), ("x2", 1)))
    ps = [lab for lab in labels if lab.kind == "P" and lab.index[1] == 1]
    fake = [TermLabel(l.kind, l.index, ps[0].eta if l is ps[1] else l.eta, l.gamma) for l in labels]
    cl = classify_mt(fake)
    assert len(cl.classes) == len(cl.m_t) - 1
    v = check_label_invariants(spec, fake, cl)
    assert not v and v.clause == "equal-li"


def test_equality_graph_single_t_neutral_b():
    spec = spec_of(("x1", 1), ("x2", 3))
    _, labels = expand_rt(spec, RingElement.one(G5))
    cl = classify_mt(labels)
    eq = build_equality_rgraph(reduced_labels(labels, [cl]))
    fam = u_family(eq.graph)
    assert len(fam.large) == 3 * spec.m
    assert len(fam.singletons) == 2
    for v in eq.graph.vertices:
        lab = eq.labels[v]
        assert len(eq.graph.U(v)) == (3 if lab.kind == "P" else 1)
    assert eq.graph.is_clique_graph()


def test_equality_graph_rejects_duplicates():
    lab = TermLabel("Q", (1, 1), G5.identity(), 1)
    with pytest.raises(RingError):
        build_equality_rgraph([lab, lab])


def test_equality_graph_reports_condition_r_failure():
    # (1,1,mu) and (1,2,mu) sharing an eta word break (R)
    w = parse_word(G5, "x1")
    labels = [TermLabel("P", (1, 1, 1, 1, 1), w, 1), TermLabel("P", (1, 2, 1, 1, 1), w, 1)]
    with pytest.raises(PreconditionError):
        build_equality_rgraph(labels)


def test_detector_negative_control():
    f = parse_word(G5, "x1 x2")
    r = RingElement.word(f) * RingElement.word(~f)
    v = detect_one(r)
    assert not v and v.clause == "r=1"
    assert detect_one(RingElement.word(f))


def test_verify_simple_instance():
    spec = spec_of(("x1", 1))
    verdict, report = verify_r_not_one([spec], [RingElement.one(G5)])
    assert verdict
    assert report["r_support"] == 10
    assert report["problems"] == []
    assert report["L"] >= report["N"]


def test_verify_requires_nonzero_b():
    with pytest.raises(RingError):
        verify_r_not_one([spec_of(("x1", 1))], [RingElement.zero(G5)])


@pytest.mark.parametrize("seed", range(25))
def test_random_instances_end_to_end(seed):
    inst = random_ring_instance(random.Random(seed))
    verdict, report = verify_r_not_one(inst.specs, inst.bs)
    assert verdict, report
    for row in report["per_t"]:
        assert row["N_t"] > row["n_t"]
        assert row["M_t_star"] >= row["N_t"]


def test_instance_json_roundtrip():
    inst = loads_instance(fixture_path("epsilon-basic.json").read_text())
    assert inst.group.rank == 2 + 3 * 2
    again = loads_instance(json.dumps(inst.to_json()))
    assert again.bs == inst.bs
    assert [s.psi for s in again.specs] == [s.psi for s in inst.specs]


@pytest.mark.parametrize("doc, msg", [
    ({"terms": []}, "at least one"),
    ({"terms": [{"psi": [["x1", 1]]}]}, "needs 'psi' and 'b'"),
    ({"terms": [{"psi": [["x1", 1]], "b": []}]}, "nonzero"),
    ({"terms": [{"psi": [["x1", 1]], "b": [["x3", 1]]}]}, "reserved"),
    ({"terms": [{"psi": [["x2", 1]], "b": [["1", 1]], "reserved": [1, 3, 4]}]}, "z-words"),
    ({"terms": [{"psi": [["x1^0", 1]], "b": [["1", 1]]}]}, "zero power"),
])
def test_instance_errors(doc, msg):
    with pytest.raises(RingError, match=msg):
        loads_instance(json.dumps(doc))


def test_build_instance_reserved_disjoint():
    with pytest.raises(RingError):
        build_instance([([["x1", 1]], [["1", 1]]), ([["x1", 1]], [["1", 1]])], reserved=[(2, 3, 4), (4, 5, 6)])
