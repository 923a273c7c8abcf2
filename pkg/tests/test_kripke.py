import random

import pytest

from atc.formula import Atom, Box, Dia, FALSE, Implies, Signature, TRUE
from atc.kripke import (
    KripkeModel,
    Relation,
    WorldError,
    canonical_frame,
    cardinality_lex,
    compare,
    eval_at,
    holds_globally,
    is_model_of,
    minimal_under,
    model_from_json,
    model_to_dot,
    model_to_json,
    subset_lex,
)
from atc.parsing import parse_theory

SIG2 = Signature(("p1", "p2"), ("a1", "a2"))


def val(sig, **kwargs):
    v = 0
    for name, value in kwargs.items():
        if value:
            v |= 1 << sig.atom_index(name)
    return v


@pytest.fixture
def figure2_model():
    # W = {{p1,p2},{p1,~p2},{~p1,p2}} with the arrows of the running example
    w11 = val(SIG2, p1=True, p2=True)
    w10 = val(SIG2, p1=True, p2=False)
    w01 = val(SIG2, p1=False, p2=True)
    return KripkeModel.build(
        SIG2,
        [w11, w10, w01],
        {
            "a1": [(w11, w10), (w11, w01), (w10, w10), (w10, w01)],
            "a2": [(w11, w01), (w01, w01)],
        },
    )


def test_eval_figure2(figure2_model):
    phi = Implies(Atom("p1"), Box("a2", Atom("p2")))
    assert holds_globally(figure2_model, phi)
    assert holds_globally(figure2_model, Implies(TRUE, Atom("p1"))) is False


def test_vacuous_box_and_diamond(figure2_model):
    w01 = val(SIG2, p1=False, p2=True)
    assert eval_at(figure2_model, w01, Box("a1", FALSE))  # no a1-successors
    assert not eval_at(figure2_model, w01, Dia("a1", TRUE))


def test_eval_requires_world(figure2_model):
    with pytest.raises(WorldError):
        eval_at(figure2_model, val(SIG2, p1=False, p2=False), Atom("p1"))


def test_duplicate_world_insert_is_noop(figure2_model):
    again = figure2_model.with_worlds([val(SIG2, p1=True, p2=True)])
    assert again == figure2_model


def test_empty_model_satisfies_everything():
    m = KripkeModel.build(SIG2, [])
    assert holds_globally(m, FALSE)
    theory = parse_theory("theory t\natoms p\nactions a\nstatic p\n")
    empty = KripkeModel.build(theory.sig, [])
    assert is_model_of(empty, theory)


def test_canonical_frame_counterexample():
    # {p -> [a]false, p -> <a>true}: W_can = {{p},{~p}}, no arrows leave {p}
    t = parse_theory(
        "theory t\natoms p\nactions a\neffect p => [a] false\nexec p => <a>\n"
    )
    frame = canonical_frame(t)
    assert frame.worlds == frozenset({0, 1})
    assert all(u != 1 for (u, v) in frame.rel["a"])
    assert not is_model_of(frame, t)  # {p} fails the executability


def test_canonical_frame_coffee(coffee):
    frame = canonical_frame(coffee)
    sig = coffee.sig
    assert len(frame.worlds) == 6
    arrows = frame.rel["buy"]
    assert len(arrows) == 3
    target = val(sig, token=False, coffee=True, hot=True)
    token_mask = 1 << sig.atom_index("token")
    assert all(v == target and (u & token_mask) for (u, v) in arrows)
    assert is_model_of(frame, coffee)


def test_canonical_frame_no_effect_laws_is_total():
    t = parse_theory("theory t\natoms p\nactions a\nexec p => <a>\n")
    frame = canonical_frame(t)
    assert len(frame.rel["a"]) == 4


def test_compare_trivia(figure2_model):
    cmp = subset_lex(figure2_model)
    assert compare(cmp, figure2_model, figure2_model) == Relation.EQUAL
    smaller = figure2_model.without_arrows("a1", [(3, 2)])
    assert compare(cmp, figure2_model, smaller) == Relation.CLOSER
    assert compare(cmp, smaller, figure2_model) == Relation.FARTHER


def test_subset_vs_cardinality_closeness():
    # one arrow removed vs two arrows removed from a different world:
    # incomparable under subsets, ordered under cardinalities
    sig = SIG2
    w11, w10, w01 = 0b11, 0b01, 0b10
    base = KripkeModel.build(
        sig,
        [w11, w10, w01],
        {"a1": [(w11, w01), (w10, w01), (w10, w11)]},
    )
    one_removed = base.without_arrows("a1", [(w11, w01)])
    two_removed = base.without_arrows("a1", [(w10, w01), (w10, w11)])
    assert compare(subset_lex(base), one_removed, two_removed) == Relation.INCOMPARABLE
    assert compare(cardinality_lex(base), one_removed, two_removed) == Relation.CLOSER


def test_minimal_under():
    sig = SIG2
    base = KripkeModel.build(sig, [0b11, 0b01], {"a1": [(0b11, 0b01), (0b01, 0b01)]})
    m1 = base.without_arrows("a1", [(0b11, 0b01)])
    m2 = base.without_arrows("a1", [(0b01, 0b01)])
    m3 = base.without_arrows("a1", [(0b11, 0b01), (0b01, 0b01)])
    cmp = subset_lex(base)
    assert minimal_under([base], cmp) == [base]
    got = minimal_under([m1, m2], cmp)
    assert set(got) == {m1, m2}  # incomparable
    # chain: base closer than m1 closer than m3
    assert minimal_under([base, m1, m3], cmp) == [base]


def test_subset_lex_is_a_preorder():
    # reflexive and transitive on random triples
    rng = random.Random(7)
    sig = SIG2

    def random_model():
        worlds = [w for w in range(4) if rng.random() < 0.8]
        arrows = [
            (u, v)
            for u in worlds
            for v in worlds
            if rng.random() < 0.4
        ]
        return KripkeModel.build(sig, worlds, {"a1": arrows})

    from atc.kripke import _at_least_as_close

    for _ in range(120):
        base, m1, m2, m3 = (random_model() for _ in range(4))
        cmp = subset_lex(base)
        assert _at_least_as_close(cmp, m1, m1)
        if _at_least_as_close(cmp, m1, m2) and _at_least_as_close(cmp, m2, m3):
            assert _at_least_as_close(cmp, m1, m3)


def test_model_json_roundtrip(coffee):
    frame = canonical_frame(coffee)
    doc = model_to_json(frame)
    assert set(doc) == {"worlds", "relations"}
    assert len(doc["worlds"]) == 6
    assert all(len(labels) == 3 for labels in doc["worlds"])
    again = model_from_json(coffee.sig, doc)
    assert again == frame


def test_model_dot_export(coffee):
    frame = canonical_frame(coffee)
    dot = model_to_dot(frame)
    assert dot.startswith("digraph")
    assert dot.count("->") == 3
    assert 'label="buy"' in dot


def test_eval_canonical_coffee_buy_not_token(coffee):
    frame = canonical_frame(coffee)
    sig = coffee.sig
    w = val(sig, token=True, coffee=True, hot=True)
    from atc.formula import Box, Not as FNot, Atom as FAtom

    assert eval_at(frame, w, Box("buy", FNot(FAtom("token"))))
