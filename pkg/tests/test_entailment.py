import random

import pytest

from atc.entailment import (
    biggest_model,
    entails,
    is_consistent,
    is_modular,
    theory_equivalent,
)
from atc.formula import Atom, Implies, Not, Signature, TRUE, equivalent_cpl, sat_mask
from atc.kripke import canonical_frame, is_model_of
from atc.laws import ActionTheory, EffectLaw, ExecutabilityLaw, StaticLaw
from atc.parsing import parse_law, parse_theory
from tests.generators import random_law, random_theory
from tests.oracle import brute_entails


def test_biggest_model_coffee_is_canonical(coffee):
    big = biggest_model(coffee)
    assert big.eliminated == ()
    assert big.model == canonical_frame(coffee)
    assert len(big.model.worlds) == 6
    assert len(big.model.rel["buy"]) == 3


def test_biggest_model_broken_coffee_empties(coffee_broken):
    sig = coffee_broken.sig
    big = biggest_model(coffee_broken)
    assert len(big.eliminated) == 2
    token_bit = 1 << sig.atom_index("token")
    # round 1 eliminates exactly the three ~token worlds
    assert all(not (w & token_bit) for w in big.eliminated[0])
    assert len(big.eliminated[0]) == 3
    assert big.model.worlds == frozenset()


def test_biggest_model_p_example():
    t = parse_theory(
        "theory t\natoms p\nactions a\neffect p => [a] false\nexec p => <a>\n"
    )
    big = biggest_model(t)
    assert big.eliminated == ((1,),)  # {p} goes in round one
    assert big.model.worlds == frozenset({0})
    assert big.model.rel["a"] == frozenset({(0, 0)})


def test_entails_coffee_examples(coffee):
    assert entails(coffee, parse_law("effect true => [buy] hot"))
    assert entails(coffee, parse_law("effect coffee => [buy] coffee"))
    # frame axiom for ~token comes from the inexecutability law
    assert entails(coffee, parse_law("effect ~token => [buy] ~token"))
    assert not entails(coffee, parse_law("static token"))


def test_entails_broken_coffee_implicit_law(coffee_broken):
    assert entails(coffee_broken, parse_law("static token"))


def test_empty_theory_does_not_entail_executability():
    sig = Signature(("p",), ("a",))
    t = ActionTheory.build(sig)
    assert not entails(t, ExecutabilityLaw(Atom("p"), "a"))
    assert entails(t, EffectLaw(Atom("p"), "a", TRUE))


def test_entails_conjunction(coffee):
    q = [parse_law("effect true => [buy] hot"), parse_law("exec token => <buy>")]
    assert entails(coffee, q)
    q2 = q + [parse_law("static token")]
    assert not entails(coffee, q2)


def equivalent_mod_statics(theory, phi, psi):
    # implicit static laws are read inside val(S)
    from atc.formula import conj_mask

    sig = theory.sig
    s = conj_mask(theory.static_formulas(), sig)
    return sat_mask(phi, sig) & s == sat_mask(psi, sig) & s


def test_modularity_trio(coffee, coffee_broken):
    sig = coffee.sig
    assert is_modular(coffee).modular

    report = is_modular(coffee_broken)
    assert not report.modular
    assert equivalent_mod_statics(coffee_broken, report.implicit_laws[0], Atom("token"))
    # iterated analysis empties the world set; both facts are reported
    assert len(report.implicit_laws) == 2
    assert sat_mask(report.final_law, sig) == 0

    t = parse_theory(
        "theory t\natoms p\nactions a\neffect p => [a] false\nexec p => <a>\n"
    )
    report2 = is_modular(t)
    assert not report2.modular
    assert equivalent_cpl(report2.implicit_laws[0], Not(Atom("p")), t.sig)


def test_theorem_6_1_on_corpus(coffee, coffee_broken, coffee_initial):
    for t in (coffee, coffee_broken, coffee_initial):
        assert is_modular(t).modular == is_model_of(canonical_frame(t), t)


def test_modular_shortcut_statics(coffee):
    # for modular theories, static entailment reduces to CPL over S
    from atc.formula import entails_cpl

    sig = coffee.sig
    candidates = [
        Implies(Atom("coffee"), Atom("hot")),
        Implies(Not(Atom("hot")), Not(Atom("coffee"))),
        Atom("token"),
        Not(Atom("coffee")),
    ]
    for phi in candidates:
        assert entails(coffee, StaticLaw(phi)) == entails_cpl(
            coffee.static_formulas(), phi, sig
        )


def test_is_consistent(coffee):
    assert is_consistent(coffee)
    sig = coffee.sig
    t = ActionTheory.build(
        sig, statics=[StaticLaw(Atom("token")), StaticLaw(Not(Atom("token")))]
    )
    assert not is_consistent(t)
    t2 = parse_theory(
        "theory t\natoms p\nactions a\nstatic ~p\nexec true => <a>\n"
        "effect p => [a] false\n"
    )
    assert is_consistent(t2)


def test_theory_equivalent(coffee):
    rewritten = parse_theory(
        """theory coffee2
atoms token, coffee, hot
actions buy
static ~coffee | hot
effect ~coffee => [buy] coffee
effect token => [buy] ~token
effect ~token => [buy] false
effect coffee => [buy] coffee
effect hot => [buy] hot
exec token => <buy>
"""
    )
    assert theory_equivalent(coffee, rewritten)
    weaker = ActionTheory.build(
        coffee.sig,
        statics=coffee.statics,
        effects=coffee.effects,
        execs=(),
        name="noexec",
    )
    assert not theory_equivalent(coffee, weaker)


def test_preservation_counterexample_theory_is_modular_consistent():
    t = parse_theory(
        "theory t\natoms p\nactions a\nstatic ~p\nexec true => <a>\n"
        "effect p => [a] false\n"
    )
    assert is_modular(t).modular
    assert is_consistent(t)
    # p -> <a>true is a trivial consequence
    assert entails(t, parse_law("exec p => <a>"))


def test_monotone_elimination():
    rng = random.Random(33)
    sig = Signature(("p1", "p2"), ("a", "b"))
    for _ in range(40):
        t = random_theory(rng, sig, max_laws=6)
        big = biggest_model(t)
        seen = set()
        for batch in big.eliminated:
            assert not (seen & set(batch))
            seen |= set(batch)
        assert len(big.eliminated) <= sig.n_valuations


@pytest.mark.slow
def test_entails_agrees_with_brute_force_oracle():
    rng = random.Random(2024)
    sig = Signature(("p1", "p2"), ("a",))
    for _ in range(60):
        theory = random_theory(rng, sig, max_laws=5)
        query = random_law(rng, sig)
        assert entails(theory, query) == brute_entails(theory, query), (
            theory,
            query,
        )
