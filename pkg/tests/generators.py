"""Seeded random theories and laws for the randomized suites."""

from __future__ import annotations

import random

from atc.entailment import is_consistent, is_modular
from atc.formula import And, Atom, FALSE, Formula, Implies, Not, Or, Signature, TRUE
from atc.laws import ActionTheory, EffectLaw, ExecutabilityLaw, StaticLaw


def random_formula(rng: random.Random, atoms, depth: int = 2) -> Formula:
    if depth == 0 or rng.random() < 0.35:
        roll = rng.random()
        if roll < 0.08:
            return TRUE
        if roll < 0.12:
            return FALSE
        atom = Atom(rng.choice(atoms))
        return atom if rng.random() < 0.6 else Not(atom)
    kind = rng.choice(("and", "or", "implies", "not"))
    if kind == "not":
        return Not(random_formula(rng, atoms, depth - 1))
    left = random_formula(rng, atoms, depth - 1)
    right = random_formula(rng, atoms, depth - 1)
    if kind == "and":
        return And((left, right))
    if kind == "or":
        return Or((left, right))
    return Implies(left, right)


def random_law(rng: random.Random, sig: Signature):
    kind = rng.random()
    if kind < 0.3:
        return StaticLaw(random_formula(rng, sig.atoms))
    action = rng.choice(sig.actions)
    pre = random_formula(rng, sig.atoms)
    if kind < 0.75:
        post = random_formula(rng, sig.atoms)
        if rng.random() < 0.15:
            post = FALSE
        return EffectLaw(pre, action, post)
    return ExecutabilityLaw(pre, action)


def random_theory(
    rng: random.Random,
    sig: Signature,
    max_laws: int = 5,
    require_modular: bool = False,
    require_consistent: bool = False,
) -> ActionTheory:
    while True:
        laws = [random_law(rng, sig) for _ in range(rng.randint(1, max_laws))]
        theory = ActionTheory.build(
            sig,
            statics=[l for l in laws if isinstance(l, StaticLaw)],
            effects=[l for l in laws if isinstance(l, EffectLaw)],
            execs=[l for l in laws if isinstance(l, ExecutabilityLaw)],
            name="random",
        )
        if require_consistent and not is_consistent(theory):
            continue
        if require_modular and not is_modular(theory).modular:
            continue
        return theory
