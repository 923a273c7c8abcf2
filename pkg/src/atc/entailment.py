"""Global-consequence engine for the law fragment.

Every model of a theory (in the valuation-worlds class) embeds into the
"biggest model": start from all valuations satisfying the statics with the
maximal relation the effect laws allow, then repeatedly drop worlds whose
executability obligations cannot be met and rebuild the relation, until a
fixpoint.  The survivor structure decides entailment of laws directly:

  * a static law holds iff every survivor satisfies it;
  * an effect law holds iff it holds globally in the biggest model (smaller
    relations only lose counterexamples);
  * an executability law phi -> <a>T fails iff some survivor satisfies phi
    while falsifying every antecedent in X_a - stripping that world's
    a-arrows from the biggest model is then a countermodel.

The elimination batches double as the modularity diagnosis: the theory is
modular iff nothing gets eliminated when starting from val(S), and each
batch yields one implicit static law (the negated disjunction of the
eliminated valuations).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .formula import (
    Formula,
    Not,
    conj_mask,
    disj,
    formula_for_mask,
    mask_to_valuations,
    sat_mask,
    valuation_formula,
    worlds_mask,
)
from .kripke import KripkeModel, maximal_relation
from .laws import (
    ActionTheory,
    EffectLaw,
    ExecutabilityLaw,
    Law,
    Query,
    StaticLaw,
    as_query,
)


class UnsupportedQueryError(ValueError):
    """The entailment engine only decides the law fragment."""


@dataclass(frozen=True)
class BiggestModel:
    model: KripkeModel
    eliminated: tuple[tuple[int, ...], ...]  # one batch of valuations per round


@lru_cache(maxsize=4096)
def biggest_model(theory: ActionTheory) -> BiggestModel:
    sig = theory.sig
    worlds = set(mask_to_valuations(conj_mask(theory.static_formulas(), sig), sig))
    batches: list[tuple[int, ...]] = []
    while True:
        rel = maximal_relation(sig, worlds, theory.effects)
        outgoing = {a: {u for (u, _) in rel[a]} for a in sig.actions}
        bad = set()
        for law in theory.execs:
            pre = sat_mask(law.pre, sig)
            for w in worlds:
                if (pre >> w) & 1 and w not in outgoing[law.action]:
                    bad.add(w)
        if not bad:
            return BiggestModel(
                KripkeModel.build(sig, worlds, rel), tuple(batches)
            )
        batches.append(tuple(sorted(bad)))
        worlds -= bad


def _entails_law(theory: ActionTheory, big: BiggestModel, law: Law) -> bool:
    sig = theory.sig
    model = big.model
    if isinstance(law, StaticLaw):
        return worlds_mask(model.worlds) & ~sat_mask(law.formula, sig) == 0
    if isinstance(law, EffectLaw):
        pre = sat_mask(law.pre, sig)
        post = sat_mask(law.post, sig)
        return all(
            not ((pre >> u) & 1) or ((post >> v) & 1)
            for (u, v) in model.rel[law.action]
        )
    if isinstance(law, ExecutabilityLaw):
        pre = sat_mask(law.pre, sig)
        x_pres = [
            sat_mask(x.pre, sig) for x in theory.execs_for(law.action)
        ]
        for w in model.worlds:
            if (pre >> w) & 1 and not any((m >> w) & 1 for m in x_pres):
                # stripping w's arrows yields a countermodel
                return False
        return True
    raise UnsupportedQueryError(f"unsupported query shape: {law!r}")


def entails(theory: ActionTheory, query: Query) -> bool:
    """Global consequence of the theory, decided over the biggest model."""
    laws = as_query(query)
    big = biggest_model(theory)
    return all(_entails_law(theory, big, law) for law in laws)


def is_consistent(theory: ActionTheory) -> bool:
    return bool(biggest_model(theory).model.worlds)


def theory_equivalent(t1: ActionTheory, t2: ActionTheory) -> bool:
    """Law-wise mutual entailment (requires a shared signature)."""
    if t1.sig != t2.sig:
        raise ValueError("theories over different signatures")
    return all(entails(t1, law) for law in t2.laws()) and all(
        entails(t2, law) for law in t1.laws()
    )


def law_equivalent(l1: Law, l2: Law, sig) -> bool:
    t1 = _singleton_theory(l1, sig)
    t2 = _singleton_theory(l2, sig)
    return theory_equivalent(t1, t2)


def _singleton_theory(law: Law, sig) -> ActionTheory:
    if isinstance(law, StaticLaw):
        return ActionTheory.build(sig, statics=[law])
    if isinstance(law, EffectLaw):
        return ActionTheory.build(sig, effects=[law])
    return ActionTheory.build(sig, execs=[law])


@dataclass(frozen=True)
class ModularityReport:
    modular: bool
    implicit_laws: tuple[Formula, ...]  # one per elimination round
    final_law: Formula  # characteristic formula of the surviving val(S)-worlds
    eliminated: tuple[tuple[int, ...], ...]

    def to_json(self, render) -> dict:
        return {
            "modular": self.modular,
            "implicitLaws": [render(phi) for phi in self.implicit_laws],
            "finalLaw": render(self.final_law),
        }


def is_modular(theory: ActionTheory) -> ModularityReport:
    """Def 6.1 via Theorem 6.1: modular iff the canonical frame models T.

    The implicit-law batches come from the same fixpoint the entailment
    engine runs; round one reproduces what the paper's algorithms "would
    return", later rounds expose consequences of iterating.
    """
    big = biggest_model(theory)
    sig = theory.sig
    implicit = tuple(
        Not(disj([valuation_formula(sig, v) for v in batch]))
        for batch in big.eliminated
    )
    modular = not big.eliminated
    final = formula_for_mask(worlds_mask(big.model.worlds), sig)
    return ModularityReport(modular, implicit, final, big.eliminated)


def simplified_implicit_laws(theory: ActionTheory) -> list[Formula]:
    """Display form of the implicit laws, simplified modulo the statics.

    Round k's law is rendered as a small formula agreeing, within val(S), with
    "not eliminated in round k" (the broken coffee variant prints `token`).
    """
    from .formula import formula_for_mask_mod

    sig = theory.sig
    big = biggest_model(theory)
    s_mask = conj_mask(theory.static_formulas(), sig)
    out = []
    for batch in big.eliminated:
        target = s_mask & ~worlds_mask(batch)
        out.append(formula_for_mask_mod(target, s_mask, sig))
    return out
