r"""Semantic contraction and revision of Kripke models and model sets.

Contraction adds one minimally-changed countermodel per outcome (maxichoice):
executability laws lose all a-arrows of exactly one antecedent world, effect
laws gain exactly one arrow into a relevant target world, static laws gain
exactly one new world with no arrows.  Revision is the dual: filter the set
when some member already satisfies the law, otherwise repair every member
minimally.

Relevant targets implement the paper's intent rather than its letter: the new
arrow must reach a world that keeps every effect the action is known to
guarantee (the intersection of the witnessed successor sets), except where
breaking an effect is exactly what reaching ~psi requires.  Justifications for
changed and kept literals go through the prime implicants of S /\ ~psi, where
S is the characteristic formula of the model's world set.  See the design
notes shipped with the test-suite regressions for the printed-example
cross-checks (Figs 5, 8, 13, 17 and 18).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import (
    FALSE,
    Literal,
    Signature,
    essential_atom_indices,
    format_valuation,
    literal_holds,
    mask_to_valuations,
    prime_implicants_of_mask,
    sat_mask,
    valuation_term,
    worlds_mask,
)
from .kripke import (
    Arrow,
    KripkeModel,
    WorldError,
    normalize_model_set,
    satisfies_law,
)
from .laws import EffectLaw, ExecutabilityLaw, Law, StaticLaw

ModelSet = tuple[KripkeModel, ...]


class UnrevisableError(ValueError):
    """Static revision by an unsatisfiable formula."""


# --- relevant target worlds ---------------------------------------------------

def _relevance_terms(model: KripkeModel, chi_mask: int) -> list[frozenset[Literal]]:
    r"""Prime implicants of char(W) /\ chi that mention an essential atom of chi.

    Terms carried purely by the statics justify nothing: a tautologous chi has
    no essential atoms and therefore no relevance terms (atm!(T) is empty).
    """
    sig = model.sig
    ess = set(essential_atom_indices(chi_mask, sig))
    if not ess:
        return []
    char = worlds_mask(model.worlds)
    out = []
    for term in prime_implicants_of_mask(char & chi_mask, sig):
        if any(sig.atom_index(l.atom) in ess for l in term):
            out.append(frozenset(term))
    return out


def _world_literals(sig: Signature, w: int) -> list[Literal]:
    return list(valuation_term(sig, w))


def _term_inside(sig: Signature, term: frozenset[Literal], w: int) -> bool:
    return all(literal_holds(sig, w, l) for l in term)


@dataclass(frozen=True)
class _Guarantees:
    literals: frozenset[Literal]  # effects every witnessed run establishes
    witnessed: frozenset[int]     # successors of the source world across M
    inertial: bool                # the action is wholly unwitnessed in M


def _guarantees(
    w: int, action: str, models: Sequence[KripkeModel], sig: Signature
) -> _Guarantees:
    local: set[int] = set()
    for m in models:
        if w in m.worlds:
            local |= set(m.successors(w, action))
    pool = local
    if not pool:
        for m in models:
            pool = pool | {v for (_, v) in m.rel[action]}
    if not pool:
        return _Guarantees(frozenset(), frozenset(local), True)
    common = set(_world_literals(sig, next(iter(pool))))
    for v in pool:
        common &= set(_world_literals(sig, v))
    return _Guarantees(frozenset(common), frozenset(local), False)


def rel_targets(
    w: int,
    law: EffectLaw,
    model: KripkeModel,
    models: Sequence[KripkeModel],
) -> list[int]:
    """Admissible endpoints for a new `law.action`-arrow leaving w."""
    sig = model.sig
    if w not in model.worlds:
        raise WorldError(f"world {format_valuation(sig, w)} not in model")
    if not ((sat_mask(law.pre, sig) >> w) & 1):
        return []
    psi = sat_mask(law.post, sig)
    not_psi = sig.full_mask & ~psi
    sacrifice = _relevance_terms(model, not_psi)
    g = _guarantees(w, law.action, list(models) or [model], sig)

    def justified_by_sacrifice(lit: Literal, target: int) -> bool:
        return any(
            lit in term and _term_inside(sig, term, target) for term in sacrifice
        )

    targets = []
    for target in model.sorted_worlds():
        if (psi >> target) & 1:
            continue
        target_lits = set(_world_literals(sig, target))
        source_lits = set(_world_literals(sig, w))
        flipped = target_lits - source_lits
        kept = target_lits & source_lits
        # every guaranteed effect must survive unless ~psi forces its loss
        if not all(
            literal_holds(sig, target, m) or justified_by_sacrifice(m.negate(), target)
            for m in g.literals
        ):
            continue
        if not all(
            justified_by_sacrifice(l, target) or l in g.literals for l in flipped
        ):
            continue
        if not all(
            justified_by_sacrifice(l, target)
            or any(literal_holds(sig, u, l) for u in g.witnessed)
            or (not g.witnessed and (l in g.literals or g.inertial))
            for l in kept
        ):
            continue
        targets.append(target)
    return targets


# --- contraction ---------------------------------------------------------------

@dataclass(frozen=True)
class ContractResult:
    models: tuple[KripkeModel, ...]
    reason: str | None = None  # set when the result is empty by impossibility


def contract_model(
    model: KripkeModel, law: Law, models: Sequence[KripkeModel] = ()
) -> ContractResult:
    """Minimal countermodels of one model (Defs 3.2 / 3.6 / 3.9)."""
    if not satisfies_law(model, law):
        return ContractResult((model,))
    sig = model.sig
    if isinstance(law, ExecutabilityLaw):
        pre = sat_mask(law.pre, sig)
        sources = [w for w in model.sorted_worlds() if (pre >> w) & 1]
        if not sources:
            return ContractResult((), "antecedent unsatisfiable in the world set")
        out = []
        for w in sources:
            doomed = {(u, v) for (u, v) in model.rel[law.action] if u == w}
            out.append(model.without_arrows(law.action, doomed))
        return ContractResult(tuple(out))
    if isinstance(law, EffectLaw):
        pool = normalize_model_set(list(models) + [model])
        pre = sat_mask(law.pre, sig)
        out = []
        for w in model.sorted_worlds():
            if not ((pre >> w) & 1):
                continue
            for target in rel_targets(w, law, model, pool):
                if (w, target) not in model.rel[law.action]:
                    out.append(model.with_arrows(law.action, [(w, target)]))
        if not out:
            return ContractResult((), "no relevant target worlds")
        return ContractResult(tuple(out))
    if isinstance(law, StaticLaw):
        missing = [
            v
            for v in mask_to_valuations(
                sig.full_mask & ~sat_mask(law.formula, sig), sig
            )
            if v not in model.worlds
        ]
        if not missing:
            return ContractResult((), "the formula is a tautology")
        return ContractResult(tuple(model.with_worlds([v]) for v in missing))
    raise TypeError(f"not a law: {law!r}")


@dataclass(frozen=True)
class ChangeProvenance:
    base: KripkeModel
    added_worlds: tuple[int, ...] = ()
    removed_worlds: tuple[int, ...] = ()
    added_arrows: tuple[tuple[str, int, int], ...] = ()
    removed_arrows: tuple[tuple[str, int, int], ...] = ()

    @staticmethod
    def diff(base: KripkeModel, changed: KripkeModel) -> "ChangeProvenance":
        return ChangeProvenance(
            base=base,
            added_worlds=tuple(sorted(changed.worlds - base.worlds)),
            removed_worlds=tuple(sorted(base.worlds - changed.worlds)),
            added_arrows=tuple(
                sorted(changed.labeled_arrows() - base.labeled_arrows())
            ),
            removed_arrows=tuple(
                sorted(base.labeled_arrows() - changed.labeled_arrows())
            ),
        )


@dataclass(frozen=True)
class ChangeOutcome:
    results: tuple[ModelSet, ...]
    provenance: tuple[ChangeProvenance, ...]
    notes: tuple[str, ...] = ()


def contract_model_set(models: Iterable[KripkeModel], law: Law) -> ChangeOutcome:
    """One result set per base model and minimal countermodel (Defs 3.3/3.7/3.10)."""
    pool = normalize_model_set(models)
    results: list[ModelSet] = []
    provenance: list[ChangeProvenance] = []
    notes: list[str] = []
    seen = set()
    for base in pool:
        res = contract_model(base, law, pool)
        if res.reason:
            notes.append(f"model {pool.index(base)}: {res.reason}")
        for changed in res.models:
            result = normalize_model_set(pool + (changed,))
            key = tuple(m.canonical_key() for m in result)
            if key in seen:
                continue
            seen.add(key)
            results.append(result)
            provenance.append(ChangeProvenance.diff(base, changed))
    return ChangeOutcome(tuple(results), tuple(provenance), tuple(notes))


# --- revision --------------------------------------------------------------------

def revise_model(
    model: KripkeModel, law: Law, models: Sequence[KripkeModel] = ()
) -> ContractResult:
    """Minimal repairs of one model so the law holds (Defs 8.2 / 8.4 / 8.6)."""
    sig = model.sig
    if isinstance(law, StaticLaw):
        phi = sat_mask(law.formula, sig)
        if phi == 0:
            raise UnrevisableError("cannot revise by an unsatisfiable static law")
        survivors = [w for w in model.sorted_worlds() if (phi >> w) & 1]
        if survivors or not model.worlds:
            return ContractResult((model.restricted_to(survivors),))
        return ContractResult(
            tuple(
                KripkeModel.build(sig, [v]) for v in mask_to_valuations(phi, sig)
            )
        )
    if isinstance(law, EffectLaw):
        pre = sat_mask(law.pre, sig)
        post = sat_mask(law.post, sig)
        doomed = {
            (u, v)
            for (u, v) in model.rel[law.action]
            if (pre >> u) & 1 and not ((post >> v) & 1)
        }
        return ContractResult((model.without_arrows(law.action, doomed),))
    if isinstance(law, ExecutabilityLaw):
        pool = normalize_model_set(list(models) + [model])
        pre = sat_mask(law.pre, sig)
        deficient = [
            w
            for w in model.sorted_worlds()
            if (pre >> w) & 1 and not model.successors(w, law.action)
        ]
        if not deficient:
            return ContractResult((model,))
        proxy = EffectLaw(law.pre, law.action, FALSE)
        choices = []
        for w in deficient:
            targets = rel_targets(w, proxy, model, pool)
            if not targets:
                return ContractResult(
                    (),
                    f"no relevant target for {format_valuation(sig, w)}",
                )
            choices.append([(w, t) for t in targets])
        out = []
        for combo in _product(choices):
            out.append(model.with_arrows(law.action, combo))
        return ContractResult(tuple(out))
    raise TypeError(f"not a law: {law!r}")


def _product(choices: list[list[Arrow]]) -> Iterable[tuple[Arrow, ...]]:
    return itertools.product(*choices) if choices else [()]


def revise_model_set(models: Iterable[KripkeModel], law: Law) -> ChangeOutcome:
    """Expansion when some member satisfies the law, minimal repair otherwise."""
    pool = normalize_model_set(models)
    if not pool:
        return ChangeOutcome((), (), ("empty model set",))
    satisfying = [m for m in pool if satisfies_law(m, law)]
    if satisfying:
        kept = normalize_model_set(satisfying)
        return ChangeOutcome(
            (kept,),
            (ChangeProvenance(base=pool[0]),),
            ("expansion: kept the satisfying models",),
        )
    per_model: list[list[KripkeModel]] = []
    notes: list[str] = []
    for base in pool:
        res = revise_model(base, law, pool)
        if not res.models:
            notes.append(res.reason or "unrevisable member")
            return ChangeOutcome((), (), tuple(notes))
        per_model.append(list(res.models))
    results: list[ModelSet] = []
    provenance: list[ChangeProvenance] = []
    seen = set()
    for combo in itertools.product(*per_model):
        result = normalize_model_set(combo)
        key = tuple(m.canonical_key() for m in result)
        if key in seen:
            continue
        seen.add(key)
        results.append(result)
        provenance.append(ChangeProvenance.diff(pool[0], combo[0]))
    return ChangeOutcome(tuple(results), tuple(provenance), tuple(notes))


# --- brute-force candidate spaces (oracle testing only) ---------------------------

def candidate_space(
    model: KripkeModel, law: Law, models: Sequence[KripkeModel] = ()
) -> list[KripkeModel]:
    """The literal Def 3.1 / 3.5 / 3.8 spaces, enumerated exhaustively.

    Exponential in the number of removable/addable arrows or missing worlds;
    only meant for cross-checking `contract_model` on small instances.
    """
    sig = model.sig
    out = []
    if isinstance(law, ExecutabilityLaw):
        pre = sat_mask(law.pre, sig)
        removable = sorted(
            (u, v) for (u, v) in model.rel[law.action] if (pre >> u) & 1
        )
        for k in range(len(removable) + 1):
            for subset in itertools.combinations(removable, k):
                candidate = model.without_arrows(law.action, subset)
                if not satisfies_law(candidate, law):
                    out.append(candidate)
        return out
    if isinstance(law, EffectLaw):
        pool = normalize_model_set(list(models) + [model])
        pre = sat_mask(law.pre, sig)
        addable = []
        for w in model.sorted_worlds():
            if (pre >> w) & 1:
                for t in rel_targets(w, law, model, pool):
                    if (w, t) not in model.rel[law.action]:
                        addable.append((w, t))
        for k in range(len(addable) + 1):
            for subset in itertools.combinations(addable, k):
                candidate = model.with_arrows(law.action, subset)
                if not satisfies_law(candidate, law):
                    out.append(candidate)
        return out
    if isinstance(law, StaticLaw):
        missing = [
            v
            for v in mask_to_valuations(
                sig.full_mask & ~sat_mask(law.formula, sig), sig
            )
            if v not in model.worlds
        ]
        for k in range(len(missing) + 1):
            for subset in itertools.combinations(missing, k):
                candidate = model.with_worlds(subset)
                if not satisfies_law(candidate, law):
                    out.append(candidate)
        return out
    raise TypeError(f"not a law: {law!r}")
