"""Syntactic contraction of laws and the model-set-to-theory compiler.

The three operators weaken a theory so the contracted law stops being a
global consequence while everything else survives:

  * executability: strengthen every X_a antecedent to exclude one allowed
    phi-valuation (one candidate per such context);
  * effect: weaken the union of the law's support sets (kernels) so one
    context may reach a ~psi prime implicant, re-adding conditional frame
    laws for the literals that context is not forced to lose;
  * static: delegate to a classical contraction of S, then guard the
    executability laws with the contracted formula and forbid action
    execution in the newly allowed states.

Candidates carry their provenance (context valuation, chosen ~psi implicant,
kernels) because the knowledge engineer picks among them by eye.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .formula import (
    And,
    Atom,
    Bot,
    Formula,
    Literal,
    Not,
    Or,
    Signature,
    Term,
    Top,
    classical_contract,
    conj,
    conj_mask,
    disj,
    formula_for_mask_mod,
    mask_to_valuations,
    negated,
    prime_implicants,
    sat_mask,
    term_formula,
    term_mask,
    valuation_formula,
    valuation_term,
    worlds_mask,
)
from .kripke import KripkeModel, normalize_model_set
from .laws import ActionTheory, EffectLaw, ExecutabilityLaw, Law, StaticLaw
from .entailment import entails


@dataclass(frozen=True)
class ContractionContext:
    r"""A full valuation of S /\ phi, split as prime implicant plus completion."""

    pi: Term
    completion: Term
    valuation: int


@dataclass(frozen=True)
class TheoryCandidate:
    theory: ActionTheory
    context: int | None = None
    pi_prime: Term | None = None
    kernels: tuple[tuple[EffectLaw, ...], ...] = ()
    note: str | None = None


def contexts(theory: ActionTheory, phi: Formula) -> list[ContractionContext]:
    """Consistent (pi, A) pairs, deduplicated by the valuation they denote."""
    sig = theory.sig
    s_mask = conj_mask(theory.static_formulas(), sig)
    seen: dict[int, ContractionContext] = {}
    for pi in prime_implicants(And((conj(theory.static_formulas()), phi)), sig):
        pi_atoms = {l.atom for l in pi}
        rest = [a for a in sig.atoms if a not in pi_atoms]
        for polarity in itertools.product((True, False), repeat=len(rest)):
            completion = tuple(
                Literal(a, p) for a, p in zip(rest, polarity)
            )
            vmask = term_mask(pi + completion, sig)
            v = vmask.bit_length() - 1  # exactly one bit set
            if not ((s_mask >> v) & 1) or v in seen:
                continue
            seen[v] = ContractionContext(pi, completion, v)
    return [seen[v] for v in sorted(seen)]


def _strengthened(pre: Formula, sig: Signature, v: int) -> Formula:
    r"""pre /\ ~(context), with literals already forced by pre dropped."""
    ctx = valuation_term(sig, v)
    pre_lits = _term_literals(pre)
    if pre_lits is not None and all(l in ctx for l in pre_lits):
        reduced = tuple(l for l in ctx if l not in pre_lits)
        negation = negated(term_formula(reduced))
        return negation if isinstance(pre, Top) else And((pre, negation))
    return And((pre, negated(valuation_formula(sig, v))))


def _term_literals(phi: Formula) -> tuple[Literal, ...] | None:
    """The literals of phi when it is (a conjunction of) literals, else None."""
    if isinstance(phi, Top):
        return ()
    if isinstance(phi, And):
        out: list[Literal] = []
        for arg in phi.args:
            lits = _term_literals(arg)
            if lits is None:
                return None
            out.extend(lits)
        return tuple(out)
    if isinstance(phi, Not) and isinstance(phi.sub, Atom):
        return (Literal(phi.sub.name, False),)
    if isinstance(phi, Atom):
        return (Literal(phi.name, True),)
    return None


def support_sets(
    theory: ActionTheory, action: str, pre: Formula, post: Formula
) -> list[tuple[EffectLaw, ...]]:
    """Inclusion-minimal E' of E_a with S u E' entailing pre -> [action] post."""
    target = EffectLaw(pre, action, post)
    effects = theory.effects_for(action)
    found: list[tuple[EffectLaw, ...]] = []
    for k in range(len(effects) + 1):
        for subset in itertools.combinations(effects, k):
            chosen = set(subset)
            if any(set(f) <= chosen for f in found):
                continue
            candidate = ActionTheory.build(
                theory.sig, statics=theory.statics, effects=subset
            )
            if entails(candidate, target):
                found.append(subset)
    return found


def _preserved(theory: ActionTheory) -> TheoryCandidate:
    return TheoryCandidate(theory, note="preserved (law not effectively entailed)")


def contract_executability(
    theory: ActionTheory, law: ExecutabilityLaw
) -> list[TheoryCandidate]:
    """Algorithm 1."""
    sig = theory.sig
    s_mask = conj_mask(theory.static_formulas(), sig)
    if not entails(theory, law) or s_mask & sat_mask(law.pre, sig) == 0:
        return [_preserved(theory)]
    out = []
    for ctx in contexts(theory, law.pre):
        new_execs = [
            ExecutabilityLaw(_strengthened(x.pre, sig, ctx.valuation), law.action)
            for x in theory.execs_for(law.action)
        ]
        candidate = theory.replace_execs_for(law.action, new_execs)
        out.append(TheoryCandidate(candidate, context=ctx.valuation))
    return out


def contract_effect(
    theory: ActionTheory, law: EffectLaw, factor_frame: bool = False
) -> list[TheoryCandidate]:
    """Algorithm 2 (guard read as "if entailed", per the ledger)."""
    sig = theory.sig
    s_mask = conj_mask(theory.static_formulas(), sig)
    psi_mask = sat_mask(law.post, sig)
    if (
        not entails(theory, law)
        or s_mask & sat_mask(law.pre, sig) == 0
        or s_mask & ~psi_mask == 0
    ):
        return [_preserved(theory)]
    kernels = support_sets(theory, law.action, law.pre, law.post)
    weakened = tuple(
        e
        for e in theory.effects_for(law.action)
        if any(e in k for k in kernels)
    )
    kept_effects = tuple(e for e in theory.effects if e not in weakened)
    statics_conj = conj(theory.static_formulas())
    pi_primes = prime_implicants(And((statics_conj, Not(law.post))), sig)
    out = []
    for ctx in contexts(theory, law.pre):
        v = ctx.valuation
        ctx_term = valuation_term(sig, v)
        ctx_formula = term_formula(ctx_term)
        for pi_prime in pi_primes:
            new_effects: list[EffectLaw] = list(kept_effects)
            for e in weakened:
                new_effects.append(
                    EffectLaw(_strengthened(e.pre, sig, v), law.action, e.post)
                )
            pi_prime_formula = term_formula(pi_prime)
            for e in weakened:
                new_effects.append(
                    EffectLaw(
                        And((e.pre, ctx_formula)),
                        law.action,
                        Or((e.post, pi_prime_formula)),
                    )
                )
            frame_laws = []
            pp_mask = term_mask(pi_prime, sig)
            for lit in ctx_term:
                lit_mask = term_mask((lit,), sig)
                if s_mask & pp_mask & lit_mask == 0:
                    continue  # the implicant forbids this literal outright
                keeps_lit = EffectLaw(
                    And((ctx_formula, lit.formula())),
                    law.action,
                    lit.negate().formula(),
                )
                if lit in pi_prime or not entails(theory, keeps_lit):
                    frame_laws.append(
                        EffectLaw(
                            _frame_antecedent(ctx_formula, lit),
                            law.action,
                            Or((law.post, lit.formula())),
                        )
                    )
            if factor_frame and frame_laws:
                kept_lits = [
                    f.post.args[1] for f in frame_laws
                ]  # each post is (psi | literal)
                frame_laws = [
                    EffectLaw(
                        ctx_formula,
                        law.action,
                        Or((law.post, conj(kept_lits))),
                    )
                ]
            new_effects.extend(frame_laws)
            candidate = ActionTheory.build(
                sig,
                statics=theory.statics,
                effects=new_effects,
                execs=theory.execs,
                name=theory.name,
            )
            out.append(
                TheoryCandidate(
                    candidate,
                    context=v,
                    pi_prime=pi_prime,
                    kernels=tuple(kernels),
                )
            )
    return out


def _frame_antecedent(ctx_formula: Formula, lit: Literal) -> Formula:
    # the antecedent is ctx /\ lit with lit already part of the context
    return ctx_formula


def contract_static(
    theory: ActionTheory,
    phi: Formula,
    classical: Callable[..., list] = classical_contract,
) -> list[TheoryCandidate]:
    """Algorithm 3; `classical` is the pluggable minus operator on S."""
    sig = theory.sig
    if conj_mask(theory.static_formulas(), sig) & ~sat_mask(phi, sig):
        return [_preserved(theory)]
    out = []
    for result in classical(theory.static_formulas(), phi, sig):
        statics = tuple(StaticLaw(f) for f in result.laws)
        new_execs = [
            ExecutabilityLaw(And((x.pre, phi)), x.action) for x in theory.execs
        ]
        inexec = [
            EffectLaw(negated(phi), action, Bot())
            for action in theory.actions_with_laws()
        ]
        candidate = ActionTheory.build(
            sig,
            statics=statics,
            effects=tuple(theory.effects) + tuple(inexec),
            execs=new_execs,
            name=theory.name,
        )
        out.append(TheoryCandidate(candidate, context=result.added_world))
    return out


def contract(theory: ActionTheory, law: Law) -> list[TheoryCandidate]:
    """Dispatch by law shape; inexecutability laws take the effect route."""
    if isinstance(law, StaticLaw):
        return contract_static(theory, law.formula)
    if isinstance(law, EffectLaw):
        return contract_effect(theory, law)
    if isinstance(law, ExecutabilityLaw):
        return contract_executability(theory, law)
    raise TypeError(f"not a law: {law!r}")


# --- closing the loop after semantic revision -----------------------------------

def theory_from_model_set(
    models: Iterable[KripkeModel], sig: Signature, name: str = "induced"
) -> ActionTheory:
    """The strongest theory (in the law fragment) the model set satisfies."""
    pool = normalize_model_set(models)
    if not pool:
        raise ValueError("empty model set")
    possible = set()
    for m in pool:
        possible |= set(m.worlds)
    possible_mask = worlds_mask(possible)
    absent = mask_to_valuations(sig.full_mask & ~possible_mask, sig)
    statics: list[StaticLaw] = []
    if absent:
        statics.append(
            StaticLaw(Not(disj([valuation_formula(sig, v) for v in absent])))
        )
    effects: list[EffectLaw] = []
    execs: list[ExecutabilityLaw] = []
    for action in sig.actions:
        for w in sorted(possible):
            succ: set[int] = set()
            for m in pool:
                if w in m.worlds:
                    succ |= set(m.successors(w, action))
            pre = valuation_formula(sig, w)
            if not succ:
                effects.append(EffectLaw(pre, action, Bot()))
                continue
            post = formula_for_mask_mod(worlds_mask(succ), possible_mask, sig)
            if sat_mask(post, sig) & possible_mask == possible_mask:
                continue  # entailed by the statics alone
            effects.append(EffectLaw(pre, action, post))
        executable = [
            w
            for w in sorted(possible)
            if all(
                m.successors(w, action) for m in pool if w in m.worlds
            )
        ]
        if executable:
            pre = formula_for_mask_mod(
                worlds_mask(executable), possible_mask, sig
            )
            execs.append(ExecutabilityLaw(pre, action))
    return ActionTheory.build(sig, statics, effects, execs, name=name)


# --- candidate interchange --------------------------------------------------------

def candidates_to_json(
    candidates: Sequence[TheoryCandidate],
    sig: Signature,
    render_formula: Callable[[Formula], str],
    render_law: Callable[[Law], str],
    theory_to_json: Callable[[ActionTheory], dict],
) -> dict:
    docs = []
    for i, cand in enumerate(candidates):
        provenance: dict = {}
        if cand.context is not None:
            provenance["context"] = render_formula(
                valuation_formula(sig, cand.context)
            )
        if cand.pi_prime is not None:
            provenance["piPrime"] = render_formula(term_formula(cand.pi_prime))
        if cand.kernels:
            provenance["kernels"] = [
                [render_law(law) for law in kernel] for kernel in cand.kernels
            ]
        if cand.note:
            provenance["note"] = cand.note
        docs.append(
            {
                "id": f"c{i}",
                "theory": theory_to_json(cand.theory),
                "provenance": provenance,
            }
        )
    return {"candidates": docs}
