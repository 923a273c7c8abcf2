"""Checking harness for the change postulates on concrete instances.

Each check runs the syntactic contraction and evaluates one postulate,
reporting holds / fails / precondition-unmet with a witness for failures.
Success is reported in two forms: the raw reading, which the paper itself
shows can fail on trivial consequences, and the Theorem 7.1 reading with its
S-non-entailment precondition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .entailment import (
    entails,
    is_consistent,
    is_modular,
    law_equivalent,
    theory_equivalent,
)
from .formula import Signature, conj_mask, sat_mask
from .laws import ActionTheory, EffectLaw, ExecutabilityLaw, Law, StaticLaw
from .modelchange import contract_model_set
from .theorychange import TheoryCandidate, contract


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    PRECONDITION_UNMET = "precondition-unmet"


@dataclass(frozen=True)
class PostulateResult:
    postulate: str
    verdict: Verdict
    witness: str | None = None

    def to_json(self) -> dict:
        return {
            "postulate": self.postulate,
            "verdict": self.verdict.value,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class PostulateReport:
    results: tuple[PostulateResult, ...]

    def __getitem__(self, name: str) -> PostulateResult:
        for r in self.results:
            if r.postulate == name:
                return r
        raise KeyError(name)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]


def _law_not_valid(law: Law, sig: Signature) -> bool:
    empty = ActionTheory.build(sig)
    return not entails(empty, law)


def _s_entails_dynamic(theory: ActionTheory, law: Law) -> bool:
    """S |= Phi for a dynamic law holds only vacuously."""
    sig = theory.sig
    s_mask = conj_mask(theory.static_formulas(), sig)
    if isinstance(law, ExecutabilityLaw):
        return s_mask & sat_mask(law.pre, sig) == 0
    if isinstance(law, EffectLaw):
        return (
            s_mask & sat_mask(law.pre, sig) == 0
            or s_mask & ~sat_mask(law.post, sig) == 0
        )
    return bool(s_mask & ~sat_mask(law.formula, sig) == 0)


def check_postulates(
    theory: ActionTheory, law: Law, render=None
) -> PostulateReport:
    from .parsing import render_law

    render = render or render_law
    candidates = contract(theory, law)
    results = []

    def witness_for(cand: TheoryCandidate, detail: str) -> str:
        idx = candidates.index(cand)
        return f"candidate {idx}: {detail}"

    # Monotonicity: T entails every law of every candidate
    verdict, witness = Verdict.HOLDS, None
    for cand in candidates:
        for lam in cand.theory.laws():
            if not entails(theory, lam):
                verdict = Verdict.FAILS
                witness = witness_for(cand, f"not entailed: {render(lam)}")
                break
        if witness:
            break
    results.append(PostulateResult("monotonicity", verdict, witness))

    # Preservation: T not entailing Phi means candidates = {T}
    if entails(theory, law):
        results.append(
            PostulateResult("preservation", Verdict.PRECONDITION_UNMET)
        )
    else:
        verdict, witness = Verdict.HOLDS, None
        if len(candidates) != 1 or not theory_equivalent(
            candidates[0].theory, theory
        ):
            verdict = Verdict.FAILS
            witness = "candidates differ from the input theory"
        results.append(PostulateResult("preservation", verdict, witness))

    # Success, raw form: consistent T, non-valid Phi
    if not is_consistent(theory) or not _law_not_valid(law, theory.sig):
        results.append(PostulateResult("success-raw", Verdict.PRECONDITION_UNMET))
    else:
        verdict, witness = Verdict.HOLDS, None
        for cand in candidates:
            if entails(cand.theory, law):
                verdict = Verdict.FAILS
                witness = witness_for(cand, "still entails the contracted law")
                break
        results.append(PostulateResult("success-raw", verdict, witness))

    # Success, Theorem 7.1 form: dynamic law, S does not entail Phi
    if (
        isinstance(law, StaticLaw)
        or not is_consistent(theory)
        or not is_modular(theory).modular
        or _s_entails_dynamic(theory, law)
    ):
        results.append(
            PostulateResult("success-thm-7.1", Verdict.PRECONDITION_UNMET)
        )
    else:
        verdict, witness = Verdict.HOLDS, None
        for cand in candidates:
            if entails(cand.theory, law):
                verdict = Verdict.FAILS
                witness = witness_for(cand, "still entails the contracted law")
                break
        results.append(PostulateResult("success-thm-7.1", verdict, witness))

    # Recovery: candidate plus the law entails the base (Theorem 7.3 needs
    # modularity)
    if not is_modular(theory).modular:
        results.append(PostulateResult("recovery", Verdict.PRECONDITION_UNMET))
    else:
        verdict, witness = Verdict.HOLDS, None
        for cand in candidates:
            restored = cand.theory.with_law(law)
            for lam in theory.laws():
                if not entails(restored, lam):
                    verdict = Verdict.FAILS
                    witness = witness_for(cand, f"loses {render(lam)}")
                    break
            if witness:
                break
        results.append(PostulateResult("recovery", verdict, witness))

    # Preservation of modularity
    if not is_modular(theory).modular:
        results.append(
            PostulateResult("modularity-preservation", Verdict.PRECONDITION_UNMET)
        )
    else:
        verdict, witness = Verdict.HOLDS, None
        for cand in candidates:
            if not is_modular(cand.theory).modular:
                verdict = Verdict.FAILS
                witness = witness_for(cand, "candidate is not modular")
                break
        results.append(
            PostulateResult("modularity-preservation", verdict, witness)
        )

    return PostulateReport(tuple(results))


def check_equivalences(
    t1: ActionTheory, t2: ActionTheory, law1: Law, law2: Law
) -> PostulateResult:
    """Theorem 7.2: equivalent inputs yield pairwise equivalent candidates."""
    if not (is_modular(t1).modular and is_modular(t2).modular):
        return PostulateResult("equivalences", Verdict.PRECONDITION_UNMET)
    if not theory_equivalent(t1, t2) or not law_equivalent(law1, law2, t1.sig):
        return PostulateResult(
            "equivalences", Verdict.HOLDS, "inputs not equivalent (vacuous)"
        )
    c1 = contract(t1, law2)
    c2 = contract(t2, law1)
    for a in c1:
        if not any(theory_equivalent(a.theory, b.theory) for b in c2):
            return PostulateResult(
                "equivalences", Verdict.FAILS, "unmatched candidate of T1"
            )
    for b in c2:
        if not any(theory_equivalent(a.theory, b.theory) for a in c1):
            return PostulateResult(
                "equivalences", Verdict.FAILS, "unmatched candidate of T2"
            )
    return PostulateResult("equivalences", Verdict.HOLDS)


def check_disjunctive(models1, models2, law: Law) -> PostulateResult:
    """Theorem 7.4 at the semantic level: contraction distributes over union."""
    from .kripke import normalize_model_set

    union = normalize_model_set(tuple(models1) + tuple(models2))
    lhs = contract_model_set(union, law)
    rhs1 = contract_model_set(normalize_model_set(models1), law)
    rhs2 = contract_model_set(normalize_model_set(models2), law)

    def keys(outcome):
        return {
            tuple(m.canonical_key() for m in result) for result in outcome.results
        }

    def absorb(outcome, extra):
        # a per-set result corresponds to the union-side result that includes
        # the other set's models unchanged
        return {
            tuple(
                m.canonical_key()
                for m in normalize_model_set(result + tuple(extra))
            )
            for result in outcome.results
        }

    lhs_keys = keys(lhs)
    rhs_keys = absorb(rhs1, models2) | absorb(rhs2, models1)
    if lhs_keys == rhs_keys:
        return PostulateResult("disjunctive", Verdict.HOLDS)
    return PostulateResult(
        "disjunctive",
        Verdict.FAILS,
        f"lhs has {len(lhs_keys)} outcomes, rhs union has {len(rhs_keys)}",
    )
