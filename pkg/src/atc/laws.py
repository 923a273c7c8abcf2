"""Action laws and action theories.

A theory partitions its laws into statics (Boolean global axioms), effect
laws phi -> [a]psi (inexecutability when psi is false), and executability
laws phi -> <a>T.  Theories are immutable and hashable so entailment results
can be cached per theory.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .formula import (
    Bot,
    Box,
    Dia,
    Formula,
    Implies,
    Signature,
    SignatureError,
    TRUE,
    conj,
    formula_atoms,
    is_boolean,
)


@dataclass(frozen=True)
class StaticLaw:
    formula: Formula


@dataclass(frozen=True)
class EffectLaw:
    pre: Formula
    action: str
    post: Formula

    @property
    def is_inexecutability(self) -> bool:
        return isinstance(self.post, Bot)


@dataclass(frozen=True)
class ExecutabilityLaw:
    pre: Formula
    action: str


Law = StaticLaw | EffectLaw | ExecutabilityLaw
Query = Law | Sequence[Law]


def law_formula(law: Law) -> Formula:
    """The law as a modal formula (for model checking)."""
    if isinstance(law, StaticLaw):
        return law.formula
    if isinstance(law, EffectLaw):
        return Implies(law.pre, Box(law.action, law.post))
    return Implies(law.pre, Dia(law.action, TRUE))


def check_law(law: Law, sig: Signature) -> None:
    formulas: list[Formula] = []
    if isinstance(law, StaticLaw):
        formulas.append(law.formula)
    elif isinstance(law, EffectLaw):
        sig.require_action(law.action)
        formulas += [law.pre, law.post]
    else:
        sig.require_action(law.action)
        formulas.append(law.pre)
    for phi in formulas:
        if not is_boolean(phi):
            raise SignatureError(f"nested modality in law component: {phi!r}")
        for atom in formula_atoms(phi):
            sig.atom_index(atom)


def _dedup(laws: Iterable) -> tuple:
    seen = set()
    out = []
    for law in laws:
        if law not in seen:
            seen.add(law)
            out.append(law)
    return tuple(out)


@dataclass(frozen=True)
class ActionTheory:
    sig: Signature
    statics: tuple[StaticLaw, ...]
    effects: tuple[EffectLaw, ...]
    execs: tuple[ExecutabilityLaw, ...]
    name: str = "theory"

    @staticmethod
    def build(
        sig: Signature,
        statics: Iterable[StaticLaw] = (),
        effects: Iterable[EffectLaw] = (),
        execs: Iterable[ExecutabilityLaw] = (),
        name: str = "theory",
    ) -> "ActionTheory":
        theory = ActionTheory(
            sig, _dedup(statics), _dedup(effects), _dedup(execs), name
        )
        for law in theory.laws():
            check_law(law, sig)
        return theory

    def laws(self) -> tuple[Law, ...]:
        """All laws in canonical order: S, then E per action, then X per action."""
        out: list[Law] = list(self.statics)
        for action in self.sig.actions:
            out += [e for e in self.effects if e.action == action]
        for action in self.sig.actions:
            out += [x for x in self.execs if x.action == action]
        return tuple(out)

    def card(self) -> int:
        return len(self.statics) + len(self.effects) + len(self.execs)

    def static_formulas(self) -> tuple[Formula, ...]:
        return tuple(s.formula for s in self.statics)

    def statics_conj(self) -> Formula:
        return conj(self.static_formulas())

    def effects_for(self, action: str) -> tuple[EffectLaw, ...]:
        self.sig.require_action(action)
        return tuple(e for e in self.effects if e.action == action)

    def execs_for(self, action: str) -> tuple[ExecutabilityLaw, ...]:
        self.sig.require_action(action)
        return tuple(x for x in self.execs if x.action == action)

    def laws_for_action(
        self, action: str
    ) -> tuple[tuple[EffectLaw, ...], tuple[ExecutabilityLaw, ...]]:
        return self.effects_for(action), self.execs_for(action)

    def actions_with_laws(self) -> tuple[str, ...]:
        used = {e.action for e in self.effects} | {x.action for x in self.execs}
        return tuple(a for a in self.sig.actions if a in used)

    def contains(self, law: Law) -> bool:
        if isinstance(law, StaticLaw):
            return law in self.statics
        if isinstance(law, EffectLaw):
            return law in self.effects
        return law in self.execs

    def with_name(self, name: str) -> "ActionTheory":
        return replace(self, name=name)

    def with_law(self, law: Law) -> "ActionTheory":
        if self.contains(law):
            return self
        if isinstance(law, StaticLaw):
            return replace(self, statics=self.statics + (law,))
        if isinstance(law, EffectLaw):
            return replace(self, effects=self.effects + (law,))
        return replace(self, execs=self.execs + (law,))

    def replace_execs_for(
        self, action: str, new_execs: Iterable[ExecutabilityLaw]
    ) -> "ActionTheory":
        kept = tuple(x for x in self.execs if x.action != action)
        return replace(self, execs=_dedup(kept + tuple(new_execs)))


def executability_warning(theory: ActionTheory) -> str | None:
    """act(X) should be contained in act(E); a warning, never an error."""
    x_actions = {x.action for x in theory.execs}
    e_actions = {e.action for e in theory.effects}
    loose = sorted(x_actions - e_actions)
    if loose:
        return (
            "executability laws for action(s) without effect laws: "
            + ", ".join(loose)
        )
    return None


def as_query(query: Query) -> tuple[Law, ...]:
    if isinstance(query, (StaticLaw, EffectLaw, ExecutabilityLaw)):
        return (query,)
    laws = tuple(query)
    if not laws:
        raise ValueError("empty query conjunction")
    return laws
