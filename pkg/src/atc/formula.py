"""Classical propositional engine over a fixed finite signature.

Everything downstream (Kripke models, entailment, contraction) works over one
finite signature of atoms and action names.  Valuations are represented as
integers in [0, 2^n): bit i of a valuation is the truth value of the i-th atom
in signature order.  Sets of valuations ("truth masks") are integers with one
bit per valuation, which makes equivalence, entailment and forgetting cheap
bit arithmetic at desk scale (<= ~10 atoms).

The operations here are deliberately brute force (truth tables, term
enumeration by increasing size): at the intended scale they are instant and
easy to oracle-test, and prime implicants are the one primitive the rest of
the system leans on for correctness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class SignatureError(ValueError):
    """An atom or action name is not part of the signature."""


class TautologyContractionError(ValueError):
    """Raised when asked to contract a tautology (no countermodel exists)."""


@dataclass(frozen=True)
class Signature:
    atoms: tuple[str, ...]
    actions: tuple[str, ...]

    def __post_init__(self) -> None:
        for group, names in (("atom", self.atoms), ("action", self.actions)):
            for name in names:
                if not name:
                    raise SignatureError(f"empty {group} name")
            if len(set(names)) != len(names):
                raise SignatureError(f"duplicate {group} names in {names}")

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def n_valuations(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_valuations) - 1

    def atom_index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise SignatureError(f"unknown atom {name!r}") from None

    def require_action(self, name: str) -> str:
        if name not in self.actions:
            raise SignatureError(f"unknown action {name!r}")
        return name

    def all_valuations(self) -> range:
        return range(self.n_valuations)


# --- formula AST -----------------------------------------------------------
#
# Boolean formulas plus the modal layer ([a], <a>) used by laws and model
# checking.  All nodes are frozen; formulas compare structurally.

@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    action: str
    sub: Formula


@dataclass(frozen=True)
class Dia(Formula):
    action: str
    sub: Formula


TRUE = Top()
FALSE = Bot()


def conj(args: Sequence[Formula]) -> Formula:
    args = tuple(args)
    if not args:
        return TRUE
    if len(args) == 1:
        return args[0]
    return And(args)


def disj(args: Sequence[Formula]) -> Formula:
    args = tuple(args)
    if not args:
        return FALSE
    if len(args) == 1:
        return args[0]
    return Or(args)


def xor(left: Formula, right: Formula) -> Formula:
    # ^ is sugar: (l | r) & ~(l & r)
    return And((Or((left, right)), Not(And((left, right)))))


def negated(phi: Formula) -> Formula:
    """One-step negation with the obvious foldings (used by printers)."""
    if isinstance(phi, Top):
        return FALSE
    if isinstance(phi, Bot):
        return TRUE
    if isinstance(phi, Not):
        return phi.sub
    if isinstance(phi, Implies):
        return And((phi.left, negated(phi.right)))
    return Not(phi)


def formula_atoms(phi: Formula) -> set[str]:
    if isinstance(phi, Atom):
        return {phi.name}
    if isinstance(phi, Not):
        return formula_atoms(phi.sub)
    if isinstance(phi, (And, Or)):
        out: set[str] = set()
        for arg in phi.args:
            out |= formula_atoms(arg)
        return out
    if isinstance(phi, (Implies, Iff)):
        return formula_atoms(phi.left) | formula_atoms(phi.right)
    if isinstance(phi, (Box, Dia)):
        return formula_atoms(phi.sub)
    return set()


def formula_actions(phi: Formula) -> set[str]:
    if isinstance(phi, (Box, Dia)):
        return {phi.action} | formula_actions(phi.sub)
    if isinstance(phi, Not):
        return formula_actions(phi.sub)
    if isinstance(phi, (And, Or)):
        out: set[str] = set()
        for arg in phi.args:
            out |= formula_actions(arg)
        return out
    if isinstance(phi, (Implies, Iff)):
        return formula_actions(phi.left) | formula_actions(phi.right)
    return set()


def is_boolean(phi: Formula) -> bool:
    return not formula_actions(phi)


# --- literals, terms, valuations -------------------------------------------

@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    positive: bool

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def formula(self) -> Formula:
        return Atom(self.atom) if self.positive else Not(Atom(self.atom))


Term = tuple[Literal, ...]


def term_formula(term: Term) -> Formula:
    return conj([lit.formula() for lit in term])


def sort_term(sig: Signature, lits: Iterable[Literal]) -> Term:
    return tuple(sorted(set(lits), key=lambda l: sig.atom_index(l.atom)))


def valuation_term(sig: Signature, v: int) -> Term:
    return tuple(
        Literal(atom, bool((v >> i) & 1)) for i, atom in enumerate(sig.atoms)
    )


def valuation_formula(sig: Signature, v: int) -> Formula:
    return term_formula(valuation_term(sig, v))


def literal_holds(sig: Signature, v: int, lit: Literal) -> bool:
    return bool((v >> sig.atom_index(lit.atom)) & 1) == lit.positive


def format_valuation(sig: Signature, v: int) -> str:
    parts = []
    for i, atom in enumerate(sig.atoms):
        parts.append(atom if (v >> i) & 1 else "~" + atom)
    return "{" + ", ".join(parts) + "}"


# --- truth masks ------------------------------------------------------------

@lru_cache(maxsize=None)
def _atom_masks(sig: Signature) -> tuple[int, ...]:
    masks = []
    for i in range(sig.n_atoms):
        m = 0
        for v in sig.all_valuations():
            if (v >> i) & 1:
                m |= 1 << v
        masks.append(m)
    return tuple(masks)


def atom_mask(sig: Signature, name: str) -> int:
    return _atom_masks(sig)[sig.atom_index(name)]


def sat_mask(phi: Formula, sig: Signature) -> int:
    """Set of valuations satisfying phi, as a bitmask over valuation indices."""
    full = sig.full_mask
    if isinstance(phi, Top):
        return full
    if isinstance(phi, Bot):
        return 0
    if isinstance(phi, Atom):
        return atom_mask(sig, phi.name)
    if isinstance(phi, Not):
        return full & ~sat_mask(phi.sub, sig)
    if isinstance(phi, And):
        m = full
        for arg in phi.args:
            m &= sat_mask(arg, sig)
        return m
    if isinstance(phi, Or):
        m = 0
        for arg in phi.args:
            m |= sat_mask(arg, sig)
        return m
    if isinstance(phi, Implies):
        return (full & ~sat_mask(phi.left, sig)) | sat_mask(phi.right, sig)
    if isinstance(phi, Iff):
        l, r = sat_mask(phi.left, sig), sat_mask(phi.right, sig)
        return (l & r) | (full & ~l & ~r)
    raise SignatureError(f"not a Boolean formula: {phi!r}")


def conj_mask(formulas: Iterable[Formula], sig: Signature) -> int:
    m = sig.full_mask
    for phi in formulas:
        m &= sat_mask(phi, sig)
    return m


def term_mask(term: Term, sig: Signature) -> int:
    m = sig.full_mask
    for lit in term:
        a = atom_mask(sig, lit.atom)
        m &= a if lit.positive else (sig.full_mask & ~a)
    return m


def satisfies(sig: Signature, v: int, phi: Formula) -> bool:
    return bool((sat_mask(phi, sig) >> v) & 1)


def models_of(phi: Formula | Iterable[Formula], sig: Signature) -> list[int]:
    if isinstance(phi, Formula):
        mask = sat_mask(phi, sig)
    else:
        mask = conj_mask(phi, sig)
    return mask_to_valuations(mask, sig)


def mask_to_valuations(mask: int, sig: Signature) -> list[int]:
    return [v for v in sig.all_valuations() if (mask >> v) & 1]


def worlds_mask(worlds: Iterable[int]) -> int:
    m = 0
    for w in worlds:
        m |= 1 << w
    return m


def entails_cpl(
    gamma: Formula | Iterable[Formula], phi: Formula, sig: Signature
) -> bool:
    if isinstance(gamma, Formula):
        gamma = [gamma]
    return conj_mask(gamma, sig) & ~sat_mask(phi, sig) == 0


def equivalent_cpl(phi: Formula, psi: Formula, sig: Signature) -> bool:
    return sat_mask(phi, sig) == sat_mask(psi, sig)


def is_tautology(phi: Formula, sig: Signature) -> bool:
    return sat_mask(phi, sig) == sig.full_mask


# --- essential atoms and the least-atom-set reduct ---------------------------

@lru_cache(maxsize=None)
def _lo_positions(sig: Signature, i: int) -> int:
    return sig.full_mask & ~_atom_masks(sig)[i]


def essential_atom_indices(mask: int, sig: Signature) -> list[int]:
    out = []
    for i in range(sig.n_atoms):
        a = _atom_masks(sig)[i]
        shift = 1 << i
        hi = (mask & a) >> shift
        lo = mask & _lo_positions(sig, i)
        if hi != lo:
            out.append(i)
    return out


def essential_atoms(phi: Formula, sig: Signature) -> list[str]:
    """Atoms phi truly depends on; empty for tautologies and contradictions."""
    return [sig.atoms[i] for i in essential_atom_indices(sat_mask(phi, sig), sig)]


def essential_reduct(phi: Formula, sig: Signature) -> Formula:
    """An equivalent formula mentioning only the essential atoms of phi."""
    mask = sat_mask(phi, sig)
    return formula_for_mask(mask, sig)


def formula_for_mask(mask: int, sig: Signature) -> Formula:
    """Render a truth mask as the disjunction of its prime implicants."""
    if mask == sig.full_mask:
        return TRUE
    if mask == 0:
        return FALSE
    return disj([term_formula(t) for t in prime_implicants_of_mask(mask, sig)])


def formula_for_mask_mod(mask: int, context_mask: int, sig: Signature) -> Formula:
    """A small formula equivalent to `mask` for valuations inside `context_mask`.

    Valuations outside the context are don't-cares (used to render laws that
    only ever get evaluated at worlds allowed by the statics).
    """
    dont_care = sig.full_mask & ~context_mask
    if mask & context_mask == context_mask & sig.full_mask:
        return TRUE
    if mask & context_mask == 0:
        return FALSE
    terms = prime_implicants_of_mask(mask | dont_care, sig)
    # keep only terms needed to cover the on-set within the context
    needed: list[Term] = []
    covered = 0
    target = mask & context_mask
    for t in terms:
        tm = term_mask(t, sig) & target
        if tm & ~covered:
            needed.append(t)
            covered |= tm
        if covered == target:
            break
    return disj([term_formula(t) for t in needed])


# --- prime implicants --------------------------------------------------------

def _terms_of_size(sig: Signature, k: int) -> Iterable[Term]:
    for idxs in itertools.combinations(range(sig.n_atoms), k):
        for polarity in itertools.product((True, False), repeat=k):
            yield tuple(Literal(sig.atoms[i], p) for i, p in zip(idxs, polarity))


def prime_implicants_of_mask(mask: int, sig: Signature) -> list[Term]:
    """All minimal consistent terms entailing the mask, by increasing size.

    IP(T) = [()] (the empty term), IP(F) = [].
    """
    found: list[Term] = []
    found_sets: list[frozenset[Literal]] = []
    for k in range(sig.n_atoms + 1):
        for term in _terms_of_size(sig, k):
            lits = frozenset(term)
            if any(f <= lits for f in found_sets):
                continue
            if term_mask(term, sig) & ~mask == 0:
                found.append(term)
                found_sets.append(lits)
    return found


def prime_implicants(phi: Formula, sig: Signature) -> list[Term]:
    return prime_implicants_of_mask(sat_mask(phi, sig), sig)


# --- prime subvaluations (Def 2.10, literal reading) -------------------------

def subvaluation_extensions(sig: Signature, sub: Term, worlds: Iterable[int]) -> list[int]:
    return [w for w in worlds if all(literal_holds(sig, w, l) for l in sub)]


def prime_subvaluations(
    phi: Formula, worlds: Iterable[int], sig: Signature
) -> list[Term]:
    """Minimal subvaluations over essential atoms that force phi modulo worlds.

    A subvaluation counts as satisfying phi modulo W when every extension of it
    inside W satisfies phi (vacuously so when it has no extension in W).
    """
    world_list = sorted(set(worlds))
    phi_mask = sat_mask(phi, sig)
    ess = essential_atom_indices(phi_mask, sig)
    found: list[Term] = []
    found_sets: list[frozenset[Literal]] = []
    for k in range(len(ess) + 1):
        for idxs in itertools.combinations(ess, k):
            for polarity in itertools.product((True, False), repeat=k):
                term = tuple(
                    Literal(sig.atoms[i], p) for i, p in zip(idxs, polarity)
                )
                lits = frozenset(term)
                if any(f <= lits for f in found_sets):
                    continue
                ext = subvaluation_extensions(sig, term, world_list)
                if all((phi_mask >> w) & 1 for w in ext):
                    found.append(term)
                    found_sets.append(lits)
    return found


# --- classical contraction (the pluggable minus operator) --------------------

@dataclass(frozen=True)
class ClassicalContraction:
    """One maxichoice result: the weakened statics plus the world that did it."""

    laws: tuple[Formula, ...]
    added_world: int | None


def classical_contract(
    statics: Sequence[Formula], phi: Formula, sig: Signature
) -> list[ClassicalContraction]:
    """Model-based maxichoice contraction of a set of static laws.

    One result per valuation of ~phi; the result's models are val(S) plus that
    single valuation, rendered as the negated disjunction of the still-excluded
    valuations.
    """
    if is_tautology(phi, sig):
        raise TautologyContractionError("cannot contract a tautology")
    s_mask = conj_mask(statics, sig)
    if s_mask & ~sat_mask(phi, sig):
        return [ClassicalContraction(tuple(statics), None)]
    out = []
    for v in mask_to_valuations(sig.full_mask & ~sat_mask(phi, sig), sig):
        new_mask = s_mask | (1 << v)
        excluded = mask_to_valuations(sig.full_mask & ~new_mask, sig)
        if not excluded:
            laws: tuple[Formula, ...] = ()
        else:
            laws = (
                Not(disj([valuation_formula(sig, u) for u in excluded])),
            )
        out.append(ClassicalContraction(laws, v))
    return out
