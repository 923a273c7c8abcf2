"""Kripke models over valuation-worlds.

Worlds are valuations (no two worlds share one), stored as valuation indices;
the accessibility relation is kept per action as a set of index pairs.  That
makes duplicate-world detection free and the symmetric differences behind the
closeness comparators cheap set algebra.  The empty model is legal and
satisfies every theory vacuously.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .formula import (
    And,
    Atom,
    Bot,
    Box,
    Dia,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    Top,
    format_valuation,
    mask_to_valuations,
    sat_mask,
    conj_mask,
    worlds_mask,
)
from .laws import ActionTheory, Law, law_formula


class WorldError(ValueError):
    """Evaluation at a world that is not part of the model."""


Arrow = tuple[int, int]
LabeledArrow = tuple[str, int, int]


@dataclass(frozen=True)
class KripkeModel:
    sig: Signature
    worlds: frozenset[int]
    rel: Mapping[str, frozenset[Arrow]]

    @staticmethod
    def build(
        sig: Signature,
        worlds: Iterable[int],
        rel: Mapping[str, Iterable[Arrow]] | None = None,
    ) -> "KripkeModel":
        wset = frozenset(worlds)
        for w in wset:
            if not 0 <= w < sig.n_valuations:
                raise WorldError(f"valuation index {w} out of range")
        table: dict[str, frozenset[Arrow]] = {}
        rel = rel or {}
        for action in rel:
            sig.require_action(action)
        for action in sig.actions:
            arrows = frozenset(tuple(p) for p in rel.get(action, ()))
            for u, v in arrows:
                if u not in wset or v not in wset:
                    raise WorldError(
                        f"arrow ({u},{v}) for {action} leaves the world set"
                    )
            table[action] = arrows
        return KripkeModel(sig, wset, _FrozenRel(table))

    def sorted_worlds(self) -> list[int]:
        return sorted(self.worlds)

    def arrows(self, action: str) -> frozenset[Arrow]:
        self.sig.require_action(action)
        return self.rel[action]

    def successors(self, w: int, action: str) -> frozenset[int]:
        return frozenset(v for (u, v) in self.arrows(action) if u == w)

    def labeled_arrows(self) -> frozenset[LabeledArrow]:
        out = set()
        for action in self.sig.actions:
            for u, v in self.rel[action]:
                out.add((action, u, v))
        return frozenset(out)

    def canonical_key(self) -> tuple:
        return (tuple(self.sorted_worlds()), tuple(sorted(self.labeled_arrows())))

    # Convenience constructors for the change operators.

    def with_worlds(self, worlds: Iterable[int]) -> "KripkeModel":
        return KripkeModel.build(
            self.sig, set(self.worlds) | set(worlds), dict(self.rel)
        )

    def without_arrows(self, action: str, arrows: Iterable[Arrow]) -> "KripkeModel":
        table = dict(self.rel)
        table[action] = self.rel[action] - frozenset(arrows)
        return KripkeModel.build(self.sig, self.worlds, table)

    def with_arrows(self, action: str, arrows: Iterable[Arrow]) -> "KripkeModel":
        table = dict(self.rel)
        table[action] = self.rel[action] | frozenset(arrows)
        return KripkeModel.build(self.sig, self.worlds, table)

    def restricted_to(self, worlds: Iterable[int]) -> "KripkeModel":
        keep = frozenset(worlds)
        table = {
            a: frozenset(p for p in self.rel[a] if p[0] in keep and p[1] in keep)
            for a in self.sig.actions
        }
        return KripkeModel.build(self.sig, keep, table)


class _FrozenRel(dict):
    """Hashable action->arrows table so models can live in sets."""

    def __hash__(self) -> int:  # type: ignore[override]
        return hash(tuple(sorted((a, tuple(sorted(ps))) for a, ps in self.items())))

    def __setitem__(self, *args) -> None:  # type: ignore[override]
        raise TypeError("relation table is immutable")


def eval_at(model: KripkeModel, w: int, phi: Formula) -> bool:
    """Truth at a world; boxes quantify over successors, diamonds dually."""
    if w not in model.worlds:
        raise WorldError(f"world {format_valuation(model.sig, w)} not in model")
    return _eval(model, w, phi)


def _eval(model: KripkeModel, w: int, phi: Formula) -> bool:
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Atom):
        return bool((w >> model.sig.atom_index(phi.name)) & 1)
    if isinstance(phi, Not):
        return not _eval(model, w, phi.sub)
    if isinstance(phi, And):
        return all(_eval(model, w, a) for a in phi.args)
    if isinstance(phi, Or):
        return any(_eval(model, w, a) for a in phi.args)
    if isinstance(phi, Implies):
        return not _eval(model, w, phi.left) or _eval(model, w, phi.right)
    if isinstance(phi, Iff):
        return _eval(model, w, phi.left) == _eval(model, w, phi.right)
    if isinstance(phi, Box):
        return all(_eval(model, v, phi.sub) for v in model.successors(w, phi.action))
    if isinstance(phi, Dia):
        return any(_eval(model, v, phi.sub) for v in model.successors(w, phi.action))
    raise TypeError(f"unknown formula node {phi!r}")


def holds_globally(model: KripkeModel, phi: Formula) -> bool:
    return all(_eval(model, w, phi) for w in model.worlds)


def satisfies_law(model: KripkeModel, law: Law) -> bool:
    return holds_globally(model, law_formula(law))


def is_model_of(model: KripkeModel, theory: ActionTheory) -> bool:
    return all(satisfies_law(model, law) for law in theory.laws())


def maximal_relation(
    sig: Signature, worlds: Iterable[int], effects
) -> dict[str, frozenset[Arrow]]:
    """The largest relation compatible with the effect laws (Def 2.8 shape)."""
    world_list = sorted(worlds)
    wmask = worlds_mask(world_list)
    table: dict[str, frozenset[Arrow]] = {}
    for action in sig.actions:
        laws = [e for e in effects if e.action == action]
        pre_masks = [(sat_mask(e.pre, sig), sat_mask(e.post, sig)) for e in laws]
        arrows = set()
        for u in world_list:
            allowed = wmask
            for pre, post in pre_masks:
                if (pre >> u) & 1:
                    allowed &= post
            for v in world_list:
                if (allowed >> v) & 1:
                    arrows.add((u, v))
        table[action] = frozenset(arrows)
    return table


def canonical_frame(theory: ActionTheory) -> KripkeModel:
    """Worlds = val(S); arrows maximal per the effect laws."""
    sig = theory.sig
    worlds = mask_to_valuations(conj_mask(theory.static_formulas(), sig), sig)
    return KripkeModel.build(
        sig, worlds, maximal_relation(sig, worlds, theory.effects)
    )


# --- closeness ----------------------------------------------------------------

class ComparatorKind(enum.Enum):
    SUBSET_LEX = "subset"
    CARDINALITY_LEX = "cardinality"


@dataclass(frozen=True)
class Comparator:
    kind: ComparatorKind
    base: KripkeModel


def subset_lex(base: KripkeModel) -> Comparator:
    return Comparator(ComparatorKind.SUBSET_LEX, base)


def cardinality_lex(base: KripkeModel) -> Comparator:
    return Comparator(ComparatorKind.CARDINALITY_LEX, base)


class Relation(enum.Enum):
    CLOSER = "closer"
    FARTHER = "farther"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _at_least_as_close(cmp: Comparator, m1: KripkeModel, m2: KripkeModel) -> bool:
    base = cmp.base
    wd1 = base.worlds ^ m1.worlds
    wd2 = base.worlds ^ m2.worlds
    rd1 = base.labeled_arrows() ^ m1.labeled_arrows()
    rd2 = base.labeled_arrows() ^ m2.labeled_arrows()
    if cmp.kind is ComparatorKind.SUBSET_LEX:
        if wd1 == wd2:
            return rd1 <= rd2
        return wd1 < wd2
    if len(wd1) != len(wd2):
        return len(wd1) < len(wd2)
    return len(rd1) <= len(rd2)


def compare(cmp: Comparator, m1: KripkeModel, m2: KripkeModel) -> Relation:
    le = _at_least_as_close(cmp, m1, m2)
    ge = _at_least_as_close(cmp, m2, m1)
    if le and ge:
        return Relation.EQUAL
    if le:
        return Relation.CLOSER
    if ge:
        return Relation.FARTHER
    return Relation.INCOMPARABLE


def minimal_under(
    candidates: Iterable[KripkeModel], cmp: Comparator
) -> list[KripkeModel]:
    """Candidates with no strictly closer rival, deduplicated, canonical order."""
    pool: list[KripkeModel] = []
    seen = set()
    for m in candidates:
        key = m.canonical_key()
        if key not in seen:
            seen.add(key)
            pool.append(m)
    out = []
    for m in pool:
        dominated = any(
            other is not m
            and _at_least_as_close(cmp, other, m)
            and not _at_least_as_close(cmp, m, other)
            for other in pool
        )
        if not dominated:
            out.append(m)
    return sorted(out, key=KripkeModel.canonical_key)


def normalize_model_set(models: Iterable[KripkeModel]) -> tuple[KripkeModel, ...]:
    seen = set()
    out = []
    for m in models:
        key = m.canonical_key()
        if key not in seen:
            seen.add(key)
            out.append(m)
    return tuple(sorted(out, key=KripkeModel.canonical_key))


# --- interchange formats --------------------------------------------------------

def _world_labels(sig: Signature, w: int) -> list[str]:
    return [
        atom if (w >> i) & 1 else "~" + atom for i, atom in enumerate(sig.atoms)
    ]


def model_to_json(model: KripkeModel) -> dict:
    order = model.sorted_worlds()
    index = {w: i for i, w in enumerate(order)}
    return {
        "worlds": [_world_labels(model.sig, w) for w in order],
        "relations": {
            action: sorted([index[u], index[v]] for (u, v) in model.rel[action])
            for action in model.sig.actions
            if model.rel[action]
        },
    }


def model_from_json(sig: Signature, doc: dict) -> KripkeModel:
    worlds = []
    for labels in doc["worlds"]:
        v = 0
        for label in labels:
            if label.startswith("~"):
                sig.atom_index(label[1:])
                continue
            v |= 1 << sig.atom_index(label)
        worlds.append(v)
    rel = {
        action: [(worlds[i], worlds[j]) for i, j in pairs]
        for action, pairs in doc.get("relations", {}).items()
    }
    return KripkeModel.build(sig, worlds, rel)


def model_json_text(model: KripkeModel) -> str:
    return json.dumps(model_to_json(model), indent=2, sort_keys=True) + "\n"


def model_to_dot(model: KripkeModel, name: str = "model") -> str:
    """One node per world labeled by its positive literals, edges per arrow."""
    order = model.sorted_worlds()
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for w in order:
        positives = [a for i, a in enumerate(model.sig.atoms) if (w >> i) & 1]
        label = ", ".join(positives) if positives else "(none)"
        lines.append(f'  w{w} [label="{label}"];')
    for action in model.sig.actions:
        for u, v in sorted(model.rel[action]):
            lines.append(f'  w{u} -> w{v} [label="{action}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
