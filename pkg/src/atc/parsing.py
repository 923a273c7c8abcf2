"""Text format for theories and laws.

Grammar (one law per line, '#' starts a comment):

    file   := "theory" IDENT nl decls laws
    decls  := "atoms" ident-list nl "actions" ident-list nl
    law    := "static" bool
            | "effect" bool "=>" "[" IDENT "]" bool
            | "exec" bool "=>" "<" IDENT ">"
    bool   := "true" | "false" | IDENT | "~" bool | bool "&" bool
            | bool "|" bool | bool "^" bool | bool "->" bool
            | bool "<->" bool | "(" bool ")"

Precedence, tightest first: ~, &, |, ^, -> (right assoc), <->.  The law-level
separator is "=>" so it cannot be confused with the Boolean "->".  "^"
desugars to the usual exclusive-or expansion at parse time.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .formula import (
    And,
    Atom,
    Bot,
    FALSE,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    TRUE,
    Top,
    formula_atoms,
    xor,
)
from .laws import ActionTheory, EffectLaw, ExecutabilityLaw, Law, StaticLaw


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<comment>#[^\n]*)|(?P<op><->|->|=>|[~&|^()\[\]<>,])"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9']*))"
)

_KEYWORDS = {"theory", "atoms", "actions", "static", "effect", "exec", "true", "false"}


@dataclass
class _Token:
    kind: str  # 'op' | 'ident' | 'eol'
    text: str
    line: int
    column: int


def _tokenize_line(text: str, line_no: int) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            rest = text[pos:].strip()
            if not rest:
                break
            bad = len(text) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {rest[0]!r}", line_no, bad)
        pos = m.end()
        if m.group("comment"):
            break
        kind = "op" if m.group("op") else "ident"
        tokens.append(_Token(kind, m.group(kind), line_no, m.start(kind) + 1))
    tokens.append(_Token("eol", "", line_no, len(text) + 1))
    return tokens


class _LineParser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eol":
            self.i += 1
        return tok

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.column)

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise self.error(f"expected {text!r}")
        return self.next()

    def expect_ident(self, what: str = "identifier") -> _Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error(f"expected {what}")
        return self.next()

    def at_eol(self) -> bool:
        return self.peek().kind == "eol"

    # Boolean formulas, by descending binding strength.

    def formula(self) -> Formula:
        return self._iff()

    def _iff(self) -> Formula:
        left = self._implies()
        while self.peek().kind == "op" and self.peek().text == "<->":
            self.next()
            left = Iff(left, self._implies())
        return left

    def _implies(self) -> Formula:
        left = self._xor()
        if self.peek().kind == "op" and self.peek().text == "->":
            self.next()
            return Implies(left, self._implies())  # right associative
        return left

    def _xor(self) -> Formula:
        left = self._or()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.next()
            left = xor(left, self._or())
        return left

    def _or(self) -> Formula:
        args = [self._and()]
        while self.peek().kind == "op" and self.peek().text == "|":
            self.next()
            args.append(self._and())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def _and(self) -> Formula:
        args = [self._unary()]
        while self.peek().kind == "op" and self.peek().text == "&":
            self.next()
            args.append(self._unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def _unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "~":
            self.next()
            return Not(self._unary())
        if tok.kind == "op" and tok.text == "(":
            self.next()
            inner = self.formula()
            self.expect_op(")")
            return inner
        if tok.kind == "ident":
            self.next()
            if tok.text == "true":
                return TRUE
            if tok.text == "false":
                return FALSE
            return Atom(tok.text)
        raise self.error("expected a formula")


def _parse_law_tokens(p: _LineParser) -> Law:
    head = p.expect_ident("law keyword")
    if head.text == "static":
        return StaticLaw(p.formula())
    if head.text == "effect":
        pre = p.formula()
        p.expect_op("=>")
        p.expect_op("[")
        action = p.expect_ident("action name").text
        p.expect_op("]")
        post = p.formula()
        return EffectLaw(pre, action, post)
    if head.text == "exec":
        pre = p.formula()
        p.expect_op("=>")
        p.expect_op("<")
        action = p.expect_ident("action name").text
        p.expect_op(">")
        return ExecutabilityLaw(pre, action)
    raise ParseError(
        f"expected 'static', 'effect' or 'exec', got {head.text!r}",
        head.line,
        head.column,
    )


def _finished(p: _LineParser) -> None:
    if not p.at_eol():
        raise p.error(f"unexpected trailing input {p.peek().text!r}")


def parse_formula(text: str, sig: Signature | None = None, line: int = 1) -> Formula:
    p = _LineParser(_tokenize_line(text, line))
    phi = p.formula()
    _finished(p)
    if sig is not None:
        _check_atoms(phi, sig, line)
    return phi


def parse_law(text: str, sig: Signature | None = None, line: int = 1) -> Law:
    p = _LineParser(_tokenize_line(text, line))
    law = _parse_law_tokens(p)
    _finished(p)
    if sig is not None:
        _check_law_names(law, sig, line)
    return law


def _check_atoms(phi: Formula, sig: Signature, line: int) -> None:
    for atom in sorted(formula_atoms(phi)):
        if atom not in sig.atoms:
            raise ParseError(f"undeclared atom {atom!r}", line, 1)


def _check_law_names(law: Law, sig: Signature, line: int) -> None:
    if isinstance(law, StaticLaw):
        _check_atoms(law.formula, sig, line)
        return
    if law.action not in sig.actions:
        raise ParseError(f"undeclared action {law.action!r}", line, 1)
    _check_atoms(law.pre, sig, line)
    if isinstance(law, EffectLaw):
        _check_atoms(law.post, sig, line)


def _ident_list(p: _LineParser, what: str) -> list[str]:
    names = [p.expect_ident(what).text]
    while not p.at_eol():
        if p.peek().kind == "op" and p.peek().text == ",":
            p.next()
        names.append(p.expect_ident(what).text)
    return names


def parse_theory(text: str) -> ActionTheory:
    """Parse the theory file format; duplicate laws are dropped silently."""
    lines = text.splitlines()
    name: str | None = None
    atoms: list[str] | None = None
    actions: list[str] | None = None
    laws: list[Law] = []
    law_lines: list[int] = []
    for line_no, raw in enumerate(lines, start=1):
        tokens = _tokenize_line(raw, line_no)
        p = _LineParser(tokens)
        if p.at_eol():
            continue
        head = p.peek()
        if name is None:
            if head.kind != "ident" or head.text != "theory":
                raise ParseError("expected 'theory NAME'", head.line, head.column)
            p.next()
            name = p.expect_ident("theory name").text
            _finished(p)
            continue
        if head.kind == "ident" and head.text == "atoms":
            p.next()
            if atoms is not None:
                raise ParseError("duplicate atoms declaration", head.line, head.column)
            atoms = _ident_list(p, "atom name")
            continue
        if head.kind == "ident" and head.text == "actions":
            p.next()
            if actions is not None:
                raise ParseError(
                    "duplicate actions declaration", head.line, head.column
                )
            actions = _ident_list(p, "action name")
            continue
        if atoms is None or actions is None:
            raise ParseError(
                "atoms and actions must be declared before laws",
                head.line,
                head.column,
            )
        laws.append(_parse_law_tokens(p))
        law_lines.append(head.line)
        _finished(p)
    if name is None:
        raise ParseError("empty input: expected 'theory NAME'", 1, 1)
    if atoms is None or actions is None:
        raise ParseError("missing atoms/actions declarations", len(lines) or 1, 1)
    sig = Signature(tuple(atoms), tuple(actions))
    for law, line_no in zip(laws, law_lines):
        _check_law_names(law, sig, line_no)
    return ActionTheory.build(
        sig,
        statics=[l for l in laws if isinstance(l, StaticLaw)],
        effects=[l for l in laws if isinstance(l, EffectLaw)],
        execs=[l for l in laws if isinstance(l, ExecutabilityLaw)],
        name=name,
    )


# --- rendering ---------------------------------------------------------------

_PREC_IFF, _PREC_IMPLIES, _PREC_XOR, _PREC_OR, _PREC_AND, _PREC_NOT = range(1, 7)


def render_formula(phi: Formula) -> str:
    return _render(phi, 0)


def _wrap(text: str, prec: int, required: int) -> str:
    return f"({text})" if prec < required else text


def _render(phi: Formula, required: int) -> str:
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bot):
        return "false"
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Not):
        return _wrap("~" + _render(phi.sub, _PREC_NOT + 1), _PREC_NOT, required)
    if isinstance(phi, And):
        body = " & ".join(_render(a, _PREC_AND) for a in phi.args)
        return _wrap(body, _PREC_AND, required)
    if isinstance(phi, Or):
        body = " | ".join(_render(a, _PREC_OR) for a in phi.args)
        return _wrap(body, _PREC_OR, required)
    if isinstance(phi, Implies):
        body = (
            _render(phi.left, _PREC_IMPLIES + 1)
            + " -> "
            + _render(phi.right, _PREC_IMPLIES)
        )
        return _wrap(body, _PREC_IMPLIES, required)
    if isinstance(phi, Iff):
        body = (
            _render(phi.left, _PREC_IFF + 1) + " <-> " + _render(phi.right, _PREC_IFF + 1)
        )
        return _wrap(body, _PREC_IFF, required)
    raise ValueError(f"cannot render modal formula {phi!r} in the law grammar")


def render_law(law: Law) -> str:
    if isinstance(law, StaticLaw):
        return f"static {render_formula(law.formula)}"
    if isinstance(law, EffectLaw):
        return (
            f"effect {render_formula(law.pre)} => "
            f"[{law.action}] {render_formula(law.post)}"
        )
    return f"exec {render_formula(law.pre)} => <{law.action}>"


def render_theory(theory: ActionTheory) -> str:
    lines = [
        f"theory {theory.name}",
        "atoms " + ", ".join(theory.sig.atoms),
        "actions " + ", ".join(theory.sig.actions),
    ]
    lines += [render_law(law) for law in theory.laws()]
    return "\n".join(lines) + "\n"


# --- JSON theory schema ------------------------------------------------------

def theory_to_json(theory: ActionTheory) -> dict:
    return {
        "name": theory.name,
        "atoms": list(theory.sig.atoms),
        "actions": list(theory.sig.actions),
        "static": [render_formula(s.formula) for s in theory.statics],
        "effect": [
            {
                "pre": render_formula(e.pre),
                "action": e.action,
                "post": render_formula(e.post),
            }
            for e in theory.effects
        ],
        "exec": [
            {"pre": render_formula(x.pre), "action": x.action} for x in theory.execs
        ],
    }


def theory_from_json(doc: dict) -> ActionTheory:
    sig = Signature(tuple(doc["atoms"]), tuple(doc["actions"]))
    statics = [StaticLaw(parse_formula(s, sig)) for s in doc.get("static", [])]
    effects = [
        EffectLaw(
            parse_formula(e["pre"], sig), e["action"], parse_formula(e["post"], sig)
        )
        for e in doc.get("effect", [])
    ]
    execs = [
        ExecutabilityLaw(parse_formula(x["pre"], sig), x["action"])
        for x in doc.get("exec", [])
    ]
    for law in effects:
        sig.require_action(law.action)
    for law in execs:
        sig.require_action(law.action)
    return ActionTheory.build(
        sig, statics, effects, execs, name=doc.get("name", "theory")
    )


def theory_json_text(theory: ActionTheory) -> str:
    return json.dumps(theory_to_json(theory), indent=2, sort_keys=True) + "\n"
