import pytest

from atc.formula import Atom, Bot, Implies, Not
from atc.laws import (
    EffectLaw,
    ExecutabilityLaw,
    StaticLaw,
    executability_warning,
)
from atc.parsing import (
    ParseError,
    parse_formula,
    parse_law,
    parse_theory,
    render_law,
    render_theory,
    theory_from_json,
    theory_to_json,
)
from tests.conftest import COFFEE, COFFEE_BROKEN, COFFEE_INITIAL


def test_parse_coffee_partition(coffee):
    assert coffee.name == "coffee"
    assert coffee.sig.atoms == ("token", "coffee", "hot")
    assert coffee.sig.actions == ("buy",)
    assert len(coffee.statics) == 1
    assert len(coffee.effects) == 5
    assert len(coffee.execs) == 1
    assert coffee.card() == 7


def test_inexecutability_parses_as_effect_law():
    law = parse_law("effect ~token => [buy] false")
    assert isinstance(law, EffectLaw)
    assert law.post == Bot()
    assert law.is_inexecutability
    assert law == EffectLaw(Not(Atom("token")), "buy", Bot())


def test_undeclared_atom_is_an_error():
    text = COFFEE.replace(
        "static coffee -> hot", "static coffee -> frappe"
    )
    with pytest.raises(ParseError) as err:
        parse_theory(text)
    assert "frappe" in str(err.value)


def test_undeclared_action_is_an_error():
    with pytest.raises(ParseError):
        parse_theory(
            "theory t\natoms p\nactions a\nexec p => <b>\n"
        )


def test_error_carries_line_and_column():
    with pytest.raises(ParseError) as err:
        parse_theory("theory t\natoms p\nactions a\nstatic p & & q\n")
    assert err.value.line == 4
    assert err.value.column > 0


def test_laws_must_follow_declarations():
    with pytest.raises(ParseError):
        parse_theory("theory t\nstatic p\natoms p\nactions a\n")


def test_duplicate_laws_are_dropped():
    t = parse_theory("theory t\natoms p\nactions a\nstatic p\nstatic p\n")
    assert len(t.statics) == 1


def test_exec_warning_when_no_effect_laws():
    t = parse_theory("theory t\natoms p\nactions a\nexec p => <a>\n")
    assert "a" in executability_warning(t)
    t2 = parse_theory(
        "theory t\natoms p\nactions a\neffect p => [a] p\nexec p => <a>\n"
    )
    assert executability_warning(t2) is None


def test_render_parse_roundtrip():
    for text in (COFFEE, COFFEE_BROKEN, COFFEE_INITIAL):
        t = parse_theory(text)
        rendered = render_theory(t)
        again = parse_theory(rendered)
        assert again == t.with_name(again.name)
        # idempotence: parse . render . parse is a fixpoint
        assert render_theory(again) == rendered


def test_render_law_forms():
    assert render_law(StaticLaw(Implies(Atom("coffee"), Atom("hot")))) == (
        "static coffee -> hot"
    )
    assert render_law(ExecutabilityLaw(Atom("token"), "buy")) == (
        "exec token => <buy>"
    )
    assert (
        render_law(EffectLaw(Not(Atom("token")), "buy", Bot()))
        == "effect ~token => [buy] false"
    )


def test_formula_precedence():
    phi = parse_formula("~a & b | c ^ d -> e <-> f")
    # tightest first: ~, &, |, ^, ->, <->
    from atc.formula import And, Iff, Implies, Not, Or

    assert isinstance(phi, Iff)
    assert isinstance(phi.left, Implies)
    rendered_roundtrip = parse_formula(
        "(((~a & b | c) ^ d) -> e) <-> f"
    )
    assert phi == rendered_roundtrip


def test_implies_right_associative():
    assert parse_formula("a -> b -> c") == parse_formula("a -> (b -> c)")


def test_empty_theory_renders_declarations_only():
    t = parse_theory("theory empty\natoms p, q\nactions a\n")
    assert render_theory(t) == "theory empty\natoms p, q\nactions a\n"


def test_laws_for_action(coffee):
    effects, execs = coffee.laws_for_action("buy")
    assert len(effects) == 5 and len(execs) == 1
    with pytest.raises(Exception):
        coffee.laws_for_action("drink")


def test_two_action_theories_overlap_only_on_statics():
    t = parse_theory(
        "theory two\natoms p, q\nactions a, b\n"
        "static p -> q\n"
        "effect p => [a] q\nexec p => <a>\n"
        "effect q => [b] p\nexec q => <b>\n"
    )
    ea, xa = t.laws_for_action("a")
    eb, xb = t.laws_for_action("b")
    assert not (set(ea) & set(eb)) and not (set(xa) & set(xb))
    assert t.statics == t.statics  # shared statics


def test_json_roundtrip(coffee):
    doc = theory_to_json(coffee)
    assert set(doc) == {"name", "atoms", "actions", "static", "effect", "exec"}
    again = theory_from_json(doc)
    assert again == coffee


def test_shipped_theory_files_roundtrip():
    from pathlib import Path

    for path in sorted(Path(__file__).resolve().parent.parent.glob("theories/*.atc")):
        text = path.read_text()
        t = parse_theory(text)
        assert parse_theory(render_theory(t)) == t
