import pytest

from iota_nd.parser import (
    ParseError, ResolveError, formula_text, parse_formula, parse_proof,
    script_text, serialize,
)
from iota_nd.proof import Assumption, Inference, TemplateAux
from iota_nd.syntax import (
    All, And, App, Bottom, Eq, Ex, Existence, Imp, Iota, Or, Pred, Var,
)


def test_parse_iota():
    f = parse_formula("the x [F(x), G(x)]")
    assert f == Iota("x", Pred("F", (Var("x"),)), Pred("G", (Var("x"),)))


def test_parse_existence_of_function_value():
    f = parse_formula("E! f(c)")
    assert f == Existence(App("f", (Var("c"),)))


def test_parse_quantified_implication():
    f = parse_formula("all y. (F(y) -> y = x)")
    assert f == All("y", Imp(Pred("F", (Var("y"),)),
                             Eq(Var("y"), Var("x"))))


def test_quantifier_scope_maximal():
    assert parse_formula("all x. F(x) -> P") == \
        All("x", Imp(Pred("F", (Var("x"),)), Pred("P", ())))


def test_precedence_and_associativity():
    assert parse_formula("A & B | C -> D") == \
        Imp(Or(And(Pred("A", ()), Pred("B", ())), Pred("C", ())), Pred("D", ()))
    assert parse_formula("A -> B -> C") == \
        Imp(Pred("A", ()), Imp(Pred("B", ()), Pred("C", ())))
    assert parse_formula("A & B & C") == \
        And(And(Pred("A", ()), Pred("B", ())), Pred("C", ()))


def test_negation_expands():
    assert parse_formula("~A") == Imp(Pred("A", ()), Bottom())
    assert formula_text(parse_formula("~A")) == "A -> _|_"


def test_unicode_aliases():
    assert parse_formula("∀x. F(x) ∧ ⊥") == parse_formula("all x. F(x) & _|_")
    assert parse_formula("ιx[F(x), G(x)]") == parse_formula("the x [F(x), G(x)]")
    assert parse_formula("∃!c") == parse_formula("E! c")


def test_canonical_spacing():
    assert formula_text(parse_formula("A&B")) == "A & B"


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_formula("all x F(x)")
    assert e.value.line == 1


def test_parse_simple_rule():
    script = parse_proof(
        "(deduction t (rule AndI (assume A) (assume B) => A & B))")
    d = script.deductions["t"]
    assert isinstance(d, Inference)
    assert d.rule.rule == "AndI"
    assert len(d.premises) == 2
    assert d.conclusion == And(Pred("A", ()), Pred("B", ()))


def test_parse_check_separation():
    # EqI with a witness parses even where the checker will reject it
    script = parse_proof("(mode inf)\n(constant c)\n"
                         "(deduction t (rule EqI :witness c => c = c))")
    d = script.deductions["t"]
    assert d.rule.rule == "EqI"
    assert d.rule.witness is not None


def test_parse_aux_forms():
    script = parse_proof(
        "(deduction t (rule EqE :aux [F(y), y]\n"
        "  (assume c = d) (assume F(c)) => F(d)))\n"
        "(constant c) (constant d)")
    aux = script.deductions["t"].rule.aux
    assert isinstance(aux, TemplateAux) and aux.var == "y"
    script2 = parse_proof("(deduction t (rule AD :aux 2 (assume c = d) => E! d))"
                          "(constant c)(constant d)")
    assert script2.deductions["t"].rule.aux == 2


def test_unknown_rule_rejected():
    with pytest.raises(ParseError):
        parse_proof("(deduction t (rule Frobnicate (assume A) => A))")


def test_constants_resolve_terms():
    script = parse_proof("(constant c)\n(deduction t (assume F(c)))")
    from iota_nd.syntax import Const
    assert script.deductions["t"].formula == Pred("F", (Const("c"),))


def test_arity_mismatch_rejected():
    with pytest.raises(ResolveError):
        parse_proof("(deduction t (rule AndI (assume F(c)) (assume F(c, d)) "
                    "=> F(c) & F(c, d)))")


def test_name_class_clash_rejected():
    with pytest.raises(ResolveError):
        parse_proof("(predicate f 1)\n(deduction t (assume E! f(c)))")


def test_positions_recorded():
    text = "(deduction t\n  (rule AndI\n    (assume A)\n    (assume B)\n    => A & B))"
    script = parse_proof(text)
    assert script.positions[("t", ())][0] == 2
    assert script.positions[("t", (0,))][0] == 3
    assert script.positions[("t", (1,))][0] == 4


def test_roundtrip_structural(corpus_dir):
    for path in sorted(corpus_dir.glob("*.ndp")):
        text = path.read_text(encoding="utf-8")
        script = parse_proof(text)
        assert script_text(script) == text
        again = parse_proof(script_text(script))
        assert again.deductions == script.deductions
        assert again.mode == script.mode


def test_serializer_idempotent_after_one_pass():
    messy = "(mode i)(deduction t (assume ((A)) ))"
    once = script_text(parse_proof(messy))
    assert script_text(parse_proof(once)) == once


def test_serialize_dispatch():
    f = parse_formula("A & B")
    assert serialize(f) == "A & B"
    assert serialize(Assumption(f)) == "(assume A & B)"
    assert serialize(Var("x")) == "x"
