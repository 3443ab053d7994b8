import pytest
from hypothesis import given

from iota_nd.syntax import (
    All, And, App, Bottom, Const, Eq, Ex, Existence, Imp, Iota, Pred, Var,
    alpha_eq, canon, degree, free_vars, fresh_name, is_free_for, substitute,
)
from strategies import formulas, terms, variables

x, y, c = Var("x"), Var("y"), Const("c")
Fx = Pred("F", (x,))
Fy = Pred("F", (y,))
Rxy = Pred("R", (x, y))


def test_free_vars_quantifier_binds():
    assert free_vars(All("x", Fx)) == frozenset()


def test_free_vars_iota_binds_both_scopes():
    assert free_vars(Iota("x", Rxy, Pred("G", (x,)))) == {"y"}


def test_free_vars_constants_are_not_variables():
    assert free_vars(App("f", (x, c))) == {"x"}


def test_is_free_for_capture():
    body = Ex("y", Rxy)
    assert not is_free_for(y, "x", body)
    assert is_free_for(c, "x", body)
    assert not is_free_for(y, "x", Iota("y", Fx, Pred("G", ())))


def test_substitute_simple():
    assert substitute(Fx, "x", c) == Pred("F", (c,))


def test_substitute_no_free_occurrence():
    f = All("x", Fx)
    assert substitute(f, "x", c) == f


def test_substitute_renames_on_capture():
    out = substitute(Ex("y", Rxy), "x", y)
    assert isinstance(out, Ex)
    assert out.var == "y1"
    assert out.body == Pred("R", (y, Var("y1")))


def test_degree():
    assert degree(Bottom()) == 1
    assert degree(Existence(c)) == 0
    assert degree(Iota("x", Fx, Pred("G", (x,)))) == 1
    assert degree(Imp(And(Fx, Fx), Bottom())) == 3


def test_alpha_eq():
    assert alpha_eq(All("x", Fx), All("y", Fy))
    assert alpha_eq(Iota("x", Fx, Pred("G", (x,))),
                    Iota("y", Fy, Pred("G", (y,))))
    assert not alpha_eq(Fx, Fy)
    assert not alpha_eq(All("x", Fx), Ex("x", Fx))


def test_fresh_name_takes_least_suffix():
    assert fresh_name("y", {"y", "y1", "y3"}) == "y2"


@given(formulas(), variables, terms())
def test_canon_tracks_alpha(a, v, t):
    b = substitute(a, v.name, t)
    assert (canon(a) == canon(b)) == alpha_eq(a, b)


@given(formulas())
def test_canon_idempotent_on_closed(a):
    assert alpha_eq(a, a)
    assert canon(canon(a)) == canon(a)


def test_app_requires_argument():
    with pytest.raises(ValueError):
        App("f", ())
