import pytest

from iota_nd import Mode, check, instantiate_russell_bridge
from iota_nd.proof import (
    Assumption, EigenClash, FreshState, Inference, RuleApp, congruent,
    duplicate_fresh, freshen, open_assumptions, subst_deduction, support,
)
from iota_nd.syntax import (
    And, Bottom, Const, Eq, Ex, Existence, Imp, Pred, Var, alpha_eq,
    substitute,
)

x, y, c = Var("x"), Var("y"), Const("c")
Fx = Pred("F", (x,))
A, B = Pred("A", ()), Pred("B", ())


def imp_intro(antecedent, body, label):
    return Inference(RuleApp("ImpI", label=label), (body,),
                     Imp(antecedent, body.formula if isinstance(body, Assumption)
                         else body.conclusion))


def test_open_assumptions_plain():
    assert open_assumptions(Assumption(A)) == {A: 1}


def test_open_assumptions_discharged():
    d = imp_intro(A, Assumption(B), 1)
    assert open_assumptions(d) == {B: 1}
    d2 = Inference(RuleApp("ImpI", label=1), (Assumption(A, 1),), Imp(A, A))
    assert open_assumptions(d2) == {}


def test_open_assumptions_multiset():
    d = Inference(RuleApp("AndI"), (Assumption(A), Assumption(A)), And(A, A))
    assert open_assumptions(d)[A] == 2


def test_russell_bridge_support():
    F = Pred("F", (x,))
    G = Pred("G", (x,))
    d = instantiate_russell_bridge(1, F, G, "x", Mode.INF)
    opens = open_assumptions(d)
    from iota_nd.syntax import Iota
    assert support(opens) == support({Iota("x", F, G): 1})
    assert sum(opens.values()) == 2


def test_subst_deduction_leaf():
    assert subst_deduction(Assumption(Fx), "x", c) == Assumption(Pred("F", (c,)))


def test_subst_deduction_identity():
    d = Assumption(Fx)
    assert subst_deduction(d, "x", x) == d


def test_subst_deduction_eigen_clash():
    inner = Inference(RuleApp("AllI", eigen="x"), (Assumption(Fx),),
                      __import__("iota_nd").All("x", Fx))
    with pytest.raises(EigenClash):
        subst_deduction(inner, "x", c)


def test_subst_deduction_shape_and_assumptions():
    d = imp_intro(Fx, Assumption(Pred("G", (x,))), 1)
    out = subst_deduction(d, "x", c)
    assert isinstance(out, Inference) and out.rule.rule == "ImpI"
    assert open_assumptions(out) == {
        substitute(Pred("G", (x,)), "x", c): 1}


def exe(eigen, label, major_formula, minor):
    return Inference(RuleApp("ExE", eigen=eigen, label=label),
                     (Assumption(major_formula), minor), minor_conclusion(minor))


def minor_conclusion(d):
    return d.formula if isinstance(d, Assumption) else d.conclusion


def test_freshen_shared_eigenvariables():
    ex = Ex("x", Fx)
    inner = exe("y", 2, ex, Assumption(A))
    outer = exe("y", 1, ex, inner)
    out = freshen(outer)
    eigens = sorted(n.rule.eigen for _, n in
                    __import__("iota_nd").proof.iter_nodes(out)
                    if isinstance(n, Inference))
    assert eigens == ["y", "y1"]
    assert alpha_eq(minor_conclusion(out), A)


def test_freshen_idempotent():
    ex = Ex("x", Fx)
    outer = exe("y", 1, ex, exe("y", 2, ex, Assumption(A)))
    once = freshen(outer)
    assert freshen(once) == once


def test_freshen_preserves_check():
    F = Pred("F", (x,))
    G = Pred("G", (x,))
    for mode in (Mode.I, Mode.INF):
        d = instantiate_russell_bridge(1, F, G, "x", mode)
        out = freshen(d)
        assert check(out, mode) == []
        assert alpha_eq(minor_conclusion(out), minor_conclusion(d))
        assert support(open_assumptions(out)) == support(open_assumptions(d))


def test_duplicate_fresh_relabels():
    d = imp_intro(A, Assumption(A, 1), 1)
    state = FreshState.for_deductions(d)
    copy = duplicate_fresh(d, state)
    assert copy.rule.label == 2
    assert copy.premises[0].label == 2
    assert congruent(d, copy)


def test_congruent_distinguishes():
    d1 = imp_intro(A, Assumption(A, 1), 1)
    d2 = imp_intro(A, Assumption(A, 7), 7)
    assert congruent(d1, d2)
    d3 = imp_intro(B, Assumption(A, 1), 1)
    assert not congruent(d1, d3)
    assert not congruent(d1, Assumption(Imp(A, A)))
