import pytest

from iota_nd import Mode, check, derive_hintikka, instantiate_russell_bridge
from iota_nd.calculus import ErrorKind, mode_from_name, rule_available
from iota_nd.proof import (
    Assumption, Inference, RuleApp, TemplateAux, conclusion, open_assumptions,
)
from iota_nd.syntax import (
    All, And, App, Bottom, Const, Eq, Ex, Existence, Imp, Iota, Or, Pred, Var,
    alpha_eq, substitute,
)

x, y, z = Var("x"), Var("y"), Var("z")
c, d = Const("c"), Const("d")
A, B, C = Pred("A", ()), Pred("B", ()), Pred("C", ())
F = Pred("F", (x,))
G = Pred("G", (x,))
IOTA = Iota("x", F, G)


def kinds(errors):
    return [e.kind for e in errors]


def test_mode_table():
    assert rule_available("EqI", Mode.I)
    assert not rule_available("EqI", Mode.INF)
    assert not rule_available("EqI_n", Mode.I)
    assert rule_available("IotaE2", Mode.INF)
    assert not rule_available("IotaE2", Mode.INF_PRIME)
    assert rule_available("IotaE2A", Mode.INF_PRIME)
    assert not rule_available("IotaE2A", Mode.INF)


def test_mode_from_name():
    assert mode_from_name("inf-prime") is Mode.INF_PRIME
    with pytest.raises(ValueError):
        mode_from_name("classical")


def test_and_rules():
    d = Inference(RuleApp("AndI"), (Assumption(A), Assumption(B)), And(A, B))
    assert check(d, Mode.I) == []
    left = Inference(RuleApp("AndE_L"), (d,), A)
    assert check(left, Mode.I) == []
    wrong = Inference(RuleApp("AndE_L"), (d,), B)
    assert kinds(check(wrong, Mode.I)) == [ErrorKind.ConclusionMismatch]


def test_imp_rules_and_vacuous_discharge():
    d = Inference(RuleApp("ImpI", label=1), (Assumption(B),), Imp(A, B))
    assert check(d, Mode.I) == []
    app = Inference(RuleApp("ImpE"), (d, Assumption(A)), B)
    assert check(app, Mode.I) == []


def test_bottom_elim_atomicity():
    ok = Inference(RuleApp("BottomE"), (Assumption(Bottom()),), A)
    assert check(ok, Mode.I) == []
    bad = Inference(RuleApp("BottomE"), (Assumption(Bottom()),), And(A, B))
    assert kinds(check(bad, Mode.I)) == [ErrorKind.NotAtomic]
    loop = Inference(RuleApp("BottomE"), (Assumption(Bottom()),), Bottom())
    assert kinds(check(loop, Mode.I)) == [ErrorKind.NotAtomic]


def test_eqi_modes():
    d = Inference(RuleApp("EqI", witness=c), (), Eq(c, c))
    assert check(d, Mode.I) == []
    assert ErrorKind.RuleUnavailableInMode in kinds(check(d, Mode.INF))
    dn = Inference(RuleApp("EqI_n"), (Assumption(Existence(c)),), Eq(c, c))
    assert check(dn, Mode.INF) == []
    assert ErrorKind.RuleUnavailableInMode in kinds(check(dn, Mode.I))
    bad = Inference(RuleApp("EqI_n"), (Assumption(Existence(c)),), Eq(d, d))
    assert kinds(check(bad, Mode.INF)) == [ErrorKind.ConclusionMismatch]


def test_eqe_template_and_vacuity():
    fc, fd = Pred("F", (c,)), Pred("F", (d,))
    good = Inference(RuleApp("EqE", aux=TemplateAux(F, "x")),
                     (Assumption(Eq(c, d)), Assumption(fc)), fd)
    assert check(good, Mode.I) == []
    missing = Inference(RuleApp("EqE"),
                        (Assumption(Eq(c, d)), Assumption(fc)), fd)
    assert ErrorKind.WrongPremiseShape in kinds(check(missing, Mode.I))
    vac_var = Inference(RuleApp("EqE", aux=TemplateAux(A, "x")),
                        (Assumption(Eq(c, d)), Assumption(A)), A)
    assert ErrorKind.WrongPremiseShape in kinds(check(vac_var, Mode.I))
    vac_terms = Inference(RuleApp("EqE", aux=TemplateAux(F, "x")),
                          (Assumption(Eq(c, c)), Assumption(fc)), fc)
    assert ErrorKind.WrongPremiseShape in kinds(check(vac_terms, Mode.I))
    nonatomic = Inference(RuleApp("EqE", aux=TemplateAux(And(F, G), "x")),
                          (Assumption(Eq(c, d)), Assumption(And(fc, Pred("G", (c,))))),
                          And(fd, Pred("G", (d,))))
    assert ErrorKind.NotAtomic in kinds(check(nonatomic, Mode.I))


def test_strictness_rules():
    ad = Inference(RuleApp("AD", aux=2), (Assumption(Pred("R", (c, d))),),
                   Existence(d))
    assert check(ad, Mode.INF) == []
    assert ErrorKind.RuleUnavailableInMode in kinds(check(ad, Mode.I))
    ad_eq = Inference(RuleApp("AD", aux=1), (Assumption(Eq(c, d)),), Existence(c))
    assert check(ad_eq, Mode.INF) == []
    ad_bad = Inference(RuleApp("AD", aux=3), (Assumption(Pred("R", (c, d))),),
                       Existence(d))
    assert kinds(check(ad_bad, Mode.INF)) == [ErrorKind.WrongPremiseShape]
    fd = Inference(RuleApp("FD", aux=1), (Assumption(Existence(App("f", (c,)))),),
                   Existence(c))
    assert check(fd, Mode.INF) == []
    fd_bad = Inference(RuleApp("FD", aux=1), (Assumption(Existence(c)),),
                       Existence(c))
    assert ErrorKind.WrongPremiseShape in kinds(check(fd_bad, Mode.INF))


def test_all_intro_eigen_conditions():
    fy = substitute(F, "x", y)
    inst = Inference(RuleApp("AllE", witness=y),
                     (Assumption(All("z", Pred("F", (z,)))),), fy)
    good = Inference(RuleApp("AllI", eigen="y"), (inst,), All("x", F))
    assert check(good, Mode.I) == []
    # eigenvariable free in an open assumption, here the instance itself
    leak = Inference(RuleApp("AllI", eigen="y"), (Assumption(fy),), All("x", F))
    assert ErrorKind.EigenviolationInAssumptions in kinds(check(leak, Mode.I))
    # eigenvariable free in the quantified formula
    infree = Inference(RuleApp("AllI", eigen="y"),
                       (Inference(RuleApp("BottomE"), (Assumption(Bottom()),),
                                  Pred("R", (y, y))),),
                       All("x", Pred("R", (x, y))))
    assert ErrorKind.EigenviolationInConclusion in kinds(check(infree, Mode.I))
    # free-logic form discharges the existence assumption
    free = Inference(RuleApp("AllI", eigen="y", label=1),
                     (Inference(RuleApp("BottomE"), (Assumption(Bottom()),), fy),),
                     All("x", F))
    assert check(free, Mode.INF) == []
    nolabel = Inference(RuleApp("AllI", eigen="y"),
                        (Inference(RuleApp("BottomE"), (Assumption(Bottom()),), fy),),
                        All("x", F))
    assert ErrorKind.LabelMisuse in kinds(check(nolabel, Mode.INF))
    assert ErrorKind.LabelMisuse in kinds(check(free, Mode.I))


def test_quantifier_existence_premises():
    fc = substitute(F, "x", c)
    exi_i = Inference(RuleApp("ExI", witness=c), (Assumption(fc),), Ex("x", F))
    assert check(exi_i, Mode.I) == []
    assert ErrorKind.WrongPremiseShape in kinds(check(exi_i, Mode.INF))
    exi_inf = Inference(RuleApp("ExI", witness=c),
                        (Assumption(fc), Assumption(Existence(c))), Ex("x", F))
    assert check(exi_inf, Mode.INF) == []
    alle = Inference(RuleApp("AllE", witness=c),
                     (Assumption(All("x", F)), Assumption(Existence(c))), fc)
    assert check(alle, Mode.INF) == []
    assert ErrorKind.WrongPremiseShape in kinds(check(alle, Mode.I))


def test_exe_discharges_existence_in_free_modes():
    fy = substitute(F, "x", y)
    minor_i = Inference(RuleApp("ExI", witness=y), (Assumption(fy, 1),), Ex("x", F))
    d_i = Inference(RuleApp("ExE", eigen="y", label=1),
                    (Assumption(Ex("x", F)), minor_i), Ex("x", F))
    assert check(d_i, Mode.I) == []
    minor_inf = Inference(RuleApp("ExI", witness=y),
                          (Assumption(fy, 1), Assumption(Existence(y), 1)),
                          Ex("x", F))
    d_inf = Inference(RuleApp("ExE", eigen="y", label=1),
                      (Assumption(Ex("x", F)), minor_inf), Ex("x", F))
    assert check(d_inf, Mode.INF) == []
    # the i-mode tree must not check in inf: undischargeable existence leaf
    assert check(d_inf, Mode.I) != []
    assert check(d_i, Mode.INF) != []


def test_exe_eigen_in_conclusion():
    fy = substitute(F, "x", y)
    d = Inference(RuleApp("ExE", eigen="y", label=1),
                  (Assumption(Ex("x", F)), Assumption(fy, 1)), fy)
    assert ErrorKind.EigenviolationInConclusion in kinds(check(d, Mode.I))


def test_iota_rules_mode_shapes(corpus_dir):
    for mode in (Mode.I, Mode.INF):
        for direction in (1, 2):
            dd = instantiate_russell_bridge(direction, F, G, "x", mode)
            assert check(dd, mode) == []
            other = Mode.INF if mode is Mode.I else Mode.I
            assert any(k == ErrorKind.WrongPremiseShape
                       for k in kinds(check(dd, other)))


def test_iotae2a():
    fc, fd = substitute(F, "x", c), substitute(F, "x", d)
    Hc, Hd = Pred("H", (c,)), Pred("H", (d,))
    node = Inference(
        RuleApp("IotaE2A", aux=TemplateAux(Pred("H", (Var("w"),)), "w")),
        (Assumption(IOTA), Assumption(Existence(c)), Assumption(Existence(d)),
         Assumption(fc), Assumption(fd), Assumption(Hc)),
        Hd)
    assert check(node, Mode.INF_PRIME) == []
    assert ErrorKind.RuleUnavailableInMode in kinds(check(node, Mode.INF))
    bad = Inference(
        RuleApp("IotaE2A", aux=TemplateAux(And(Pred("H", (Var("w"),)), A), "w")),
        (Assumption(IOTA), Assumption(Existence(c)), Assumption(Existence(d)),
         Assumption(fc), Assumption(fd), Assumption(And(Hc, A))),
        And(Hd, A))
    assert ErrorKind.NotAtomic in kinds(check(bad, Mode.INF_PRIME))


def test_iotai_eigen_conditions():
    # with restrictor x = c the discharged instance is the uniqueness premise
    iota = Iota("x", Eq(x, c), G)
    gc = substitute(G, "x", c)
    good = Inference(RuleApp("IotaI", witness=c, eigen="z", label=1),
                     (Assumption(Eq(c, c)), Assumption(gc),
                      Assumption(Eq(z, c), 1)), iota)
    assert check(good, Mode.I) == []
    clash = Inference(RuleApp("IotaI", witness=c, eigen="x", label=1),
                      (Assumption(Eq(c, c)), Assumption(gc),
                       Assumption(Eq(x, c), 1)), iota)
    assert ErrorKind.EigenviolationInConclusion in kinds(check(clash, Mode.I))
    iota_z = Iota("x", Eq(x, z), G)
    inwitness = Inference(RuleApp("IotaI", witness=z, eigen="z", label=1),
                          (Assumption(Eq(z, z)), Assumption(substitute(G, "x", z)),
                           Assumption(Eq(z, z), 1)), iota_z)
    assert ErrorKind.EigenviolationInConclusion in kinds(check(inwitness, Mode.I))


def test_label_uniqueness_and_scope():
    inner = Inference(RuleApp("ImpI", label=1), (Assumption(B),), Imp(A, B))
    outer = Inference(RuleApp("ImpI", label=1), (inner,), Imp(C, Imp(A, B)))
    errs = check(outer, Mode.I)
    assert ErrorKind.LabelMisuse in kinds(errs)
    stray = Inference(RuleApp("AndI"), (Assumption(A, 1), Assumption(B)),
                      And(A, B))
    assert kinds(check(stray, Mode.I)) == [ErrorKind.LabelMisuse]


def test_error_order_leftmost_innermost():
    bad1 = Inference(RuleApp("AndE_L"), (Assumption(A),), A)
    bad2 = Inference(RuleApp("AndE_R"), (Assumption(B),), B)
    d = Inference(RuleApp("AndI"), (bad1, bad2), And(A, C))
    errs = check(d, Mode.I)
    assert [e.path for e in errs] == [(0,), (1,), ()]


def test_check_never_raises_on_garbage():
    d = Inference(RuleApp("OrE", label=1), (Assumption(A),), C)
    assert check(d, Mode.I)


def test_hintikka_both_directions():
    for t in (c, App("f", (c,))):
        ltr = derive_hintikka("ltr", t)
        rtl = derive_hintikka("rtl", t)
        assert check(ltr, Mode.INF) == []
        assert check(rtl, Mode.INF) == []
        assert isinstance(conclusion(ltr), Ex)
        assert conclusion(rtl) == Existence(t)
        assert set(open_assumptions(ltr)) == {Existence(t)}
        assert set(open_assumptions(rtl)) == {conclusion(ltr)}


def test_no_maximal_identities_in_plain_and_free_corpus(corpus_dir):
    # the vacuity conditions on Leibniz's law keep identities from ever
    # being maximal outside the template system
    from iota_nd.normalizer import find_maximal
    from iota_nd.parser import parse_proof
    for path in sorted(corpus_dir.glob("*.ndp")):
        script = parse_proof(path.read_text(encoding="utf-8"))
        if script.mode == "inf-prime":
            continue
        for name, dd in script.deductions.items():
            for seg in find_maximal(dd):
                assert not isinstance(seg.formula, Eq), (path.name, name)
