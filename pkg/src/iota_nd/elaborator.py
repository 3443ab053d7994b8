"""Expansion of derived rule uses into kernel rules.

Two general rules are admissible but not primitive: ex falso with an
arbitrary conclusion (the kernel restricts BottomE to atomic conclusions)
and Leibniz's law with an arbitrary template (the kernel restricts EqE to
atomic templates).  The quantifier and description cases work by
introducing the connective from expanded instances; the remaining
connective cases follow the standard Prawitz-style induction.

Also here: the two translations between the system with IotaE2 and the one
with IotaE2A, which are interderivable through the identity rules.
"""

from __future__ import annotations

from .calculus import Mode
from .proof import (
    Assumption, Deduction, FreshState, Inference, RuleApp, TemplateAux,
    conclusion, duplicate_fresh, iter_nodes,
)
from .syntax import (
    All, And, Bottom, Eq, Ex, Existence, Formula, Imp, Iota, Or, Term, Var,
    alpha_eq, free_vars, is_atomic, is_free_for, substitute, term_vars,
    var_names,
)


class ElaborationError(Exception):
    pass


class ModeMismatch(ElaborationError):
    pass


class NotFreeFor(ElaborationError):
    pass


def _imp(rule, premises, concl):
    return Inference(rule, tuple(premises), concl)


class _Copies:
    """Hands out a deduction repeatedly: the original once, fresh copies after."""

    def __init__(self, d: Deduction, state: FreshState):
        self.d = d
        self.state = state
        self.used = False

    def get(self) -> Deduction:
        if not self.used:
            self.used = True
            return self.d
        return duplicate_fresh(self.d, self.state)


# ---------------------------------------------------------------------------
# general ex falso

def expand_general_efq(goal: Formula, bot_proof: Deduction, mode: Mode,
                       state: FreshState | None = None) -> Deduction:
    """A deduction of goal from a proof of _|_ using only atomic BottomE."""
    if not isinstance(conclusion(bot_proof), Bottom):
        raise ModeMismatch("the absurdity proof must conclude _|_")
    if state is None:
        state = FreshState.for_deductions(bot_proof)
    state.used_names |= var_names(goal)
    bots = _Copies(bot_proof, state)
    free = mode.free

    def rec(g: Formula) -> Deduction:
        if is_atomic(g):
            return _imp(RuleApp("BottomE"), [bots.get()], g)
        if isinstance(g, Bottom):
            return bots.get()
        if isinstance(g, And):
            return _imp(RuleApp("AndI"), [rec(g.left), rec(g.right)], g)
        if isinstance(g, Or):
            return _imp(RuleApp("OrI_L"), [rec(g.left)], g)
        if isinstance(g, Imp):
            return _imp(RuleApp("ImpI", label=state.label()), [rec(g.right)], g)
        if isinstance(g, All):
            y = state.name(g.var)
            inst = rec(substitute(g.body, g.var, Var(y)))
            label = state.label() if free else None
            return _imp(RuleApp("AllI", eigen=y, label=label), [inst], g)
        if isinstance(g, Ex):
            t = Var(g.var)
            premises = [rec(substitute(g.body, g.var, t))]
            if free:
                premises.append(rec(Existence(t)))
            return _imp(RuleApp("ExI", witness=t), premises, g)
        if isinstance(g, Iota):
            t = Var(g.var)
            z = state.name("z")
            premises = [rec(substitute(g.restr, g.var, t)),
                        rec(substitute(g.scope, g.var, t))]
            if free:
                premises.append(rec(Existence(t)))
            premises.append(rec(Eq(Var(z), t)))
            return _imp(RuleApp("IotaI", witness=t, eigen=z, label=state.label()),
                        premises, g)
        raise TypeError(f"not a formula: {g!r}")

    return rec(goal)


# ---------------------------------------------------------------------------
# general Leibniz's law

def expand_general_eqE(eq_proof: Deduction, a: Formula, x: str,
                       body_proof: Deduction, mode: Mode,
                       state: FreshState | None = None) -> Deduction:
    """From proofs of t1 = t2 and a[t1/x], a deduction of a[t2/x] whose
    Leibniz steps are all atomic."""
    ident = conclusion(eq_proof)
    if not isinstance(ident, Eq):
        raise ModeMismatch("the identity proof must conclude an identity")
    t1, t2 = ident.lhs, ident.rhs
    if not is_free_for(t1, x, a):
        raise NotFreeFor("first term is not free for the template variable")
    if not is_free_for(t2, x, a):
        raise NotFreeFor("second term is not free for the template variable")
    if not alpha_eq(conclusion(body_proof), substitute(a, x, t1)):
        raise ModeMismatch("the body proof must conclude the first instance")
    if state is None:
        state = FreshState.for_deductions(eq_proof, body_proof)
    state.used_names |= var_names(a) | {x} | term_vars(t1) | term_vars(t2)
    free = mode.free
    eqs = _Copies(eq_proof, state)

    def forward() -> Deduction:
        return eqs.get()

    def backward() -> Deduction:
        # t2 = t1: symmetry needs a reflexivity t1 = t1, which the free
        # modes obtain from E!t1 via atomic denotation on the identity
        w = state.name("w")
        if free:
            ex = _imp(RuleApp("AD", aux=1), [eqs.get()], Existence(t1))
            refl = _imp(RuleApp("EqI_n"), [ex], Eq(t1, t1))
        else:
            refl = _imp(RuleApp("EqI"), [], Eq(t1, t1))
        return _imp(RuleApp("EqE", aux=TemplateAux(Eq(Var(w), t1), w)),
                    [eqs.get(), refl], Eq(t2, t1))

    def rec(g: Formula, body: Deduction, src: Term, dst: Term,
            major) -> Deduction:
        """body proves g[src/x]; returns a proof of g[dst/x]."""
        if x not in free_vars(g) or src == dst:
            return body
        if is_atomic(g):
            return _imp(RuleApp("EqE", aux=TemplateAux(g, x)),
                        [major(), body], substitute(g, x, dst))
        if isinstance(g, And):
            left = rec(g.left, _imp(RuleApp("AndE_L"), [body],
                                    substitute(g.left, x, src)), src, dst, major)
            body2 = duplicate_fresh(body, state)
            right = rec(g.right, _imp(RuleApp("AndE_R"), [body2],
                                      substitute(g.right, x, src)), src, dst, major)
            return _imp(RuleApp("AndI"), [left, right], substitute(g, x, dst))
        if isinstance(g, Or):
            label = state.label()
            goal = substitute(g, x, dst)
            left = _imp(RuleApp("OrI_L"),
                        [rec(g.left, Assumption(substitute(g.left, x, src), label),
                             src, dst, major)], goal)
            right = _imp(RuleApp("OrI_R"),
                         [rec(g.right, Assumption(substitute(g.right, x, src), label),
                              src, dst, major)], goal)
            return _imp(RuleApp("OrE", label=label), [body, left, right], goal)
        if isinstance(g, Imp):
            label = state.label()
            other = backward if major is forward else forward
            ante = rec(g.left, Assumption(substitute(g.left, x, dst), label),
                       dst, src, other)
            conseq = _imp(RuleApp("ImpE"), [body, ante],
                          substitute(g.right, x, src))
            return _imp(RuleApp("ImpI", label=label),
                        [rec(g.right, conseq, src, dst, major)],
                        substitute(g, x, dst))
        if isinstance(g, (All, Ex)):
            v, inner = g.var, g.body
            if v in term_vars(src) | term_vars(dst):
                v2 = state.name(v)
                inner = substitute(inner, v, Var(v2))
                v = v2
            y = state.name(v)
            label = state.label()
            inner_y = substitute(inner, v, Var(y))
            goal = type(g)(v, substitute(inner, x, dst))
            if isinstance(g, All):
                if free:
                    elim = _imp(RuleApp("AllE", witness=Var(y)),
                                [body, Assumption(Existence(Var(y)), label)],
                                substitute(inner_y, x, src))
                else:
                    elim = _imp(RuleApp("AllE", witness=Var(y)), [body],
                                substitute(inner_y, x, src))
                inst = rec(inner_y, elim, src, dst, major)
                return _imp(RuleApp("AllI", eigen=y,
                                    label=label if free else None), [inst], goal)
            inst = rec(inner_y, Assumption(substitute(inner_y, x, src), label),
                       src, dst, major)
            if free:
                intro = _imp(RuleApp("ExI", witness=Var(y)),
                             [inst, Assumption(Existence(Var(y)), label)], goal)
            else:
                intro = _imp(RuleApp("ExI", witness=Var(y)), [inst], goal)
            return _imp(RuleApp("ExE", eigen=y, label=label), [body, intro], goal)
        if isinstance(g, Iota):
            return rec_iota(g, body, src, dst, major)
        if isinstance(g, Bottom):
            return body
        raise TypeError(f"not a formula: {g!r}")

    def rec_iota(g: Iota, body: Deduction, src: Term, dst: Term,
                 major) -> Deduction:
        v, restr, scope = g.var, g.restr, g.scope
        if v in term_vars(src) | term_vars(dst):
            v2 = state.name(v)
            restr = substitute(restr, v, Var(v2))
            scope = substitute(scope, v, Var(v2))
            v = v2
        z = state.name(v)
        u = state.name(v)
        outer = state.label()
        inner = state.label()
        restr_src = substitute(restr, x, src)
        restr_dst = substitute(restr, x, dst)
        goal = Iota(v, restr_dst, substitute(scope, x, dst))
        p_restr = rec(substitute(restr, v, Var(z)),
                      Assumption(substitute(restr_src, v, Var(z)), outer),
                      src, dst, major)
        p_scope = rec(substitute(scope, v, Var(z)),
                      Assumption(substitute(substitute(scope, x, src), v, Var(z)),
                                 outer),
                      src, dst, major)
        body2 = duplicate_fresh(body, state)
        # the introduction discharges instances of its conclusion's
        # restrictor, but the inner elimination consumes instances of the
        # major's restrictor: rewrite back across the identity
        other = backward if major is forward else forward
        f_u = rec(substitute(restr, v, Var(u)),
                  Assumption(substitute(restr_dst, v, Var(u)), inner),
                  dst, src, other)
        f_z = Assumption(substitute(restr_src, v, Var(z)), outer)
        if mode is Mode.INF_PRIME:
            w = state.name("w")
            refl = _imp(RuleApp("EqI_n"), [Assumption(Existence(Var(u)), inner)],
                        Eq(Var(u), Var(u)))
            unique = _imp(
                RuleApp("IotaE2A", aux=TemplateAux(Eq(Var(u), Var(w)), w)),
                [body2, Assumption(Existence(Var(u)), inner),
                 Assumption(Existence(Var(z)), outer), f_u, f_z, refl],
                Eq(Var(u), Var(z)))
        elif free:
            unique = _imp(RuleApp("IotaE2"),
                          [body2, Assumption(Existence(Var(u)), inner),
                           Assumption(Existence(Var(z)), outer), f_u, f_z],
                          Eq(Var(u), Var(z)))
        else:
            unique = _imp(RuleApp("IotaE2"), [body2, f_u, f_z], Eq(Var(u), Var(z)))
        premises = [p_restr, p_scope]
        if free:
            premises.append(Assumption(Existence(Var(z)), outer))
        premises.append(unique)
        intro = _imp(RuleApp("IotaI", witness=Var(z), eigen=u, label=inner),
                     premises, goal)
        return _imp(RuleApp("IotaE1", eigen=z, label=outer), [body, intro], goal)

    return rec(a, body_proof, t1, t2, forward)


# ---------------------------------------------------------------------------
# interderivability of the two second description eliminations

def iota_e2a_via_e2(iota_proof: Deduction, ex1: Deduction, ex2: Deduction,
                    restr1: Deduction, restr2: Deduction, minor: Deduction,
                    template: TemplateAux,
                    state: FreshState | None = None) -> Deduction:
    """The effect of IotaE2A in the system with IotaE2: conclude the
    identity, then apply one Leibniz step to the template premise."""
    t1 = conclusion(ex1).term
    t2 = conclusion(ex2).term
    ident = _imp(RuleApp("IotaE2"), [iota_proof, ex1, ex2, restr1, restr2],
                 Eq(t1, t2))
    if t1 == t2 or alpha_eq(substitute(template.formula, template.var, t1),
                            substitute(template.formula, template.var, t2)):
        return minor
    return _imp(RuleApp("EqE", aux=template), [ident, minor],
                substitute(template.formula, template.var, t2))


def iota_e2_via_e2a(iota_proof: Deduction, ex1: Deduction, ex2: Deduction,
                    restr1: Deduction, restr2: Deduction,
                    state: FreshState | None = None) -> Deduction:
    """The effect of IotaE2 in the system with IotaE2A: take the template
    t1 = w, derive its first instance t1 = t1 from E!t1 by weakened identity
    introduction, and let the rule conclude t1 = t2."""
    if state is None:
        state = FreshState.for_deductions(iota_proof, ex1, ex2, restr1, restr2)
    t1 = conclusion(ex1).term
    t2 = conclusion(ex2).term
    if t1 == t2:
        return _imp(RuleApp("EqI_n"), [ex1], Eq(t1, t1))
    w = state.name("w")
    refl = _imp(RuleApp("EqI_n"), [duplicate_fresh(ex1, state)], Eq(t1, t1))
    return _imp(RuleApp("IotaE2A", aux=TemplateAux(Eq(t1, Var(w)), w)),
                [iota_proof, ex1, ex2, restr1, restr2, refl], Eq(t1, t2))


def translate(d: Deduction, source: Mode, target: Mode) -> Deduction:
    """Rewrite a proof between the IotaE2 system and the IotaE2A system."""
    if source is target:
        return d
    if {source, target} != {Mode.INF, Mode.INF_PRIME}:
        raise ModeMismatch("translation is between modes inf and inf-prime")
    state = FreshState.for_deductions(d)

    def go(n):
        if isinstance(n, Assumption):
            return n
        premises = tuple(go(p) for p in n.premises)
        r = n.rule
        if target is Mode.INF_PRIME and r.rule == "IotaE2":
            return iota_e2_via_e2a(*premises, state=state)
        if target is Mode.INF and r.rule == "IotaE2A":
            return iota_e2a_via_e2(*premises[:5], premises[5], r.aux, state=state)
        return Inference(r, premises, n.conclusion)

    return go(d)


# ---------------------------------------------------------------------------
# whole-proof expansion (used by the command line)

def expand_general_nodes(d: Deduction, mode: Mode, which: str) -> Deduction:
    """Replace non-kernel uses of BottomE ('efq') or EqE ('eqE') by their
    expansions.  Nested general nodes are handled innermost-first."""
    if which not in ("efq", "eqE"):
        raise ValueError("which must be 'efq' or 'eqE'")
    state = FreshState.for_deductions(d)

    def go(n):
        if isinstance(n, Assumption):
            return n
        premises = tuple(go(p) for p in n.premises)
        r = n.rule
        if which == "efq" and r.rule == "BottomE" and not is_atomic(n.conclusion):
            return expand_general_efq(n.conclusion, premises[0], mode, state)
        if (which == "eqE" and r.rule == "EqE"
                and isinstance(r.aux, TemplateAux) and not is_atomic(r.aux.formula)):
            return expand_general_eqE(premises[0], r.aux.formula, r.aux.var,
                                      premises[1], mode, state)
        return Inference(r, premises, n.conclusion)

    return go(d)
