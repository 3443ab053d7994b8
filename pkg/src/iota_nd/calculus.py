"""Rule checking for the three systems.

Mode `i` is intuitionist predicate logic with identity and the plain rules
for the description quantifier.  Mode `inf` is the negative free variant:
quantifier rules carry existence premises and discharges, identity
introduction is weakened to require E!t, and the strictness rules AD and FD
become available.  Mode `inf-prime` replaces the second description
elimination (which concludes an identity) by a template form that applies
Leibniz's law directly.

check() is total: it returns a list of errors, in leftmost-innermost
traversal order, and never raises.  All formula comparisons are up to
alpha-equivalence; substitution instances are recomputed with the
capture-avoiding substitution operator, so proofs never need to rename
bound variables by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .proof import (
    Assumption, Deduction, DISCHARGING_RULES, Inference, RuleApp, RULES,
    TemplateAux, conclusion, open_assumptions_excluding,
)
from .syntax import (
    All, And, App, Bottom, Eq, Ex, Existence, Formula, Imp, Iota, Or, Pred,
    Term, Var, alpha_eq, atomic_args, free_vars, fresh_name, is_atomic,
    substitute, term_vars, var_names,
)


class Mode(Enum):
    I = "i"
    INF = "inf"
    INF_PRIME = "inf-prime"

    @property
    def free(self) -> bool:
        return self is not Mode.I


def mode_from_name(name: str) -> Mode:
    for m in Mode:
        if m.value == name:
            return m
    raise ValueError(f"unknown mode {name!r}")


class ErrorKind(Enum):
    WrongPremiseShape = "WrongPremiseShape"
    EigenviolationInAssumptions = "EigenviolationInAssumptions"
    EigenviolationInConclusion = "EigenviolationInConclusion"
    NotAtomic = "NotAtomic"
    NotFreeFor = "NotFreeFor"
    LabelMisuse = "LabelMisuse"
    RuleUnavailableInMode = "RuleUnavailableInMode"
    ConclusionMismatch = "ConclusionMismatch"


@dataclass(frozen=True)
class CheckError:
    path: tuple
    kind: ErrorKind
    message: str

    def __str__(self):
        where = ".".join(map(str, self.path)) if self.path else "root"
        return f"[{self.kind.value}] at {where}: {self.message}"


# rules only available in some modes; everything else is available everywhere
_MODE_TABLE = {
    "EqI": {Mode.I},
    "EqI_n": {Mode.INF, Mode.INF_PRIME},
    "AD": {Mode.INF, Mode.INF_PRIME},
    "FD": {Mode.INF, Mode.INF_PRIME},
    "IotaE2": {Mode.I, Mode.INF},
    "IotaE2A": {Mode.INF_PRIME},
}


def rule_available(rule: str, mode: Mode) -> bool:
    return mode in _MODE_TABLE.get(rule, set(Mode))


def rule_arity(rule: str, mode: Mode) -> int:
    base = {
        "AndI": 2, "AndE_L": 1, "AndE_R": 1, "ImpI": 1, "ImpE": 2,
        "OrI_L": 1, "OrI_R": 1, "OrE": 3, "BottomE": 1,
        "AllI": 1, "ExE": 2, "EqI": 0, "EqI_n": 1, "EqE": 2,
        "AD": 1, "FD": 1, "IotaE1": 2, "IotaE2A": 6,
    }
    if rule in base:
        return base[rule]
    if rule == "AllE":
        return 2 if mode.free else 1
    if rule == "ExI":
        return 2 if mode.free else 1
    if rule == "IotaI":
        return 4 if mode.free else 3
    if rule == "IotaE2":
        return 5 if mode.free else 3
    raise ValueError(f"unknown rule {rule!r}")


class _Checker:
    def __init__(self, mode: Mode):
        self.mode = mode
        self.errors: list = []
        self.cited: dict = {}

    def err(self, path, kind, message):
        self.errors.append(CheckError(path, kind, message))

    # -- entry -------------------------------------------------------------

    def run(self, d: Deduction):
        self.node(d, (), {})
        return self.errors

    def node(self, n: Deduction, path, env):
        if isinstance(n, Assumption):
            self.assumption(n, path, env)
            return
        rule = n.rule.rule
        if rule not in RULES:
            self.err(path, ErrorKind.WrongPremiseShape, f"unknown rule {rule!r}")
            for i, p in enumerate(n.premises):
                self.node(p, path + (i,), env)
            return

        node_errors: list = []
        branch_envs = self.analyze(n, path, node_errors, env)
        for i, p in enumerate(n.premises):
            self.node(p, path + (i,), branch_envs.get(i, env))
        # duplicate citations are reported at the second citing node in
        # traversal order
        label = n.rule.label
        if label is not None:
            if label in self.cited:
                node_errors.append(CheckError(
                    path, ErrorKind.LabelMisuse,
                    f"label {label} already discharges at another node"))
            else:
                self.cited[label] = path
        self.errors.extend(node_errors)

    def assumption(self, n: Assumption, path, env):
        if n.label is None:
            return
        if n.label not in env:
            self.err(path, ErrorKind.LabelMisuse,
                     f"assumption labeled {n.label} outside the scope of its discharging rule")
            return
        allowed = env[n.label]
        if not any(alpha_eq(n.formula, a) for a in allowed):
            self.err(path, ErrorKind.LabelMisuse,
                     f"assumption labeled {n.label} does not match a dischargeable formula")

    # -- per-node analysis ---------------------------------------------------
    #
    # Computes branch environments (which formulas a label may discharge in
    # which premise) and the node's own errors.  Node errors are collected
    # first but appended after the premises are traversed, keeping the
    # leftmost-innermost order.

    def analyze(self, n: Inference, path, out: list, env) -> dict:
        mode = self.mode
        r = n.rule
        rule = r.rule

        def fail(kind, message):
            out.append(CheckError(path, kind, message))

        if not rule_available(rule, mode):
            fail(ErrorKind.RuleUnavailableInMode,
                 f"{rule} is not a rule of mode {mode.value}")
            return {}
        want = rule_arity(rule, mode)
        if len(n.premises) != want:
            fail(ErrorKind.WrongPremiseShape,
                 f"{rule} takes {want} premise(s) in mode {mode.value}, got {len(n.premises)}")
            return {}

        discharging = rule in DISCHARGING_RULES and (rule != "AllI" or mode.free)
        if discharging and r.label is None:
            fail(ErrorKind.LabelMisuse, f"{rule} requires a discharge label")
        if not discharging and r.label is not None:
            fail(ErrorKind.LabelMisuse,
                 f"{rule} discharges nothing in mode {mode.value}")
        if r.label is not None and r.label in env:
            fail(ErrorKind.LabelMisuse, f"label {r.label} is already in scope")

        handler = getattr(self, "rule_" + rule)
        return handler(n, path, out, env)

    # -- helpers -------------------------------------------------------------

    def premise(self, n, i) -> Formula:
        return conclusion(n.premises[i])

    def need_eigen(self, n, path, out) -> str | None:
        if n.rule.eigen is None:
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  f"{n.rule.rule} requires :eigen"))
        return n.rule.eigen

    def need_witness(self, n, path, out) -> Term | None:
        if n.rule.witness is None:
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  f"{n.rule.rule} requires :witness"))
        return n.rule.witness

    def extend(self, env, label, shapes) -> dict:
        if label is None:
            return env
        env2 = dict(env)
        env2[label] = tuple(shapes)
        return env2

    def check_eigen_assumptions(self, n, path, out, eigen, branch_index, label):
        labels = {label} if label is not None else set()
        opens = open_assumptions_excluding(n.premises[branch_index], labels)
        for f in opens:
            if eigen in free_vars(f):
                out.append(CheckError(
                    path, ErrorKind.EigenviolationInAssumptions,
                    f"eigenvariable {eigen} occurs free in an undischarged assumption"))
                return

    # -- propositional rules --------------------------------------------------

    def rule_AndI(self, n, path, out, env):
        c = n.conclusion
        if not isinstance(c, And):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "AndI must conclude a conjunction"))
            return {}
        if not alpha_eq(self.premise(n, 0), c.left):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "first premise does not match the left conjunct"))
        if not alpha_eq(self.premise(n, 1), c.right):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "second premise does not match the right conjunct"))
        return {}

    def _and_elim(self, n, path, out, pick):
        p = self.premise(n, 0)
        if not isinstance(p, And):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premise must be a conjunction"))
            return {}
        if not alpha_eq(n.conclusion, pick(p)):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "conclusion does not match the selected conjunct"))
        return {}

    def rule_AndE_L(self, n, path, out, env):
        return self._and_elim(n, path, out, lambda p: p.left)

    def rule_AndE_R(self, n, path, out, env):
        return self._and_elim(n, path, out, lambda p: p.right)

    def rule_ImpI(self, n, path, out, env):
        c = n.conclusion
        if not isinstance(c, Imp):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "ImpI must conclude an implication"))
            return {}
        if not alpha_eq(self.premise(n, 0), c.right):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premise does not match the consequent"))
        return {0: self.extend(env, n.rule.label, [c.left])}

    def rule_ImpE(self, n, path, out, env):
        p = self.premise(n, 0)
        if not isinstance(p, Imp):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be an implication"))
            return {}
        if not alpha_eq(self.premise(n, 1), p.left):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "minor premise does not match the antecedent"))
        if not alpha_eq(n.conclusion, p.right):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "conclusion does not match the consequent"))
        return {}

    def _or_intro(self, n, path, out, pick):
        c = n.conclusion
        if not isinstance(c, Or):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "OrI must conclude a disjunction"))
            return {}
        if not alpha_eq(self.premise(n, 0), pick(c)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premise does not match the selected disjunct"))
        return {}

    def rule_OrI_L(self, n, path, out, env):
        return self._or_intro(n, path, out, lambda c: c.left)

    def rule_OrI_R(self, n, path, out, env):
        return self._or_intro(n, path, out, lambda c: c.right)

    def rule_OrE(self, n, path, out, env):
        p = self.premise(n, 0)
        if not isinstance(p, Or):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be a disjunction"))
            return {}
        for i in (1, 2):
            if not alpha_eq(self.premise(n, i), n.conclusion):
                out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                      f"minor premise {i} does not match the conclusion"))
        return {
            1: self.extend(env, n.rule.label, [p.left]),
            2: self.extend(env, n.rule.label, [p.right]),
        }

    def rule_BottomE(self, n, path, out, env):
        if not isinstance(self.premise(n, 0), Bottom):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premise must be _|_"))
        if not is_atomic(n.conclusion):
            out.append(CheckError(path, ErrorKind.NotAtomic,
                                  "conclusion of BottomE must be atomic"))
        return {}

    # -- quantifier rules ------------------------------------------------------

    def rule_AllI(self, n, path, out, env):
        c = n.conclusion
        y = self.need_eigen(n, path, out)
        if not isinstance(c, All):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "AllI must conclude a universal formula"))
            return {}
        if y is None:
            return {}
        if not alpha_eq(self.premise(n, 0), substitute(c.body, c.var, Var(y))):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premise is not the eigenvariable instance of the conclusion"))
        if y != c.var and y in free_vars(c.body):
            out.append(CheckError(path, ErrorKind.EigenviolationInConclusion,
                                  f"eigenvariable {y} is free in the quantified formula"))
        self.check_eigen_assumptions(n, path, out, y, 0, n.rule.label)
        if self.mode.free:
            return {0: self.extend(env, n.rule.label, [Existence(Var(y))])}
        return {}

    def rule_AllE(self, n, path, out, env):
        p = self.premise(n, 0)
        t = self.need_witness(n, path, out)
        if not isinstance(p, All):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be a universal formula"))
            return {}
        if t is None:
            return {}
        if self.mode.free and not alpha_eq(self.premise(n, 1), Existence(t)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "second premise must assert existence of the witness"))
        if not alpha_eq(n.conclusion, substitute(p.body, p.var, t)):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "conclusion is not the witness instance of the premise"))
        return {}

    def rule_ExI(self, n, path, out, env):
        c = n.conclusion
        t = self.need_witness(n, path, out)
        if not isinstance(c, Ex):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "ExI must conclude an existential formula"))
            return {}
        if t is None:
            return {}
        if not alpha_eq(self.premise(n, 0), substitute(c.body, c.var, t)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premise is not the witness instance of the conclusion"))
        if self.mode.free and not alpha_eq(self.premise(n, 1), Existence(t)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "second premise must assert existence of the witness"))
        return {}

    def rule_ExE(self, n, path, out, env):
        p = self.premise(n, 0)
        y = self.need_eigen(n, path, out)
        if not isinstance(p, Ex):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be an existential formula"))
            return {}
        if not alpha_eq(self.premise(n, 1), n.conclusion):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "minor premise does not match the conclusion"))
        if y is None:
            return {}
        if y in free_vars(n.conclusion):
            out.append(CheckError(path, ErrorKind.EigenviolationInConclusion,
                                  f"eigenvariable {y} is free in the conclusion"))
        if y != p.var and y in free_vars(p.body):
            out.append(CheckError(path, ErrorKind.EigenviolationInConclusion,
                                  f"eigenvariable {y} is free in the quantified formula"))
        self.check_eigen_assumptions(n, path, out, y, 1, n.rule.label)
        shapes = [substitute(p.body, p.var, Var(y))]
        if self.mode.free:
            shapes.append(Existence(Var(y)))
        return {1: self.extend(env, n.rule.label, shapes)}

    # -- identity and strictness ----------------------------------------------

    def rule_EqI(self, n, path, out, env):
        c = n.conclusion
        if not (isinstance(c, Eq) and c.lhs == c.rhs):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "EqI concludes t = t"))
            return {}
        if n.rule.witness is not None and n.rule.witness != c.lhs:
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "witness disagrees with the conclusion"))
        return {}

    def rule_EqI_n(self, n, path, out, env):
        p = self.premise(n, 0)
        if not isinstance(p, Existence):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premise must be an existence formula"))
            return {}
        c = n.conclusion
        if not (isinstance(c, Eq) and c.lhs == c.rhs and c.lhs == p.term):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "EqI_n concludes t = t for the existing term"))
        return {}

    def rule_EqE(self, n, path, out, env):
        aux = n.rule.aux
        if not isinstance(aux, TemplateAux):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "EqE requires :aux [template, variable]"))
            return {}
        a, x = aux.formula, aux.var
        if not is_atomic(a):
            out.append(CheckError(path, ErrorKind.NotAtomic,
                                  "EqE template must be atomic"))
        if x not in free_vars(a):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "vacuous EqE: template variable not free in template"))
        p = self.premise(n, 0)
        if not isinstance(p, Eq):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be an identity"))
            return {}
        if p.lhs == p.rhs:
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "vacuous EqE: identical terms"))
        if not alpha_eq(self.premise(n, 1), substitute(a, x, p.lhs)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "minor premise is not the left instance of the template"))
        if not alpha_eq(n.conclusion, substitute(a, x, p.rhs)):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "conclusion is not the right instance of the template"))
        return {}

    def rule_AD(self, n, path, out, env):
        p = self.premise(n, 0)
        if not is_atomic(p):
            out.append(CheckError(path, ErrorKind.NotAtomic,
                                  "AD premise must be atomic"))
            return {}
        args = atomic_args(p)
        i = n.rule.aux
        if not isinstance(i, int) or not (1 <= i <= len(args)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "AD requires :aux i with 1 <= i <= number of arguments"))
            return {}
        if not alpha_eq(n.conclusion, Existence(args[i - 1])):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "conclusion must assert existence of the selected argument"))
        return {}

    def rule_FD(self, n, path, out, env):
        p = self.premise(n, 0)
        if not (isinstance(p, Existence) and isinstance(p.term, App)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "FD premise must assert existence of a function value"))
            return {}
        args = p.term.args
        i = n.rule.aux
        if not isinstance(i, int) or not (1 <= i <= len(args)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "FD requires :aux i with 1 <= i <= number of arguments"))
            return {}
        if not alpha_eq(n.conclusion, Existence(args[i - 1])):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "conclusion must assert existence of the selected argument"))
        return {}

    # -- description rules ------------------------------------------------------

    def rule_IotaI(self, n, path, out, env):
        c = n.conclusion
        t = self.need_witness(n, path, out)
        z = self.need_eigen(n, path, out)
        if not isinstance(c, Iota):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "IotaI must conclude a description formula"))
            return {}
        if t is None or z is None:
            return {}
        x, restr, scope = c.var, c.restr, c.scope
        if not alpha_eq(self.premise(n, 0), substitute(restr, x, t)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "first premise is not the witness instance of the restrictor"))
        if not alpha_eq(self.premise(n, 1), substitute(scope, x, t)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "second premise is not the witness instance of the scope"))
        last = len(n.premises) - 1
        if self.mode.free and not alpha_eq(self.premise(n, 2), Existence(t)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "third premise must assert existence of the witness"))
        if not alpha_eq(self.premise(n, last), Eq(Var(z), t)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "uniqueness premise must conclude eigenvariable = witness"))
        if z == x:
            out.append(CheckError(path, ErrorKind.EigenviolationInConclusion,
                                  "eigenvariable must differ from the bound variable"))
        if z in term_vars(t):
            out.append(CheckError(path, ErrorKind.EigenviolationInConclusion,
                                  "eigenvariable occurs in the witness term"))
        self.check_eigen_assumptions(n, path, out, z, last, n.rule.label)
        shapes = [substitute(restr, x, Var(z))]
        if self.mode.free:
            shapes.append(Existence(Var(z)))
        return {last: self.extend(env, n.rule.label, shapes)}

    def rule_IotaE1(self, n, path, out, env):
        p = self.premise(n, 0)
        z = self.need_eigen(n, path, out)
        if not isinstance(p, Iota):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be a description formula"))
            return {}
        if not alpha_eq(self.premise(n, 1), n.conclusion):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "minor premise does not match the conclusion"))
        if z is None:
            return {}
        if z in free_vars(n.conclusion):
            out.append(CheckError(path, ErrorKind.EigenviolationInConclusion,
                                  f"eigenvariable {z} is free in the conclusion"))
        if z != p.var and (z in free_vars(p.restr) or z in free_vars(p.scope)):
            out.append(CheckError(path, ErrorKind.EigenviolationInConclusion,
                                  f"eigenvariable {z} is free in the description"))
        self.check_eigen_assumptions(n, path, out, z, 1, n.rule.label)
        shapes = [substitute(p.restr, p.var, Var(z)),
                  substitute(p.scope, p.var, Var(z))]
        if self.mode.free:
            shapes.append(Existence(Var(z)))
        return {1: self.extend(env, n.rule.label, shapes)}

    def rule_IotaE2(self, n, path, out, env):
        p = self.premise(n, 0)
        c = n.conclusion
        if not isinstance(p, Iota):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be a description formula"))
            return {}
        if not isinstance(c, Eq):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "IotaE2 concludes an identity"))
            return {}
        t1, t2 = c.lhs, c.rhs
        if self.mode.free:
            idx1, idx2 = 3, 4
            if not alpha_eq(self.premise(n, 1), Existence(t1)):
                out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                      "second premise must assert existence of the first term"))
            if not alpha_eq(self.premise(n, 2), Existence(t2)):
                out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                      "third premise must assert existence of the second term"))
        else:
            idx1, idx2 = 1, 2
        if not alpha_eq(self.premise(n, idx1), substitute(p.restr, p.var, t1)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "restrictor instance for the first term does not match"))
        if not alpha_eq(self.premise(n, idx2), substitute(p.restr, p.var, t2)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "restrictor instance for the second term does not match"))
        return {}

    def rule_IotaE2A(self, n, path, out, env):
        p = self.premise(n, 0)
        aux = n.rule.aux
        if not isinstance(aux, TemplateAux):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "IotaE2A requires :aux [template, variable]"))
            return {}
        if not is_atomic(aux.formula):
            out.append(CheckError(path, ErrorKind.NotAtomic,
                                  "IotaE2A template must be atomic"))
        if not isinstance(p, Iota):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "major premise must be a description formula"))
            return {}
        e1, e2 = self.premise(n, 1), self.premise(n, 2)
        if not isinstance(e1, Existence) or not isinstance(e2, Existence):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "premises 2 and 3 must be existence formulas"))
            return {}
        t1, t2 = e1.term, e2.term
        if not alpha_eq(self.premise(n, 3), substitute(p.restr, p.var, t1)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "restrictor instance for the first term does not match"))
        if not alpha_eq(self.premise(n, 4), substitute(p.restr, p.var, t2)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "restrictor instance for the second term does not match"))
        a, x = aux.formula, aux.var
        if not alpha_eq(self.premise(n, 5), substitute(a, x, t1)):
            out.append(CheckError(path, ErrorKind.WrongPremiseShape,
                                  "template premise is not the first-term instance"))
        if not alpha_eq(n.conclusion, substitute(a, x, t2)):
            out.append(CheckError(path, ErrorKind.ConclusionMismatch,
                                  "conclusion is not the second-term instance of the template"))
        return {}


def check(d: Deduction, mode: Mode) -> list:
    """All rule and side-condition violations in d, empty if d is valid."""
    return _Checker(mode).run(d)


# ---------------------------------------------------------------------------
# derived deductions

def derive_hintikka(direction: str, t: Term) -> Deduction:
    """E!t -| |- ex x. x = t, in the negative free systems.

    direction "ltr" derives the existential from E!t via weakened identity
    introduction; "rtl" comes back by eliminating the existential and
    applying atomic denotation to the identity.
    """
    x = "x" if "x" not in term_vars(t) else fresh_name("x", term_vars(t))
    goal_ex = Ex(x, Eq(Var(x), t))
    if direction == "ltr":
        assm = Assumption(Existence(t))
        refl = Inference(RuleApp("EqI_n"), (assm,), Eq(t, t))
        return Inference(RuleApp("ExI", witness=t), (refl, Assumption(Existence(t))),
                         goal_ex)
    if direction == "rtl":
        y = fresh_name(x, term_vars(t) | {x})
        ident = Assumption(Eq(Var(y), t), label=1)
        ad = Inference(RuleApp("AD", aux=2), (ident,), Existence(t))
        return Inference(RuleApp("ExE", eigen=y, label=1),
                         (Assumption(goal_ex), ad), Existence(t))
    raise ValueError(f"direction must be 'ltr' or 'rtl', got {direction!r}")


def russell_formula(restr: Formula, scope: Formula, x: str, y: str) -> Formula:
    """ex x. (F & all y. (F[y/x] -> y = x)) & G"""
    unique = All(y, Imp(substitute(restr, x, Var(y)), Eq(Var(y), Var(x))))
    return Ex(x, And(And(restr, unique), scope))


def instantiate_russell_bridge(direction: int, restr: Formula, scope: Formula,
                               x: str, mode: Mode = Mode.INF) -> Deduction:
    """The two deductions connecting `the x [F, G]` with its existential
    paraphrase, in mode `i` or mode `inf`.

    direction 1 derives the paraphrase from the description; direction 2
    derives the description from the paraphrase.
    """
    if mode is Mode.INF_PRIME:
        raise ValueError("the bridge uses IotaE2, unavailable in inf-prime")
    taken = var_names(restr) | var_names(scope) | {x}
    y = "y" if "y" not in taken else fresh_name("y", taken)
    iota = Iota(x, restr, scope)
    restr_y = substitute(restr, x, Var(y))
    unique = All(y, Imp(restr_y, Eq(Var(y), Var(x))))
    star = And(And(restr, unique), scope)
    exstar = Ex(x, star)
    free = mode.free

    if direction == 1:
        if free:
            e2 = Inference(
                RuleApp("IotaE2"),
                (Assumption(iota),
                 Assumption(Existence(Var(y)), label=2),
                 Assumption(Existence(Var(x)), label=3),
                 Assumption(restr_y, label=1),
                 Assumption(restr, label=3)),
                Eq(Var(y), Var(x)))
        else:
            e2 = Inference(
                RuleApp("IotaE2"),
                (Assumption(iota),
                 Assumption(restr_y, label=1),
                 Assumption(restr, label=2)),
                Eq(Var(y), Var(x)))
        imp = Inference(RuleApp("ImpI", label=1), (e2,), Imp(restr_y, Eq(Var(y), Var(x))))
        alli = Inference(RuleApp("AllI", eigen=y, label=2 if free else None),
                         (imp,), unique)
        lbl = 3 if free else 2
        conj1 = Inference(RuleApp("AndI"),
                          (Assumption(restr, label=lbl), alli), And(restr, unique))
        conj = Inference(RuleApp("AndI"),
                         (conj1, Assumption(scope, label=lbl)), star)
        if free:
            exi = Inference(RuleApp("ExI", witness=Var(x)),
                            (conj, Assumption(Existence(Var(x)), label=3)), exstar)
        else:
            exi = Inference(RuleApp("ExI", witness=Var(x)), (conj,), exstar)
        return Inference(RuleApp("IotaE1", eigen=x, label=lbl),
                         (Assumption(iota), exi), exstar)

    if direction == 2:
        star2 = Assumption(star, label=2)
        get_restr = Inference(
            RuleApp("AndE_L"),
            (Inference(RuleApp("AndE_L"), (star2,), And(restr, unique)),),
            restr)
        get_scope = Inference(RuleApp("AndE_R"), (star2,), scope)
        get_unique = Inference(
            RuleApp("AndE_R"),
            (Inference(RuleApp("AndE_L"), (star2,), And(restr, unique)),),
            unique)
        if free:
            alle = Inference(RuleApp("AllE", witness=Var(y)),
                             (get_unique, Assumption(Existence(Var(y)), label=1)),
                             Imp(restr_y, Eq(Var(y), Var(x))))
        else:
            alle = Inference(RuleApp("AllE", witness=Var(y)),
                             (get_unique,), Imp(restr_y, Eq(Var(y), Var(x))))
        uniq = Inference(RuleApp("ImpE"),
                         (alle, Assumption(restr_y, label=1)), Eq(Var(y), Var(x)))
        if free:
            ii = Inference(RuleApp("IotaI", witness=Var(x), eigen=y, label=1),
                           (get_restr, get_scope,
                            Assumption(Existence(Var(x)), label=2), uniq),
                           iota)
        else:
            ii = Inference(RuleApp("IotaI", witness=Var(x), eigen=y, label=1),
                           (get_restr, get_scope, uniq), iota)
        return Inference(RuleApp("ExE", eigen=x, label=2),
                         (Assumption(exstar), ii), iota)

    raise ValueError(f"direction must be 1 or 2, got {direction!r}")
