"""Deduction trees.

A deduction is either an assumption leaf (optionally carrying a numeric
discharge label) or a rule application with premise subtrees and a stored
conclusion.  Conclusions are stored, never inferred: the checker re-derives
them and compares up to alpha-equivalence, which keeps errors local and the
serialized format explicit.

Trees are immutable; every operation returns a new tree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .syntax import (
    Formula, Term, Var, alpha_eq, alpha_eq_under, canon, free_vars, fresh_name,
    subst_term, substitute, term_vars, var_names,
)


# ---------------------------------------------------------------------------
# rule applications

RULES = (
    "AndI", "AndE_L", "AndE_R", "ImpI", "ImpE", "OrI_L", "OrI_R", "OrE",
    "BottomE", "AllI", "AllE", "ExI", "ExE", "EqI", "EqI_n", "EqE",
    "AD", "FD", "IotaI", "IotaE1", "IotaE2", "IotaE2A",
)

# rules that bind an eigenvariable
EIGEN_RULES = frozenset({"AllI", "ExE", "IotaI", "IotaE1"})

# rules that may discharge assumptions (AllI only in the free-logic modes)
DISCHARGING_RULES = frozenset({"ImpI", "OrE", "ExE", "IotaI", "IotaE1", "AllI"})

# rules whose minor premises and conclusions thread segments
SEGMENT_RULES = frozenset({"OrE", "ExE", "IotaE1"})

INTRO_RULES = frozenset({"AndI", "OrI_L", "OrI_R", "ImpI", "AllI", "ExI", "IotaI"})

# elimination rule families, keyed by the connective of the major premise
ELIM_FOR = {
    "And": ("AndE_L", "AndE_R"),
    "Or": ("OrE",),
    "Imp": ("ImpE",),
    "All": ("AllE",),
    "Ex": ("ExE",),
    "Iota": ("IotaE1", "IotaE2", "IotaE2A"),
    "Eq": ("EqE",),
}


@dataclass(frozen=True)
class TemplateAux:
    """Substitution template (A, x) carried by EqE and IotaE2A.

    The instance pair A[t1/x], A[t2/x] does not determine A and x, so the
    application records them explicitly.
    """

    formula: Formula
    var: str


@dataclass(frozen=True)
class RuleApp:
    rule: str
    eigen: str | None = None
    witness: Term | None = None
    label: int | None = None
    aux: int | TemplateAux | None = None


@dataclass(frozen=True)
class Assumption:
    formula: Formula
    label: int | None = None


@dataclass(frozen=True)
class Inference:
    rule: RuleApp
    premises: tuple
    conclusion: Formula


Deduction = Assumption | Inference


class EigenClash(Exception):
    """Substituting for a variable that some rule application binds."""


def conclusion(d: Deduction) -> Formula:
    return d.formula if isinstance(d, Assumption) else d.conclusion


# ---------------------------------------------------------------------------
# tree walking

def iter_nodes(d: Deduction, path=()):
    """Yield (path, node) pairs in pre-order; premises left to right."""
    yield path, d
    if isinstance(d, Inference):
        for i, p in enumerate(d.premises):
            yield from iter_nodes(p, path + (i,))


def node_at(d: Deduction, path) -> Deduction:
    for i in path:
        d = d.premises[i]
    return d


def replace_at(d: Deduction, path, sub: Deduction) -> Deduction:
    if not path:
        return sub
    i, rest = path[0], path[1:]
    premises = list(d.premises)
    premises[i] = replace_at(premises[i], rest, sub)
    return Inference(d.rule, tuple(premises), d.conclusion)


def cited_labels(d: Deduction) -> set:
    return {n.rule.label for _, n in iter_nodes(d)
            if isinstance(n, Inference) and n.rule.label is not None}


def max_label(d: Deduction) -> int:
    labels = [0]
    for _, n in iter_nodes(d):
        if isinstance(n, Assumption) and n.label is not None:
            labels.append(n.label)
        if isinstance(n, Inference) and n.rule.label is not None:
            labels.append(n.rule.label)
    return max(labels)


def deduction_var_names(d: Deduction) -> frozenset:
    """Every variable name in formulas, witnesses, templates and eigen slots."""
    out = frozenset()
    for _, n in iter_nodes(d):
        if isinstance(n, Assumption):
            out |= var_names(n.formula)
        else:
            out |= var_names(n.conclusion)
            r = n.rule
            if r.eigen is not None:
                out |= {r.eigen}
            if r.witness is not None:
                out |= term_vars(r.witness)
            if isinstance(r.aux, TemplateAux):
                out |= var_names(r.aux.formula) | {r.aux.var}
    return out


# ---------------------------------------------------------------------------
# open assumptions

def open_assumptions(d: Deduction) -> Counter:
    """Multiset of assumption formulas not discharged within d.

    An assumption is open iff no rule application on the path to the root
    cites its label.  Requires label-well-formedness (each labeled leaf
    below the one node citing its label) for the usual reading.
    """
    out = Counter()

    def go(n, shadow):
        if isinstance(n, Assumption):
            if n.label is None or n.label not in shadow:
                out[n.formula] += 1
            return
        s = shadow | {n.rule.label} if n.rule.label is not None else shadow
        for p in n.premises:
            go(p, s)

    go(d, frozenset())
    return out


def open_assumptions_excluding(d: Deduction, labels) -> Counter:
    """Open assumptions of d, ignoring leaves carrying one of the labels.

    Used for eigenvariable side conditions: the assumptions a rule is about
    to discharge do not count against its variable.
    """
    out = Counter()

    def go(n, shadow):
        if isinstance(n, Assumption):
            if n.label in labels:
                return
            if n.label is None or n.label not in shadow:
                out[n.formula] += 1
            return
        s = shadow | {n.rule.label} if n.rule.label is not None else shadow
        for p in n.premises:
            go(p, s)

    go(d, frozenset())
    return out


def support(assumptions: Counter) -> frozenset:
    """Alpha-canonical set of formulas underlying an assumption multiset."""
    return frozenset(canon(f) for f in assumptions)


# ---------------------------------------------------------------------------
# substitution into deductions

def _subst_aux(aux, x: str, t: Term):
    if not isinstance(aux, TemplateAux):
        return aux
    a, v = aux.formula, aux.var
    if v == x:
        # the template variable marks substitution slots; x is not free in
        # the template read as an abstraction
        return aux
    if v in term_vars(t):
        v2 = fresh_name(v, term_vars(t) | var_names(a) | {x})
        a = substitute(a, v, Var(v2))
        v = v2
    return TemplateAux(substitute(a, x, t), v)


def subst_deduction(d: Deduction, x: str, t: Term) -> Deduction:
    """Replace the variable x by t in every formula, witness and template.

    x must be nobody's eigenvariable in d.  Rule applications whose
    eigenvariable occurs in t are renamed first, so the result never
    violates variable ownership.
    """
    eigens = {n.rule.eigen for _, n in iter_nodes(d)
              if isinstance(n, Inference) and n.rule.eigen is not None}
    if x in eigens:
        raise EigenClash(f"{x} is an eigenvariable of a rule application")
    clashing = term_vars(t) & eigens
    if clashing:
        d = _freshen(d, force=clashing)

    def go(n):
        if isinstance(n, Assumption):
            return Assumption(substitute(n.formula, x, t), n.label)
        r = n.rule
        r2 = RuleApp(
            r.rule,
            eigen=r.eigen,
            witness=None if r.witness is None else subst_term(r.witness, x, t),
            label=r.label,
            aux=_subst_aux(r.aux, x, t),
        )
        return Inference(r2, tuple(go(p) for p in n.premises), substitute(n.conclusion, x, t))

    return go(d)


# ---------------------------------------------------------------------------
# eigenvariable ownership

# branch index in which a rule's eigenvariable is allowed to occur
def eigen_region_index(n: Inference) -> int:
    r = n.rule.rule
    if r == "AllI":
        return 0
    if r in ("ExE", "IotaE1"):
        return 1
    if r == "IotaI":
        return len(n.premises) - 1
    raise ValueError(f"{r} has no eigenvariable")


def _free_in_node_data(n, name: str) -> bool:
    if isinstance(n, Assumption):
        return name in free_vars(n.formula)
    if name in free_vars(n.conclusion):
        return True
    r = n.rule
    if r.witness is not None and name in term_vars(r.witness):
        return True
    if isinstance(r.aux, TemplateAux):
        if name in (free_vars(r.aux.formula) - {r.aux.var}):
            return True
    return False


def _occurs_free_outside(d: Deduction, name: str, region_path) -> bool:
    for path, n in iter_nodes(d):
        if path[:len(region_path)] == region_path:
            continue
        if _free_in_node_data(n, name):
            return True
    return False


def _freshen(d: Deduction, force=frozenset()) -> Deduction:
    everywhere = set(deduction_var_names(d))
    result = d

    # post-order over rule applications with an eigenvariable
    apps = [path for path, n in iter_nodes(d)
            if isinstance(n, Inference) and n.rule.eigen is not None]
    apps.sort(key=lambda p: (-len(p), p))

    for path in apps:
        n = node_at(result, path)
        y = n.rule.eigen
        region = path + (eigen_region_index(n),)
        shared = any(
            isinstance(m, Inference) and m.rule.eigen == y and q != path
            for q, m in iter_nodes(result)
        )
        if y in force or shared or _occurs_free_outside(result, y, region):
            y2 = fresh_name(y, everywhere)
            everywhere.add(y2)
            branch = subst_deduction(n.premises[region[-1]], y, Var(y2))
            premises = list(n.premises)
            premises[region[-1]] = branch
            rule = RuleApp(n.rule.rule, eigen=y2, witness=n.rule.witness,
                           label=n.rule.label, aux=n.rule.aux)
            result = replace_at(result, path, Inference(rule, tuple(premises), n.conclusion))
    return result


def freshen(d: Deduction) -> Deduction:
    """Give every eigenvariable application its own variable.

    After freshening, each eigenvariable is distinct from every other one
    and occurs free only inside the branch its rule governs: the discharged
    hypotheses and what is derived from them, plus the premise lineage for
    a universal introduction.  Eigenvariables already satisfying this keep
    their names, so the operation is idempotent.
    """
    return _freshen(d)


# ---------------------------------------------------------------------------
# relabeling and duplication

def relabel(d: Deduction, mapping: dict) -> Deduction:
    def go(n):
        if isinstance(n, Assumption):
            if n.label in mapping:
                return Assumption(n.formula, mapping[n.label])
            return n
        r = n.rule
        if r.label in mapping:
            r = RuleApp(r.rule, eigen=r.eigen, witness=r.witness,
                        label=mapping[r.label], aux=r.aux)
        return Inference(r, tuple(go(p) for p in n.premises), n.conclusion)

    return go(d)


class FreshState:
    """Deterministic allocator for labels and variable names during rewrites."""

    def __init__(self, used_names, next_label: int):
        self.used_names = set(used_names)
        self.next_label = next_label

    @classmethod
    def for_deductions(cls, *ds):
        names = set()
        top = 0
        for d in ds:
            names |= deduction_var_names(d)
            top = max(top, max_label(d))
        return cls(names, top + 1)

    def name(self, base: str) -> str:
        out = fresh_name(base, self.used_names)
        self.used_names.add(out)
        return out

    def label(self) -> int:
        out = self.next_label
        self.next_label += 1
        return out


def duplicate_fresh(d: Deduction, state: FreshState) -> Deduction:
    """Copy d with fresh discharge labels and fresh eigenvariables.

    Needed whenever a rewrite grafts the same subderivation into more than
    one position: labels stay unique per deduction and every application
    keeps its own variable.
    """
    mapping = {}
    for _, n in iter_nodes(d):
        if isinstance(n, Inference) and n.rule.label is not None and n.rule.label not in mapping:
            mapping[n.rule.label] = state.label()
    out = relabel(d, mapping)

    apps = [path for path, n in iter_nodes(out)
            if isinstance(n, Inference) and n.rule.eigen is not None]
    apps.sort(key=lambda p: (-len(p), p))
    for path in apps:
        n = node_at(out, path)
        y = n.rule.eigen
        y2 = state.name(y)
        region = eigen_region_index(n)
        premises = list(n.premises)
        try:
            premises[region] = subst_deduction(premises[region], y, Var(y2))
        except EigenClash:
            # y is rebound deeper; deeper copies were renamed first, so this
            # cannot happen on freshened input
            raise
        rule = RuleApp(n.rule.rule, eigen=y2, witness=n.rule.witness,
                       label=n.rule.label, aux=n.rule.aux)
        out = replace_at(out, path, Inference(rule, tuple(premises), n.conclusion))
    return out


# ---------------------------------------------------------------------------
# comparison up to freshening

def congruent(d1: Deduction, d2: Deduction) -> bool:
    """Structural equality up to renaming of eigenvariables and labels."""
    from .syntax import Ex

    labelmap: dict = {}
    labelseen: set = set()

    def labels_match(l1, l2):
        if (l1 is None) != (l2 is None):
            return False
        if l1 is None:
            return True
        if l1 in labelmap:
            return labelmap[l1] == l2
        if l2 in labelseen:
            return False
        labelmap[l1] = l2
        labelseen.add(l2)
        return True

    def terms_eq(t1, t2, pairs):
        if t1 is None or t2 is None:
            return t1 is None and t2 is None
        return alpha_eq_under(Eq(t1, t1), Eq(t2, t2), pairs)

    def go(n1, n2, pairs):
        if type(n1) is not type(n2):
            return False
        if isinstance(n1, Assumption):
            return (labels_match(n1.label, n2.label)
                    and alpha_eq_under(n1.formula, n2.formula, pairs))
        r1, r2 = n1.rule, n2.rule
        if r1.rule != r2.rule or len(n1.premises) != len(n2.premises):
            return False
        if not labels_match(r1.label, r2.label):
            return False
        if not terms_eq(r1.witness, r2.witness, pairs):
            return False
        if isinstance(r1.aux, TemplateAux) != isinstance(r2.aux, TemplateAux):
            return False
        if isinstance(r1.aux, TemplateAux):
            # compare templates as one-variable abstractions
            if not alpha_eq_under(Ex(r1.aux.var, r1.aux.formula),
                                  Ex(r2.aux.var, r2.aux.formula), pairs):
                return False
        elif r1.aux != r2.aux:
            return False
        if not alpha_eq_under(n1.conclusion, n2.conclusion, pairs):
            return False
        if (r1.eigen is None) != (r2.eigen is None):
            return False
        inner = pairs + ((r1.eigen, r2.eigen),) if r1.eigen is not None else pairs
        return all(go(p1, p2, inner) for p1, p2 in zip(n1.premises, n2.premises))

    return go(d1, d2, ())
