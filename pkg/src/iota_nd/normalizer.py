"""Maximal segments, rank, and normalization.

A maximal formula is the conclusion of an introduction rule used as the
major premise of an elimination rule for the same connective.  Segments
thread such occurrences through the minor premises and conclusions of OrE,
ExE and IotaE1.  The rank of a deduction is the pair (highest degree of a
maximal segment, summed length of maximal segments at that degree); every
reduction step strictly decreases it in the lexicographic order, which is
what drives termination.

Identities need special treatment.  IotaE2 concludes an identity, and there
is no general way to remove an identity it introduces and Leibniz's law
eliminates, so such formulas do not count as maximal.  In the variant
system whose second description elimination is the template rule IotaE2A,
an application whose template premise is a reflexivity (concluding t1=t2
outright) feeding Leibniz's law IS removable: IotaE2A can absorb the
Leibniz step.  Those sites are counted as maximal segments of degree 0 and
flagged IdentityRedundancy.  The count is closed under chains of Leibniz
steps so that removing one site never surfaces a previously uncounted one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .proof import (
    Assumption, Deduction, FreshState, Inference, INTRO_RULES, RuleApp,
    SEGMENT_RULES, TemplateAux, conclusion, duplicate_fresh, freshen,
    iter_nodes, node_at, relabel, replace_at, subst_deduction,
)
from .syntax import (
    All, And, Eq, Ex, Existence, Imp, Iota, Or, Var, alpha_eq, degree,
    substitute,
)


class NotReducible(Exception):
    pass


class RankNotDecreased(Exception):
    pass


class MaxStepsExceeded(Exception):
    pass


@dataclass(frozen=True, order=True)
class Rank:
    degree: int
    length: int

    def __str__(self):
        return f"<{self.degree},{self.length}>"


@dataclass(frozen=True)
class Segment:
    """Chain of same-shape formula occurrences, as the paths of the nodes
    whose conclusions they are.  The last occurrence is the major premise
    of the elimination at the parent of paths[-1]."""

    paths: tuple
    formula: object
    degree: int
    identity_site: bool = False

    @property
    def length(self) -> int:
        return len(self.paths)

    @property
    def elim_path(self) -> tuple:
        return self.paths[-1][:-1]


@dataclass(frozen=True)
class TraceStep:
    index: int
    kind: str
    path: tuple
    before: Rank
    after: Rank

    def line(self) -> str:
        where = ".".join(map(str, self.path)) if self.path else "-"
        return f"{self.index} {self.kind} {where} {self.before}->{self.after}"


_END_RULES = {
    And: ("AndE_L", "AndE_R"),
    Or: ("OrE",),
    Imp: ("ImpE",),
    All: ("AllE",),
    Ex: ("ExE",),
    Iota: ("IotaE1", "IotaE2", "IotaE2A"),
    Eq: ("EqE",),
}


def _minor_indices(node: Inference):
    return (1, 2) if node.rule.rule == "OrE" else (1,)


def _as_identity_iota2a(n: Deduction) -> bool:
    """IotaE2A applied with a one-sided identity template and a reflexive
    template premise, so that it concludes an identity of its own two
    terms."""
    if not (isinstance(n, Inference) and n.rule.rule == "IotaE2A"):
        return False
    aux = n.rule.aux
    if not (isinstance(aux, TemplateAux) and isinstance(aux.formula, Eq)):
        return False
    lhs, rhs = aux.formula.lhs, aux.formula.rhs
    one_sided = (rhs == Var(aux.var) and not _var_in(aux.var, lhs)) or \
                (lhs == Var(aux.var) and not _var_in(aux.var, rhs))
    if not one_sided:
        return False
    p5 = conclusion(n.premises[5])
    return isinstance(p5, Eq) and p5.lhs == p5.rhs


def _var_in(name, term):
    from .syntax import term_vars
    return name in term_vars(term)


def _iota_derived(n: Deduction) -> bool:
    """Whether n concludes an identity whose derivation bottoms out in a
    reflexivity-fed IotaE2A, possibly through further Leibniz steps or
    segment-threading rules."""
    if not isinstance(n, Inference) or not isinstance(conclusion(n), Eq):
        return False
    r = n.rule.rule
    if r == "IotaE2A":
        return _as_identity_iota2a(n)
    if r == "EqE":
        return _iota_derived(n.premises[0])
    if r in SEGMENT_RULES:
        return any(_iota_derived(n.premises[i]) for i in _minor_indices(n))
    return False


def _segment_start(n: Deduction):
    """None, or the flavor of maximal-segment start n's conclusion can be:
    'intro' for introduction rules, 'identity' for removable identities."""
    if not isinstance(n, Inference):
        return None
    r = n.rule.rule
    if r in INTRO_RULES:
        return "intro"
    if _as_identity_iota2a(n):
        return "identity"
    if r == "EqE" and _iota_derived(n):
        return "identity"
    return None


def find_maximal(d: Deduction) -> list:
    """All maximal segments, length-1 maximal formulas included."""
    nodes = dict(iter_nodes(d))
    out = []
    for path, node in iter_nodes(d):
        start = _segment_start(node)
        if start is None:
            continue
        f = conclusion(node)
        ends = _END_RULES.get(type(f))
        if ends is None:
            continue
        paths = [path]
        cur = path
        while cur:
            parent_path, idx = cur[:-1], cur[-1]
            parent = nodes[parent_path]
            r = parent.rule.rule
            if r in SEGMENT_RULES and idx in _minor_indices(parent):
                if not alpha_eq(conclusion(parent), f):
                    break
                paths.append(parent_path)
                cur = parent_path
                continue
            if idx == 0 and r in ends:
                if isinstance(f, Eq) and start != "identity":
                    break
                out.append(Segment(tuple(paths), f, degree(f),
                                   identity_site=isinstance(f, Eq)))
            break
    out.sort(key=lambda s: (s.paths[0], s.paths[-1]))
    return out


def rank_of(segments) -> Rank:
    if not segments:
        return Rank(0, 0)
    dmax = max(s.degree for s in segments)
    return Rank(dmax, sum(s.length for s in segments if s.degree == dmax))


def rank(d: Deduction) -> Rank:
    return rank_of(find_maximal(d))


# ---------------------------------------------------------------------------
# selection
#
# Among segments of highest degree, a reduction may only be applied where
# the subderivations it duplicates or grafts repeatedly contain no other
# highest-degree segment; otherwise the rank could grow.  The regions below
# are a sound overapproximation of that material: the minor subtrees of the
# ending elimination and, for a length-1 segment, the premise subtrees of
# the introduction.  A non-blocked candidate always exists because blocking
# only ever points upward in the tree.

def _risk_regions(d: Deduction, seg: Segment) -> list:
    e_path = seg.elim_path
    elim = node_at(d, e_path)
    regions = [e_path + (i,) for i in range(1, len(elim.premises))]
    if seg.length == 1:
        p_path = seg.paths[0]
        intro = node_at(d, p_path)
        regions.extend(p_path + (i,) for i in range(len(intro.premises)))
    return regions


def _touches(seg: Segment, regions) -> bool:
    nodes = set(seg.paths) | {seg.elim_path}
    for p in nodes:
        for r in regions:
            if p[:len(r)] == r:
                return True
    return False


def select_segment(d: Deduction, segments) -> Segment:
    dmax = max(s.degree for s in segments)
    cands = [s for s in segments if s.degree == dmax]
    eligible = []
    for s in cands:
        regions = _risk_regions(d, s)
        if not any(o is not s and _touches(o, regions) for o in cands):
            eligible.append(s)
    assert eligible, "no reducible segment among highest-degree candidates"
    return max(eligible, key=lambda s: (s.length, len(s.elim_path), s.elim_path))


# ---------------------------------------------------------------------------
# reductions

def _subst_clean(d: Deduction, x: str, t) -> Deduction:
    """Substitute and drop Leibniz steps the substitution has trivialized
    (major premise t = t), which the vacuity condition would reject."""
    return _collapse_vacuous_eqe(subst_deduction(d, x, t))


def _collapse_vacuous_eqe(d: Deduction) -> Deduction:
    if isinstance(d, Assumption):
        return d
    premises = tuple(_collapse_vacuous_eqe(p) for p in d.premises)
    if d.rule.rule == "EqE":
        major = conclusion(premises[0])
        if isinstance(major, Eq) and major.lhs == major.rhs:
            return premises[1]
    return Inference(d.rule, premises, d.conclusion)


def _graft(branch: Deduction, label: int, pairs, state: FreshState) -> Deduction:
    """Replace assumptions carrying label by the deductions proving them.

    pairs is a list of (formula shape, replacement); the first occurrence of
    each shape consumes the original replacement, later ones get relabeled,
    eigenvariable-renamed copies.
    """
    used = [False] * len(pairs)

    def go(n):
        if isinstance(n, Assumption):
            if n.label != label:
                return n
            for k, (shape, repl) in enumerate(pairs):
                if alpha_eq(n.formula, shape):
                    if used[k]:
                        return duplicate_fresh(repl, state)
                    used[k] = True
                    return repl
            raise NotReducible("labeled assumption does not match a discharged shape")
        return Inference(n.rule, tuple(go(p) for p in n.premises), n.conclusion)

    return go(branch)


def _eqi_refl(term, existence_branch, free: bool, state: FreshState) -> Deduction:
    """t = t, from an existence branch in the free modes, outright otherwise."""
    if free:
        return Inference(RuleApp("EqI_n"), (duplicate_fresh(existence_branch, state),),
                         Eq(term, term))
    return Inference(RuleApp("EqI"), (), Eq(term, term))


def _flip_identity(identity_branch, refl_branch, state: FreshState) -> Deduction:
    """From a branch concluding a = b derive b = a.

    Leibniz's law rewrites left to right only, so symmetry costs a
    reflexivity premise b = b plus one rewrite with template (x = b).
    """
    ident = conclusion(identity_branch)
    w = state.name("w")
    template = TemplateAux(Eq(Var(w), ident.lhs), w)
    return Inference(RuleApp("EqE", aux=template),
                     (identity_branch, refl_branch),
                     Eq(ident.rhs, ident.lhs))


class _Reducer:
    def __init__(self, d: Deduction, iota2a_style: int = 2):
        self.d = d
        self.state = FreshState.for_deductions(d)
        self.iota2a_style = iota2a_style

    def reduce(self, seg: Segment) -> Deduction:
        if seg.length > 1:
            return self.permute(seg)
        return self.detour(seg)

    # -- permutative reductions ------------------------------------------------

    def permute(self, seg: Segment) -> Deduction:
        e_path = seg.elim_path
        elim = node_at(self.d, e_path)
        through = node_at(self.d, seg.paths[-1])
        minors = _minor_indices(through)
        new_premises = list(through.premises)
        for j, idx in enumerate(minors):
            branch = through.premises[idx]
            if j == 0:
                hoisted = Inference(elim.rule, (branch,) + elim.premises[1:],
                                    elim.conclusion)
            else:
                hoisted = self._copy_elim(elim, branch)
            new_premises[idx] = hoisted
        new_through = Inference(through.rule, tuple(new_premises), elim.conclusion)
        return replace_at(self.d, e_path, new_through)

    def _copy_elim(self, elim: Inference, major: Deduction) -> Inference:
        minors = tuple(duplicate_fresh(m, self.state) for m in elim.premises[1:])
        rule = elim.rule
        if rule.label is not None:
            new_label = self.state.label()
            branches = _minor_indices(elim)
            minors = tuple(
                relabel(m, {rule.label: new_label}) if (i + 1) in branches else m
                for i, m in enumerate(minors))
            rule = RuleApp(rule.rule, eigen=rule.eigen, witness=rule.witness,
                           label=new_label, aux=rule.aux)
        if rule.eigen is not None:
            y2 = self.state.name(rule.eigen)
            minors = (subst_deduction(minors[0], rule.eigen, Var(y2)),) + minors[1:]
            rule = RuleApp(rule.rule, eigen=y2, witness=rule.witness,
                           label=rule.label, aux=rule.aux)
        return Inference(rule, (major,) + minors, elim.conclusion)

    # -- detour reductions -------------------------------------------------------

    def detour(self, seg: Segment) -> Deduction:
        e_path = seg.elim_path
        elim = node_at(self.d, e_path)
        intro = node_at(self.d, seg.paths[0])
        er = elim.rule.rule
        if er in ("AndE_L", "AndE_R"):
            repl = intro.premises[0 if er == "AndE_L" else 1]
        elif er == "ImpE":
            repl = self.detour_imp(intro, elim)
        elif er == "OrE":
            repl = self.detour_or(intro, elim)
        elif er == "AllE":
            repl = self.detour_all(intro, elim)
        elif er == "ExE":
            repl = self.detour_ex(intro, elim)
        elif er == "IotaE1":
            repl = self.detour_iota1(intro, elim)
        elif er == "IotaE2":
            repl = self.detour_iota2(intro, elim)
        elif er == "IotaE2A":
            if intro.rule.rule == "IotaI":
                repl = self.detour_iota2a(intro, elim)
            else:
                raise NotReducible(f"no reduction for {intro.rule.rule} into IotaE2A")
        elif er == "EqE":
            repl = self.remove_identity(intro, elim)
        else:
            raise NotReducible(f"no detour for elimination {er}")
        return replace_at(self.d, e_path, repl)

    def detour_imp(self, intro, elim):
        antecedent = conclusion(intro).left
        return _graft(intro.premises[0], intro.rule.label,
                      [(antecedent, elim.premises[1])], self.state)

    def detour_or(self, intro, elim):
        disj = conclusion(intro)
        if intro.rule.rule == "OrI_L":
            shape, branch = disj.left, elim.premises[1]
        else:
            shape, branch = disj.right, elim.premises[2]
        return _graft(branch, elim.rule.label, [(shape, intro.premises[0])], self.state)

    def detour_all(self, intro, elim):
        t = elim.rule.witness
        body = _subst_clean(intro.premises[0], intro.rule.eigen, t)
        if len(elim.premises) == 2:
            body = _graft(body, intro.rule.label,
                          [(Existence(t), elim.premises[1])], self.state)
        return body

    def detour_ex(self, intro, elim):
        t = intro.rule.witness
        ex = conclusion(intro)
        body = _subst_clean(elim.premises[1], elim.rule.eigen, t)
        pairs = [(substitute(ex.body, ex.var, t), intro.premises[0])]
        if len(intro.premises) == 2:
            pairs.append((Existence(t), intro.premises[1]))
        return _graft(body, elim.rule.label, pairs, self.state)

    def detour_iota1(self, intro, elim):
        t = intro.rule.witness
        iota = conclusion(intro)
        free = len(intro.premises) == 4
        body = _subst_clean(elim.premises[1], elim.rule.eigen, t)
        pairs = [(substitute(iota.restr, iota.var, t), intro.premises[0]),
                 (substitute(iota.scope, iota.var, t), intro.premises[1])]
        if free:
            pairs.append((Existence(t), intro.premises[2]))
        return _graft(body, elim.rule.label, pairs, self.state)

    def _uniqueness_instance(self, intro, t_new, restr_branch, exist_branch,
                             fresh_copy: bool):
        """The uniqueness branch of an introduction, instantiated at t_new
        and closed with the elimination's own premises; concludes
        t_new = witness.  Reductions that need two instances take the
        second as a fresh copy so labels stay unique."""
        iota = conclusion(intro)
        free = len(intro.premises) == 4
        branch = intro.premises[-1]
        if fresh_copy:
            branch = duplicate_fresh(branch, self.state)
        inst = _subst_clean(branch, intro.rule.eigen, t_new)
        pairs = [(substitute(iota.restr, iota.var, t_new), restr_branch)]
        if free:
            pairs.append((Existence(t_new), exist_branch))
        return _graft(inst, intro.rule.label, pairs, self.state)

    def detour_iota2(self, intro, elim):
        free = len(elim.premises) == 5
        t1 = intro.rule.witness
        goal = conclusion(elim)
        t2, t3 = goal.lhs, goal.rhs
        if free:
            ex2, ex3, f2, f3 = elim.premises[1:5]
        else:
            ex2 = ex3 = None
            f2, f3 = elim.premises[1:3]
        uses = iter((False, True))
        if t2 == t3:
            return _eqi_refl(t2, ex2, free, self.state)
        if t3 == t1:
            return self._uniqueness_instance(intro, t2, f2, ex2, next(uses))
        pi3 = self._uniqueness_instance(intro, t3, f3, ex3, next(uses))  # t3 = t1
        refl3 = _eqi_refl(t3, ex3, free, self.state)
        flipped = _flip_identity(pi3, refl3, self.state)                 # t1 = t3
        if t2 == t1:
            return flipped
        pi2 = self._uniqueness_instance(intro, t2, f2, ex2, next(uses))  # t2 = t1
        w = self.state.name("w")
        return Inference(RuleApp("EqE", aux=TemplateAux(Eq(t2, Var(w)), w)),
                         (flipped, pi2), Eq(t2, t3))

    def detour_iota2a(self, intro, elim):
        ex2, ex3, f2, f3, minor = elim.premises[1:6]
        t2 = conclusion(ex2).term
        t3 = conclusion(ex3).term
        t1 = intro.rule.witness
        aux = elim.rule.aux
        a, u = aux.formula, aux.var
        uses = iter((False, True))
        if alpha_eq(substitute(a, u, t2), substitute(a, u, t3)):
            return minor
        if self.iota2a_style == 1:
            # conclude t2 = t3 first, then one Leibniz step on the template
            if t3 == t1:
                ident = self._uniqueness_instance(intro, t2, f2, ex2, next(uses))
            elif t2 == t1:
                pi3 = self._uniqueness_instance(intro, t3, f3, ex3, next(uses))
                ident = _flip_identity(pi3, _eqi_refl(t3, ex3, True, self.state),
                                       self.state)
            else:
                pi3 = self._uniqueness_instance(intro, t3, f3, ex3, next(uses))
                flipped = _flip_identity(pi3, _eqi_refl(t3, ex3, True, self.state),
                                         self.state)
                pi2 = self._uniqueness_instance(intro, t2, f2, ex2, next(uses))
                w = self.state.name("w")
                ident = Inference(RuleApp("EqE", aux=TemplateAux(Eq(t2, Var(w)), w)),
                                  (flipped, pi2), Eq(t2, t3))
            return Inference(RuleApp("EqE", aux=aux), (ident, minor),
                             substitute(a, u, t3))
        # default: rewrite the template premise through the witness
        if t2 == t1:
            step1 = minor
        else:
            pi2 = self._uniqueness_instance(intro, t2, f2, ex2, next(uses))
            step1 = Inference(RuleApp("EqE", aux=aux), (pi2, minor),
                              substitute(a, u, t1))
        if t3 == t1:
            return step1
        pi3 = self._uniqueness_instance(intro, t3, f3, ex3, next(uses))  # t3 = t1
        flipped = _flip_identity(pi3, _eqi_refl(t3, ex3, True, self.state),
                                 self.state)                             # t1 = t3
        return Inference(RuleApp("EqE", aux=aux), (flipped, step1),
                         substitute(a, u, t3))

    def remove_identity(self, intro, elim):
        """Absorb a Leibniz step applied to a removable identity: IotaE2A is
        re-applied with the Leibniz premise and conclusion directly."""
        if not _as_identity_iota2a(intro):
            raise NotReducible(
                "identity segment is reducible only after the redundancy "
                "introducing its major premise has been removed")
        ident = conclusion(intro)
        major = conclusion(elim.premises[0])
        # orient the description premises to match the rewriting direction
        iota_p, ex_a, ex_b, f_a, f_b = intro.premises[:5]
        if conclusion(ex_a).term == major.lhs:
            premises = (iota_p, ex_a, ex_b, f_a, f_b, elim.premises[1])
        else:
            premises = (iota_p, ex_b, ex_a, f_b, f_a, elim.premises[1])
        return Inference(RuleApp("IotaE2A", aux=elim.rule.aux), premises,
                         elim.conclusion)


def classify(d: Deduction, seg: Segment) -> str:
    """Reduction kind a segment calls for, as recorded in traces."""
    elim = node_at(d, seg.elim_path)
    if seg.length > 1:
        through = node_at(d, seg.paths[-1])
        return f"Permute({elim.rule.rule},{through.rule.rule})"
    if seg.identity_site:
        return "IdentityRedundancy"
    return {
        "AndE_L": "DetourAnd", "AndE_R": "DetourAnd", "ImpE": "DetourImp",
        "OrE": "DetourOr", "AllE": "DetourAll", "ExE": "DetourEx",
        "IotaE1": "DetourIota1", "IotaE2": "DetourIota2",
        "IotaE2A": "DetourIota2A",
    }[elim.rule.rule]


def reduce_once(d: Deduction, seg: Segment, iota2a_style: int = 2) -> Deduction:
    """Apply the reduction the segment calls for.  Expects d freshened."""
    if seg not in find_maximal(d):
        raise NotReducible("segment is not maximal in this deduction")
    return _Reducer(d, iota2a_style).reduce(seg)


def normalize(d: Deduction, max_steps: int | None = None,
              iota2a_style: int = 2):
    """Reduce to normal form; returns (deduction, trace).

    The trace records one step per reduction with the rank before and
    after; ranks strictly decrease, which bounds the loop.  Already-normal
    input is returned unchanged with an empty trace.
    """
    segments = find_maximal(d)
    if not segments:
        return d, []
    d = freshen(d)
    trace = []
    step = 0
    while True:
        segments = find_maximal(d)
        if not segments:
            return d, trace
        if max_steps is not None and step >= max_steps:
            raise MaxStepsExceeded(f"no normal form within {max_steps} steps")
        before = rank_of(segments)
        seg = select_segment(d, segments)
        kind = classify(d, seg)
        d = _Reducer(d, iota2a_style).reduce(seg)
        after = rank(d)
        if not after < before:
            raise RankNotDecreased(
                f"step {step + 1} ({kind}) left rank at {before} -> {after}")
        step += 1
        trace.append(TraceStep(step, kind, seg.elim_path, before, after))


def trace_text(trace) -> str:
    return "".join(t.line() + "\n" for t in trace)
