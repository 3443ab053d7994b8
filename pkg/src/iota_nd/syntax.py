"""Terms and formulas.

The formula language is first-order intuitionist logic with identity, an
atomic existence predicate E!t, and the binary quantifier `the x [F, G]`
("the F is G"), which binds x in both F and G.  Substitution is
capture-avoiding: bound variables are renamed on demand, with deterministic
fresh names so that golden tests and serialized output are stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple

    def __post_init__(self):
        if len(self.args) < 1:
            raise ValueError("function application needs at least one argument")

    def __str__(self):
        return "%s(%s)" % (self.fn, ", ".join(str(a) for a in self.args))


Term = Var | Const | App


# ---------------------------------------------------------------------------
# formulas

@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Existence:
    """The atomic existence predicate E!t ("t denotes")."""

    term: Term


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class All:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Ex:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Iota:
    """`the var [restr, scope]`: the restr is/does scope.  Binds var in both."""

    var: str
    restr: "Formula"
    scope: "Formula"


Formula = Pred | Eq | Existence | Bottom | And | Or | Imp | All | Ex | Iota

ATOMIC_CLASSES = (Pred, Eq, Existence)
BINARY_CLASSES = (And, Or, Imp)


def is_atomic(f: Formula) -> bool:
    return isinstance(f, ATOMIC_CLASSES)


def atomic_args(f: Formula) -> tuple:
    """Argument terms of an atomic formula, in display order."""
    if isinstance(f, Pred):
        return f.args
    if isinstance(f, Eq):
        return (f.lhs, f.rhs)
    if isinstance(f, Existence):
        return (f.term,)
    raise TypeError(f"not atomic: {f!r}")


# ---------------------------------------------------------------------------
# signatures

@dataclass
class Signature:
    predicates: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    constants: set = field(default_factory=set)

    def copy(self):
        return Signature(dict(self.predicates), dict(self.functions), set(self.constants))

    def disjoint(self) -> bool:
        names = list(self.predicates) + list(self.functions) + list(self.constants)
        return len(names) == len(set(names))


# ---------------------------------------------------------------------------
# variables

def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    out = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


@lru_cache(maxsize=None)
def free_vars(e) -> frozenset:
    """Variables with at least one free occurrence in a term or formula."""
    if isinstance(e, (Var, Const, App)):
        return term_vars(e)
    if isinstance(e, Pred):
        out = frozenset()
        for a in e.args:
            out |= term_vars(a)
        return out
    if isinstance(e, Eq):
        return term_vars(e.lhs) | term_vars(e.rhs)
    if isinstance(e, Existence):
        return term_vars(e.term)
    if isinstance(e, Bottom):
        return frozenset()
    if isinstance(e, BINARY_CLASSES):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, (All, Ex)):
        return free_vars(e.body) - {e.var}
    if isinstance(e, Iota):
        return (free_vars(e.restr) | free_vars(e.scope)) - {e.var}
    raise TypeError(f"not a term or formula: {e!r}")


@lru_cache(maxsize=None)
def var_names(e) -> frozenset:
    """Every variable name occurring in e, free or bound, binders included."""
    if isinstance(e, (Var, Const, App, Pred, Eq, Existence)):
        return free_vars(e)
    if isinstance(e, Bottom):
        return frozenset()
    if isinstance(e, BINARY_CLASSES):
        return var_names(e.left) | var_names(e.right)
    if isinstance(e, (All, Ex)):
        return var_names(e.body) | {e.var}
    if isinstance(e, Iota):
        return var_names(e.restr) | var_names(e.scope) | {e.var}
    raise TypeError(f"not a term or formula: {e!r}")


@lru_cache(maxsize=None)
def degree(f: Formula) -> int:
    """Number of connective occurrences.  Bottom counts 1; atoms count 0."""
    if is_atomic(f):
        return 0
    if isinstance(f, Bottom):
        return 1
    if isinstance(f, BINARY_CLASSES):
        return 1 + degree(f.left) + degree(f.right)
    if isinstance(f, (All, Ex)):
        return 1 + degree(f.body)
    if isinstance(f, Iota):
        return 1 + degree(f.restr) + degree(f.scope)
    raise TypeError(f"not a formula: {f!r}")


def fresh_name(base: str, used) -> str:
    """Least numeric suffix on base avoiding every name in used."""
    for k in count(1):
        candidate = f"{base}{k}"
        if candidate not in used:
            return candidate
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# substitution

def subst_term(t: Term, x: str, r: Term) -> Term:
    if isinstance(t, Var):
        return r if t.name == x else t
    if isinstance(t, Const):
        return t
    return App(t.fn, tuple(subst_term(a, x, r) for a in t.args))


def is_free_for(t: Term, x: str, f: Formula) -> bool:
    """No free variable of t would be captured by substituting t for x in f."""
    tv = term_vars(t)

    def go(g):
        if is_atomic(g) or isinstance(g, Bottom):
            return True
        if isinstance(g, BINARY_CLASSES):
            return go(g.left) and go(g.right)
        if isinstance(g, (All, Ex)):
            if g.var == x or x not in free_vars(g.body):
                return True
            return g.var not in tv and go(g.body)
        if isinstance(g, Iota):
            if g.var == x or x not in free_vars(g):
                return True
            return g.var not in tv and go(g.restr) and go(g.scope)
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Replace free x by t, renaming bound variables where capture threatens."""
    if isinstance(f, Pred):
        return Pred(f.name, tuple(subst_term(a, x, t) for a in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.lhs, x, t), subst_term(f.rhs, x, t))
    if isinstance(f, Existence):
        return Existence(subst_term(f.term, x, t))
    if isinstance(f, Bottom):
        return f
    if isinstance(f, BINARY_CLASSES):
        return type(f)(substitute(f.left, x, t), substitute(f.right, x, t))
    if isinstance(f, (All, Ex)):
        if f.var == x or x not in free_vars(f.body):
            return f
        y, body = f.var, f.body
        if y in term_vars(t):
            y2 = fresh_name(y, term_vars(t) | var_names(body) | {x})
            body = substitute(body, y, Var(y2))
            y = y2
        return type(f)(y, substitute(body, x, t))
    if isinstance(f, Iota):
        if f.var == x or x not in free_vars(f):
            return f
        y, restr, scope = f.var, f.restr, f.scope
        if y in term_vars(t):
            y2 = fresh_name(y, term_vars(t) | var_names(restr) | var_names(scope) | {x})
            restr = substitute(restr, y, Var(y2))
            scope = substitute(scope, y, Var(y2))
            y = y2
        return Iota(y, substitute(restr, x, t), substitute(scope, x, t))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# alpha-equivalence

def _term_alpha(t1, t2, env1, env2):
    if isinstance(t1, Var) and isinstance(t2, Var):
        b1, b2 = env1.get(t1.name), env2.get(t2.name)
        if b1 is not None or b2 is not None:
            return b1 == b2
        return t1.name == t2.name
    if isinstance(t1, Const) and isinstance(t2, Const):
        return t1.name == t2.name
    if isinstance(t1, App) and isinstance(t2, App):
        return (t1.fn == t2.fn and len(t1.args) == len(t2.args)
                and all(_term_alpha(a, b, env1, env2) for a, b in zip(t1.args, t2.args)))
    return False


def _alpha(f1, f2, env1, env2, depth):
    if type(f1) is not type(f2):
        return False
    if isinstance(f1, Pred):
        return (f1.name == f2.name and len(f1.args) == len(f2.args)
                and all(_term_alpha(a, b, env1, env2) for a, b in zip(f1.args, f2.args)))
    if isinstance(f1, Eq):
        return (_term_alpha(f1.lhs, f2.lhs, env1, env2)
                and _term_alpha(f1.rhs, f2.rhs, env1, env2))
    if isinstance(f1, Existence):
        return _term_alpha(f1.term, f2.term, env1, env2)
    if isinstance(f1, Bottom):
        return True
    if isinstance(f1, BINARY_CLASSES):
        return (_alpha(f1.left, f2.left, env1, env2, depth)
                and _alpha(f1.right, f2.right, env1, env2, depth))
    if isinstance(f1, (All, Ex)):
        e1 = dict(env1); e1[f1.var] = depth
        e2 = dict(env2); e2[f2.var] = depth
        return _alpha(f1.body, f2.body, e1, e2, depth + 1)
    if isinstance(f1, Iota):
        e1 = dict(env1); e1[f1.var] = depth
        e2 = dict(env2); e2[f2.var] = depth
        return (_alpha(f1.restr, f2.restr, e1, e2, depth + 1)
                and _alpha(f1.scope, f2.scope, e1, e2, depth + 1))
    raise TypeError(f"not a formula: {f1!r}")


def alpha_eq(f1: Formula, f2: Formula) -> bool:
    """Identity up to renaming of bound variables."""
    return _alpha(f1, f2, {}, {}, 0)


def alpha_eq_under(f1, f2, pairs) -> bool:
    """alpha_eq after identifying the free-variable pairs (x1, x2) in pairs.

    Used to compare deductions up to renaming of eigenvariables.
    """
    env1, env2 = {}, {}
    for d, (a, b) in enumerate(pairs):
        env1[a] = ("r", d)
        env2[b] = ("r", d)
    return _alpha(f1, f2, env1, env2, 0)


@lru_cache(maxsize=None)
def canon(f: Formula) -> Formula:
    """Alpha-canonical form: bound variables renamed to $0, $1, ... by depth.

    '$' is not in the identifier grammar, so canonical names never collide
    with source-level variables.  canon(a) == canon(b) iff alpha_eq(a, b).
    """

    def go(g, env, depth):
        if isinstance(g, Pred):
            return Pred(g.name, tuple(goterm(a, env) for a in g.args))
        if isinstance(g, Eq):
            return Eq(goterm(g.lhs, env), goterm(g.rhs, env))
        if isinstance(g, Existence):
            return Existence(goterm(g.term, env))
        if isinstance(g, Bottom):
            return g
        if isinstance(g, BINARY_CLASSES):
            return type(g)(go(g.left, env, depth), go(g.right, env, depth))
        if isinstance(g, (All, Ex)):
            name = f"${depth}"
            env2 = dict(env); env2[g.var] = name
            return type(g)(name, go(g.body, env2, depth + 1))
        if isinstance(g, Iota):
            name = f"${depth}"
            env2 = dict(env); env2[g.var] = name
            return Iota(name, go(g.restr, env2, depth + 1), go(g.scope, env2, depth + 1))
        raise TypeError(f"not a formula: {g!r}")

    def goterm(t, env):
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, Const):
            return t
        return App(t.fn, tuple(goterm(a, env) for a in t.args))

    return go(f, {}, 0)
