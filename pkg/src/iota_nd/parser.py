"""Proof-script and formula text format.

Formulas: `_|_`, `A & B`, `A | B`, `A -> B`, `all x. A`, `ex x. A`,
`the x [A, B]`, `E! t`, `t1 = t2`, predicates `P(t1,...,tn)` or bare `P`.
`~A` is accepted and expanded to `A -> _|_`.  Precedence `&` > `|` > `->`
with `->` right-associative and `&`/`|` left-associative; quantifier bodies
extend as far right as possible.  Unicode connectives are accepted as
aliases and serialized back to ASCII.

Proof scripts are S-expressions, one deduction node per line when
serialized:

    (mode inf)
    (predicate F 1)
    (constant c)
    (deduction main
      (rule AndI
        (assume F(c))
        (assume G(c))
        => F(c) & G(c)))

Undeclared predicates and functions are declared automatically with the
arity of their first use; constants must be declared, since a bare
identifier in term position otherwise reads as a variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .proof import Assumption, Deduction, Inference, RuleApp, RULES, TemplateAux
from .syntax import (
    All, And, App, Bottom, Const, Eq, Ex, Existence, Formula, Imp, Iota, Or,
    Pred, Signature, Term, Var,
)


class ParseError(Exception):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}{message}")


_UNICODE_ALIASES = (
    ("∃!", "E!"), ("∧", "&"), ("∨", "|"), ("→", "->"), ("⊥", "_|_"),
    ("∀", "all "), ("∃", "ex "), ("ι", "the "), ("¬", "~"),
)

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<bot>_\|_)
  | (?P<ebang>E!)
  | (?P<darrow>=>)
  | (?P<arrow>->)
  | (?P<opt>:[A-Za-z]+)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z_][A-Za-z0-9_]*)*)
  | (?P<punct>[()\[\],.&|=~])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int
    # no whitespace between this token and the previous one; function
    # application requires its '(' glued to the name, which keeps premise
    # forms like (rule ...) out of witness terms
    glued: bool = False


def tokenize(text: str):
    for src, dst in _UNICODE_ALIASES:
        text = text.replace(src, dst)
    tokens = []
    line, col = 1, 1
    pos = 0
    glued = False
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind in ("ws", "comment"):
            glued = False
        else:
            tokens.append(Token(kind, value, line, col, glued))
            glued = True
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Tokens:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, kind, value=None) -> bool:
        t = self.peek()
        return t.kind == kind and (value is None or t.value == value)

    def expect(self, kind, value=None) -> Token:
        t = self.peek()
        if not self.at(kind, value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {t.value!r}", t.line, t.col)
        return self.next()

    def error(self, message):
        t = self.peek()
        raise ParseError(message, t.line, t.col)


# ---------------------------------------------------------------------------
# formula parsing
#
# Terms are parsed with every bare identifier as a variable; declared
# constants are substituted in by the resolution pass.

def _parse_term(ts: _Tokens) -> Term:
    t = ts.expect("ident")
    if ts.at("punct", "(") and ts.peek().glued:
        ts.next()
        args = [_parse_term(ts)]
        while ts.at("punct", ","):
            ts.next()
            args.append(_parse_term(ts))
        ts.expect("punct", ")")
        return App(t.value, tuple(args))
    return Var(t.value)


def _term_to_formula(t: Term, ts) -> Formula:
    if isinstance(t, Var):
        return Pred(t.name, ())
    if isinstance(t, App):
        return Pred(t.fn, t.args)
    ts.error("constant in formula position")


def _parse_atom(ts: _Tokens) -> Formula:
    if ts.at("bot"):
        ts.next()
        return Bottom()
    if ts.at("ebang"):
        ts.next()
        return Existence(_parse_term(ts))
    if ts.at("punct", "~"):
        ts.next()
        return Imp(_parse_atom(ts), Bottom())
    if ts.at("punct", "("):
        ts.next()
        f = _parse_formula(ts)
        ts.expect("punct", ")")
        return f
    if ts.at("ident", "all") or ts.at("ident", "ex"):
        kw = ts.next().value
        v = ts.expect("ident").value
        ts.expect("punct", ".")
        body = _parse_formula(ts)
        return All(v, body) if kw == "all" else Ex(v, body)
    if ts.at("ident", "the"):
        ts.next()
        v = ts.expect("ident").value
        ts.expect("punct", "[")
        restr = _parse_formula(ts)
        ts.expect("punct", ",")
        scope = _parse_formula(ts)
        ts.expect("punct", "]")
        return Iota(v, restr, scope)
    if ts.at("ident"):
        t = _parse_term(ts)
        if ts.at("punct", "="):
            ts.next()
            return Eq(t, _parse_term(ts))
        return _term_to_formula(t, ts)
    ts.error("expected a formula")


def _parse_and(ts: _Tokens) -> Formula:
    f = _parse_atom(ts)
    while ts.at("punct", "&"):
        ts.next()
        f = And(f, _parse_atom(ts))
    return f


def _parse_or(ts: _Tokens) -> Formula:
    f = _parse_and(ts)
    while ts.at("punct", "|"):
        ts.next()
        f = Or(f, _parse_and(ts))
    return f


def _parse_formula(ts: _Tokens) -> Formula:
    f = _parse_or(ts)
    if ts.at("arrow"):
        ts.next()
        return Imp(f, _parse_formula(ts))
    return f


def parse_formula(text: str, signature: Signature | None = None) -> Formula:
    """Parse one formula; auto-declares predicates/functions when signature
    is omitted."""
    ts = _Tokens(tokenize(text))
    f = _parse_formula(ts)
    if not ts.at("eof"):
        ts.error(f"trailing input {ts.peek().value!r}")
    sig = signature.copy() if signature is not None else Signature()
    strict = signature is not None
    f = _resolve_formula(f, sig, strict)
    return f


def parse_term(text: str, signature: Signature | None = None) -> Term:
    ts = _Tokens(tokenize(text))
    t = _parse_term(ts)
    if not ts.at("eof"):
        ts.error(f"trailing input {ts.peek().value!r}")
    sig = signature.copy() if signature is not None else Signature()
    return _resolve_term(t, sig, signature is not None)


# ---------------------------------------------------------------------------
# proof scripts

@dataclass
class ProofScript:
    mode: str | None = None
    signature: Signature = field(default_factory=Signature)
    deductions: dict = field(default_factory=dict)
    # (deduction name, node path) -> (line, col), for diagnostics
    positions: dict = field(default_factory=dict)


def _parse_opts(ts: _Tokens):
    eigen = witness = label = aux = None
    while ts.at("opt"):
        opt = ts.next().value
        if opt == ":eigen":
            eigen = ts.expect("ident").value
        elif opt == ":witness":
            witness = _parse_term(ts)
        elif opt == ":label":
            label = int(ts.expect("num").value)
            if label < 1:
                ts.error("labels start at 1")
        elif opt == ":aux":
            if ts.at("num"):
                aux = int(ts.next().value)
            else:
                ts.expect("punct", "[")
                f = _parse_formula(ts)
                ts.expect("punct", ",")
                v = ts.expect("ident").value
                ts.expect("punct", "]")
                aux = TemplateAux(f, v)
        else:
            ts.error(f"unknown option {opt}")
    return eigen, witness, label, aux


def _parse_dtree(ts: _Tokens, positions, name, path):
    open_tok = ts.expect("punct", "(")
    positions[(name, path)] = (open_tok.line, open_tok.col)
    head = ts.expect("ident")
    if head.value == "assume":
        f = _parse_formula(ts)
        label = None
        if ts.at("opt", ":label"):
            ts.next()
            label = int(ts.expect("num").value)
        ts.expect("punct", ")")
        return Assumption(f, label)
    if head.value == "rule":
        rname = ts.expect("ident").value
        if rname not in RULES:
            raise ParseError(f"unknown rule name {rname!r}", head.line, head.col)
        eigen, witness, label, aux = _parse_opts(ts)
        premises = []
        while ts.at("punct", "("):
            premises.append(_parse_dtree(ts, positions, name, path + (len(premises),)))
        ts.expect("darrow")
        concl = _parse_formula(ts)
        ts.expect("punct", ")")
        return Inference(RuleApp(rname, eigen=eigen, witness=witness, label=label, aux=aux),
                         tuple(premises), concl)
    raise ParseError(f"expected 'assume' or 'rule', found {head.value!r}",
                     head.line, head.col)


def parse_proof(text: str, auto_declare: bool = True) -> ProofScript:
    """Parse a proof script into deduction trees plus signature and mode."""
    ts = _Tokens(tokenize(text))
    script = ProofScript()
    while not ts.at("eof"):
        ts.expect("punct", "(")
        head = ts.expect("ident")
        kw = head.value
        if kw == "mode":
            m = ts.expect("ident").value
            if m not in ("i", "inf", "inf-prime"):
                raise ParseError(f"unknown mode {m!r}", head.line, head.col)
            script.mode = m
        elif kw == "predicate":
            n = ts.expect("ident").value
            script.signature.predicates[n] = int(ts.expect("num").value)
        elif kw == "function":
            n = ts.expect("ident").value
            k = int(ts.expect("num").value)
            if k < 1:
                ts.error("function arity must be at least 1")
            script.signature.functions[n] = k
        elif kw == "constant":
            script.signature.constants.add(ts.expect("ident").value)
        elif kw == "deduction":
            n = ts.expect("ident").value
            if n in script.deductions:
                raise ParseError(f"duplicate deduction name {n!r}", head.line, head.col)
            script.deductions[n] = _parse_dtree(ts, script.positions, n, ())
        else:
            raise ParseError(f"unknown form {kw!r}", head.line, head.col)
        ts.expect("punct", ")")
    _resolve_script(script, auto_declare)
    return script


# ---------------------------------------------------------------------------
# name resolution
#
# The grammar cannot tell a constant from a variable, nor (before arity
# inference) a fresh predicate from a misused function.  A post-pass walks
# every formula, records usage, validates it against the declarations and
# rewrites declared constants.

class ResolveError(Exception):
    pass


def _resolve_term(t: Term, sig: Signature, strict: bool) -> Term:
    if isinstance(t, Var):
        if t.name in sig.constants:
            return Const(t.name)
        if t.name in sig.predicates or t.name in sig.functions:
            raise ResolveError(f"{t.name!r} used as a term but declared otherwise")
        return t
    if isinstance(t, Const):
        return t
    if t.fn in sig.predicates or t.fn in sig.constants:
        raise ResolveError(f"{t.fn!r} used as a function but declared otherwise")
    if t.fn in sig.functions:
        if sig.functions[t.fn] != len(t.args):
            raise ResolveError(
                f"function {t.fn!r} used with arity {len(t.args)}, declared {sig.functions[t.fn]}")
    elif strict:
        raise ResolveError(f"undeclared function {t.fn!r}")
    else:
        sig.functions[t.fn] = len(t.args)
    return App(t.fn, tuple(_resolve_term(a, sig, strict) for a in t.args))


def _resolve_formula(f: Formula, sig: Signature, strict: bool) -> Formula:
    if isinstance(f, Pred):
        if f.name in sig.functions or f.name in sig.constants:
            raise ResolveError(f"{f.name!r} used as a predicate but declared otherwise")
        if f.name in sig.predicates:
            if sig.predicates[f.name] != len(f.args):
                raise ResolveError(
                    f"predicate {f.name!r} used with arity {len(f.args)}, "
                    f"declared {sig.predicates[f.name]}")
        elif strict:
            raise ResolveError(f"undeclared predicate {f.name!r}")
        else:
            sig.predicates[f.name] = len(f.args)
        return Pred(f.name, tuple(_resolve_term(a, sig, strict) for a in f.args))
    if isinstance(f, Eq):
        return Eq(_resolve_term(f.lhs, sig, strict), _resolve_term(f.rhs, sig, strict))
    if isinstance(f, Existence):
        return Existence(_resolve_term(f.term, sig, strict))
    if isinstance(f, Bottom):
        return f
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_resolve_formula(f.left, sig, strict),
                       _resolve_formula(f.right, sig, strict))
    if isinstance(f, (All, Ex)):
        if f.var in sig.constants:
            raise ResolveError(f"bound variable {f.var!r} collides with a constant")
        return type(f)(f.var, _resolve_formula(f.body, sig, strict))
    if isinstance(f, Iota):
        if f.var in sig.constants:
            raise ResolveError(f"bound variable {f.var!r} collides with a constant")
        return Iota(f.var, _resolve_formula(f.restr, sig, strict),
                    _resolve_formula(f.scope, sig, strict))
    raise TypeError(f"not a formula: {f!r}")


def _resolve_deduction(d: Deduction, sig: Signature, strict: bool) -> Deduction:
    if isinstance(d, Assumption):
        return Assumption(_resolve_formula(d.formula, sig, strict), d.label)
    r = d.rule
    witness = None if r.witness is None else _resolve_term(r.witness, sig, strict)
    aux = r.aux
    if isinstance(aux, TemplateAux):
        aux = TemplateAux(_resolve_formula(aux.formula, sig, strict), aux.var)
    rule = RuleApp(r.rule, eigen=r.eigen, witness=witness, label=r.label, aux=aux)
    return Inference(rule, tuple(_resolve_deduction(p, sig, strict) for p in d.premises),
                     _resolve_formula(d.conclusion, sig, strict))


def _resolve_script(script: ProofScript, auto_declare: bool):
    if not script.signature.disjoint():
        raise ResolveError("predicate, function and constant names must be disjoint")
    for name, d in list(script.deductions.items()):
        try:
            script.deductions[name] = _resolve_deduction(d, script.signature, not auto_declare)
        except ResolveError as e:
            raise ResolveError(f"in deduction {name!r}: {e}") from None


# ---------------------------------------------------------------------------
# serialization
#
# Canonical form: ASCII connectives, single spaces around binary operators,
# minimal parentheses, declarations sorted by kind then name, one deduction
# node per line with 2-space indentation.

def term_text(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return "%s(%s)" % (t.fn, ", ".join(term_text(a) for a in t.args))


_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_ATOM = 1, 2, 3, 4


def _formula_text(f: Formula, prec: int) -> str:
    if isinstance(f, Bottom):
        return "_|_"
    if isinstance(f, Pred):
        if not f.args:
            return f.name
        return "%s(%s)" % (f.name, ", ".join(term_text(a) for a in f.args))
    if isinstance(f, Eq):
        return f"{term_text(f.lhs)} = {term_text(f.rhs)}"
    if isinstance(f, Existence):
        return f"E! {term_text(f.term)}"
    if isinstance(f, Iota):
        return (f"the {f.var} [{_formula_text(f.restr, 0)}, "
                f"{_formula_text(f.scope, 0)}]")
    if isinstance(f, (All, Ex)):
        kw = "all" if isinstance(f, All) else "ex"
        out = f"{kw} {f.var}. {_formula_text(f.body, 0)}"
        return f"({out})" if prec > 0 else out
    if isinstance(f, Imp):
        out = f"{_formula_text(f.left, _PREC_OR)} -> {_formula_text(f.right, _PREC_IMP)}"
        return f"({out})" if prec > _PREC_IMP else out
    if isinstance(f, Or):
        out = f"{_formula_text(f.left, _PREC_OR)} | {_formula_text(f.right, _PREC_AND)}"
        return f"({out})" if prec > _PREC_OR else out
    if isinstance(f, And):
        out = f"{_formula_text(f.left, _PREC_AND)} & {_formula_text(f.right, _PREC_ATOM)}"
        return f"({out})" if prec > _PREC_AND else out
    raise TypeError(f"not a formula: {f!r}")


def formula_text(f: Formula) -> str:
    return _formula_text(f, 0)


def _rule_opts(r: RuleApp) -> str:
    parts = []
    if r.eigen is not None:
        parts.append(f":eigen {r.eigen}")
    if r.witness is not None:
        parts.append(f":witness {term_text(r.witness)}")
    if r.label is not None:
        parts.append(f":label {r.label}")
    if r.aux is not None:
        if isinstance(r.aux, TemplateAux):
            parts.append(f":aux [{formula_text(r.aux.formula)}, {r.aux.var}]")
        else:
            parts.append(f":aux {r.aux}")
    return (" " + " ".join(parts)) if parts else ""


def _deduction_lines(d: Deduction, indent: int, out: list):
    pad = "  " * indent
    if isinstance(d, Assumption):
        label = f" :label {d.label}" if d.label is not None else ""
        out.append(f"{pad}(assume {formula_text(d.formula)}{label})")
        return
    out.append(f"{pad}(rule {d.rule.rule}{_rule_opts(d.rule)}")
    for p in d.premises:
        _deduction_lines(p, indent + 1, out)
    out.append(f"{pad}  => {formula_text(d.conclusion)})")


def deduction_text(d: Deduction, indent: int = 0) -> str:
    out: list = []
    _deduction_lines(d, indent, out)
    return "\n".join(out)


def script_text(script: ProofScript) -> str:
    out = []
    if script.mode is not None:
        out.append(f"(mode {script.mode})")
    sig = script.signature
    for n in sorted(sig.predicates):
        out.append(f"(predicate {n} {sig.predicates[n]})")
    for n in sorted(sig.functions):
        out.append(f"(function {n} {sig.functions[n]})")
    for n in sorted(sig.constants):
        out.append(f"(constant {n})")
    for name, d in script.deductions.items():
        out.append(f"(deduction {name}")
        out.append(deduction_text(d, 1) + ")")
    return "\n".join(out) + "\n"


def serialize(x) -> str:
    """Canonical text for a formula, term, deduction or script."""
    if isinstance(x, ProofScript):
        return script_text(x)
    if isinstance(x, (Assumption, Inference)):
        return deduction_text(x)
    if isinstance(x, (Var, Const, App)):
        return term_text(x)
    return formula_text(x)
