"""Natural deduction with a binary definite-description quantifier.

Kernel for checking and normalizing deductions in intuitionist logic and
its negative free variants, where "the F is G" is a primitive binary
quantifier rather than a term former.
"""

from .calculus import CheckError, ErrorKind, Mode, check, derive_hintikka, \
    instantiate_russell_bridge, mode_from_name, russell_formula
from .normalizer import Rank, Segment, TraceStep, find_maximal, normalize, \
    rank, reduce_once
from .parser import ParseError, ProofScript, ResolveError, parse_formula, \
    parse_proof, parse_term, serialize
from .proof import Assumption, Deduction, EigenClash, Inference, RuleApp, \
    TemplateAux, conclusion, freshen, open_assumptions, subst_deduction
from .syntax import All, And, App, Bottom, Const, Eq, Ex, Existence, Formula, \
    Imp, Iota, Or, Pred, Signature, Term, Var, alpha_eq, degree, free_vars, \
    is_free_for, substitute

__all__ = [name for name in dir() if not name.startswith("_")]
