"""Seeded random generator of checked deductions.

Proofs are grown top-down from a random goal: intro moves decompose the
goal, elimination moves derive it from a larger formula whose proof is
itself random (often ending in the matching introduction, which plants a
redex), and base moves close branches with assumptions.  Eigenvariables
are globally fresh, and open assumptions never mention an enclosing
eigenvariable, so every generated deduction checks by construction.
"""

import random

from iota_nd import Mode
from iota_nd.proof import Assumption, Inference, RuleApp
from iota_nd.syntax import (
    All, And, App, Bottom, Const, Eq, Ex, Existence, Imp, Iota, Or, Pred,
    Var, alpha_eq, free_vars, substitute,
)

CONSTS = (Const("c"), Const("d"))


class ProofGen:
    def __init__(self, seed: int, mode: Mode, max_depth: int = 8,
                 max_degree: int = 4):
        self.rng = random.Random(seed)
        self.mode = mode
        self.free = mode.free
        self.max_depth = max_depth
        self.max_degree = max_degree
        self._labels = 0
        self._vars = 0

    def label(self) -> int:
        self._labels += 1
        return self._labels

    def fresh_var(self) -> str:
        self._vars += 1
        return f"v{self._vars}"

    # -- formulas ---------------------------------------------------------

    def term(self, vars=()):
        pool = list(CONSTS) + [Var(v) for v in vars]
        t = self.rng.choice(pool)
        if self.rng.random() < 0.15:
            return App("f", (t,))
        return t

    def atom(self, vars=()):
        kind = self.rng.randrange(5)
        if kind == 0:
            return Pred("P", ())
        if kind == 1:
            return Pred("F", (self.term(vars),))
        if kind == 2:
            return Pred("R", (self.term(vars), self.term(vars)))
        if kind == 3:
            return Eq(self.term(vars), self.term(vars))
        return Existence(self.term(vars))

    def formula(self, budget: int, vars=()):
        if budget <= 0 or self.rng.random() < 0.3:
            return self.atom(vars)
        kind = self.rng.randrange(7)
        if kind == 0:
            return Bottom()
        if kind < 4:
            cls = (And, Or, Imp)[kind - 1]
            split = self.rng.randrange(budget)
            return cls(self.formula(split, vars), self.formula(budget - 1 - split, vars))
        v = self.fresh_var()
        inner = vars + (v,)
        if kind < 6:
            cls = (All, Ex)[kind - 4]
            return cls(v, self.formula(budget - 1, inner))
        split = self.rng.randrange(budget)
        return Iota(v, self.formula(split, inner),
                    self.formula(budget - 1 - split, inner))

    def goal(self):
        return self.formula(self.rng.randrange(1, self.max_degree + 1))

    # -- proofs -----------------------------------------------------------

    def proof(self, target, depth, ctx=(), forbidden=frozenset()):
        """A deduction of target; open assumptions avoid forbidden vars."""
        hyps = [(f, l) for f, l in ctx if alpha_eq(f, target)]
        can_assume = not (free_vars(target) & forbidden)
        if depth <= 0 or self.rng.random() < 0.25:
            if hyps and (self.rng.random() < 0.7 or not can_assume):
                f, l = self.rng.choice(hyps)
                return Assumption(f, l)
            if can_assume:
                return Assumption(target)
            if isinstance(target, Bottom):
                return Assumption(target)
            if _atomic(target):
                return Inference(RuleApp("BottomE"),
                                 (Assumption(Bottom()),), target)
            # fall through to a forced introduction
        if not _atomic(target) and not isinstance(target, Bottom) \
                and (depth <= 0 or self.rng.random() < 0.6):
            return self.intro(target, depth - 1, ctx, forbidden)
        return self.elim(target, depth - 1, ctx, forbidden)

    def intro(self, target, depth, ctx, forbidden):
        if isinstance(target, And):
            return Inference(RuleApp("AndI"),
                             (self.proof(target.left, depth, ctx, forbidden),
                              self.proof(target.right, depth, ctx, forbidden)),
                             target)
        if isinstance(target, Or):
            side = self.rng.choice(("OrI_L", "OrI_R"))
            picked = target.left if side == "OrI_L" else target.right
            return Inference(RuleApp(side),
                             (self.proof(picked, depth, ctx, forbidden),), target)
        if isinstance(target, Imp):
            lbl = self.label()
            body = self.proof(target.right, depth, ctx + ((target.left, lbl),),
                              forbidden)
            return Inference(RuleApp("ImpI", label=lbl), (body,), target)
        if isinstance(target, All):
            y = self.fresh_var()
            inst = substitute(target.body, target.var, Var(y))
            if self.free:
                lbl = self.label()
                body = self.proof(inst, depth, ctx + ((Existence(Var(y)), lbl),),
                                  forbidden | {y})
                return Inference(RuleApp("AllI", eigen=y, label=lbl), (body,), target)
            body = self.proof(inst, depth, ctx, forbidden | {y})
            return Inference(RuleApp("AllI", eigen=y), (body,), target)
        if isinstance(target, Ex):
            t = self.term()
            inst = self.proof(substitute(target.body, target.var, t),
                              depth, ctx, forbidden)
            premises = (inst, self.proof(Existence(t), depth, ctx, forbidden)) \
                if self.free else (inst,)
            return Inference(RuleApp("ExI", witness=t), premises, target)
        if isinstance(target, Iota):
            t = self.term()
            z = self.fresh_var()
            lbl = self.label()
            premises = [self.proof(substitute(target.restr, target.var, t),
                                   depth, ctx, forbidden),
                        self.proof(substitute(target.scope, target.var, t),
                                   depth, ctx, forbidden)]
            extra = ((substitute(target.restr, target.var, Var(z)), lbl),)
            if self.free:
                premises.append(self.proof(Existence(t), depth, ctx, forbidden))
                extra += ((Existence(Var(z)), lbl),)
            premises.append(self.proof(Eq(Var(z), t), depth, ctx + extra,
                                       forbidden | {z}))
            return Inference(RuleApp("IotaI", witness=t, eigen=z, label=lbl),
                             tuple(premises), target)
        raise AssertionError(f"no introduction for {target!r}")

    def elim(self, target, depth, ctx, forbidden):
        moves = ["and", "imp", "or", "ex", "iota1"]
        if _atomic(target):
            moves.append("efq")
            if self.free and isinstance(target, Existence) \
                    and not isinstance(target.term, App):
                moves.append("ad")
        if isinstance(target, Eq):
            if target.lhs == target.rhs:
                moves.append("refl")
            elif self.mode is not Mode.INF_PRIME:
                moves.append("iota2")
        move = self.rng.choice(moves)
        junk = self.formula(1)
        if move == "and":
            host = And(target, junk) if self.rng.random() < 0.5 else And(junk, target)
            rule = "AndE_L" if host.left is target else "AndE_R"
            return Inference(RuleApp(rule),
                             (self.proof(host, depth, ctx, forbidden),), target)
        if move == "imp":
            return Inference(
                RuleApp("ImpE"),
                (self.proof(Imp(junk, target), depth, ctx, forbidden),
                 self.proof(junk, depth, ctx, forbidden)), target)
        if move == "or":
            j2 = self.formula(1)
            lbl = self.label()
            return Inference(
                RuleApp("OrE", label=lbl),
                (self.proof(Or(junk, j2), depth, ctx, forbidden),
                 self.proof(target, depth, ctx + ((junk, lbl),), forbidden),
                 self.proof(target, depth, ctx + ((j2, lbl),), forbidden)),
                target)
        if move == "ex":
            b = self.fresh_var()
            body = self.formula(1, (b,))
            y = self.fresh_var()
            lbl = self.label()
            extra = ((substitute(body, b, Var(y)), lbl),)
            if self.free:
                extra += ((Existence(Var(y)), lbl),)
            minor = self.proof(target, depth, ctx + extra, forbidden | {y})
            return Inference(
                RuleApp("ExE", eigen=y, label=lbl),
                (self.proof(Ex(b, body), depth, ctx, forbidden), minor), target)
        if move == "iota1":
            b = self.fresh_var()
            restr = self.formula(1, (b,))
            scope = self.formula(1, (b,))
            z = self.fresh_var()
            lbl = self.label()
            extra = ((substitute(restr, b, Var(z)), lbl),
                     (substitute(scope, b, Var(z)), lbl))
            if self.free:
                extra += ((Existence(Var(z)), lbl),)
            minor = self.proof(target, depth, ctx + extra, forbidden | {z})
            return Inference(
                RuleApp("IotaE1", eigen=z, label=lbl),
                (self.proof(Iota(b, restr, scope), depth, ctx, forbidden), minor),
                target)
        if move == "efq":
            return Inference(RuleApp("BottomE"),
                             (self.proof(Bottom(), depth, ctx, forbidden),), target)
        if move == "ad":
            host = Pred("F", (target.term,))
            return Inference(RuleApp("AD", aux=1),
                             (self.proof(host, depth, ctx, forbidden),), target)
        if move == "refl":
            t = target.lhs
            if self.free:
                return Inference(RuleApp("EqI_n"),
                                 (self.proof(Existence(t), depth, ctx, forbidden),),
                                 target)
            return Inference(RuleApp("EqI"), (), target)
        if move == "iota2":
            b = self.fresh_var()
            restr = self.formula(1, (b,))
            iota = Iota(b, restr, self.formula(1, (b,)))
            t1, t2 = target.lhs, target.rhs
            premises = [self.proof(iota, depth, ctx, forbidden)]
            if self.free:
                premises.append(self.proof(Existence(t1), depth, ctx, forbidden))
                premises.append(self.proof(Existence(t2), depth, ctx, forbidden))
            premises.append(self.proof(substitute(restr, b, t1), depth, ctx, forbidden))
            premises.append(self.proof(substitute(restr, b, t2), depth, ctx, forbidden))
            return Inference(RuleApp("IotaE2"), tuple(premises), target)
        raise AssertionError(move)

    def deduction(self):
        return self.proof(self.goal(), self.max_depth)


def _atomic(f):
    return isinstance(f, (Pred, Eq, Existence))


def generate(seed: int, mode: Mode, max_depth: int = 8, max_degree: int = 4):
    return ProofGen(seed, mode, max_depth, max_degree).deduction()
