"""Hypothesis strategies for random terms and formulas."""

import hypothesis.strategies as st

from iota_nd.syntax import (
    All, And, App, Bottom, Const, Eq, Ex, Existence, Imp, Iota, Or, Pred, Var,
)

VARS = ("x", "y", "z", "w")

variables = st.sampled_from(VARS).map(Var)
constants = st.sampled_from(("c", "d")).map(Const)


def terms(max_depth=2):
    base = variables | constants
    return st.recursive(
        base,
        lambda sub: st.builds(App, st.sampled_from(("f", "g")),
                              st.tuples(sub) | st.tuples(sub, sub)),
        max_leaves=4)


def atoms():
    t = terms()
    return st.one_of(
        st.builds(Pred, st.just("P"), st.just(())),
        st.builds(Pred, st.just("F"), st.tuples(t)),
        st.builds(Pred, st.just("R"), st.tuples(t, t)),
        st.builds(Eq, t, t),
        st.builds(Existence, t),
    )


def formulas():
    binder = st.sampled_from(VARS)
    return st.recursive(
        atoms() | st.just(Bottom()),
        lambda sub: st.one_of(
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Imp, sub, sub),
            st.builds(All, binder, sub),
            st.builds(Ex, binder, sub),
            st.builds(Iota, binder, sub, sub),
        ),
        max_leaves=8)
