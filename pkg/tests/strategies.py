"""Hypothesis generators for well-formed syntax.

Parameter names and binder names are kept disjoint so that printing and
re-parsing cannot turn a parameter into a bound variable.
"""
from hypothesis import strategies as st

from tfocalc.syntax import (
    BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists,
)

PARAMS = ("a", "b", "c")
BINDERS = ("x", "y", "z")
TFOS = ("tau", "iota", "eps", "set", "count", "lambda")


@st.composite
def terms(draw, env=(), depth=2, params=PARAMS):
    if depth > 0 and draw(st.integers(0, 4)) == 0:
        op = draw(st.sampled_from(TFOS))
        v = draw(st.sampled_from(BINDERS))
        return Tfo(op, v, draw(formulas(env + (v,), depth - 1, params)))
    pool = [Param(n) for n in params] + [BoundVar(v) for v in env]
    return draw(st.sampled_from(pool))


@st.composite
def atoms(draw, env=(), depth=2, params=PARAMS):
    t = lambda: draw(terms(env, depth, params))  # noqa: E731
    k = draw(st.integers(0, 6))
    if k == 0:
        return Pred("P", (t(),))
    if k == 1:
        return Pred("R", (t(), t()))
    if k == 2:
        return Pred("G")
    if k == 3:
        return Eq(t(), t())
    if k == 4:
        return In(t(), t())
    if k == 5:
        return Ex(t())
    return Pred("Q", (t(),))


@st.composite
def formulas(draw, env=(), depth=3, params=PARAMS):
    if depth <= 0:
        return draw(atoms(env, 0, params))
    k = draw(st.integers(0, 8))
    if k <= 2:
        return draw(atoms(env, depth - 1, params))
    if k == 3:
        return Not(draw(formulas(env, depth - 1, params)))
    if k in (4, 5):
        cls = draw(st.sampled_from((And, Or, Imp, Iff)))
        return cls(draw(formulas(env, depth - 1, params)), draw(formulas(env, depth - 1, params)))
    v = draw(st.sampled_from(BINDERS))
    cls = Forall if k in (6, 7) else Exists
    return cls(v, draw(formulas(env + (v,), depth - 1, params)))


closed_terms = terms(())
