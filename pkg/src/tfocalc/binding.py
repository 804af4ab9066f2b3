"""Substitution, alpha-equivalence, freshness and free parameters."""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .syntax import (
    BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists,
    Term, well_formed,
)


@dataclass(frozen=True)
class Substitution:
    """``phi[target/replacement]``; target is a Param or a BoundVar name opened
    from a binder."""
    target: Union[Param, BoundVar]
    replacement: Term


class IllFormed(ValueError):
    pass


def _replace(x, target, repl):
    # Only free occurrences are replaced; a binder of the target's name stops
    # BoundVar substitution. The replacement is closed, so it cannot be captured.
    match x:
        case BoundVar() | Param():
            return repl if x == target else x
        case Tfo(op, v, b):
            if isinstance(target, BoundVar) and v == target.name:
                return x
            return Tfo(op, v, _replace(b, target, repl))
        case Pred(n, args):
            return Pred(n, tuple(_replace(a, target, repl) for a in args))
        case Eq(l, r):
            return Eq(_replace(l, target, repl), _replace(r, target, repl))
        case In(l, r):
            return In(_replace(l, target, repl), _replace(r, target, repl))
        case Ex(t):
            return Ex(_replace(t, target, repl))
        case Not(s):
            return Not(_replace(s, target, repl))
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return type(x)(_replace(l, target, repl), _replace(r, target, repl))
        case Forall(v, b) | Exists(v, b):
            if isinstance(target, BoundVar) and v == target.name:
                return x
            return type(x)(v, _replace(b, target, repl))
    raise TypeError(f"cannot substitute into {x!r}")


def substitute(phi, s: Substitution, check: bool = False):
    """Replace every free occurrence of ``s.target`` in ``phi`` by ``s.replacement``."""
    if check:
        ok, diags = well_formed(s.replacement)
        if not ok:
            raise IllFormed("; ".join(diags))
    return _replace(phi, s.target, s.replacement)


def subst_param(x, name: str, repl: Term):
    return _replace(x, Param(name), repl)


def instantiate(binder, t: Term):
    """Body of a quantifier or tfo with its bound variable replaced by ``t``."""
    return _replace(binder.body, BoundVar(binder.var), t)


def substitute_multiset(gamma: Iterable, s: Substitution) -> tuple:
    return tuple(substitute(phi, s) for phi in gamma)


# --- nameless (de Bruijn) form ---------------------------------------------

def _nl(x, env: tuple):
    match x:
        case BoundVar(n):
            for i, m in enumerate(reversed(env)):
                if m == n:
                    return BoundVar(str(i))
            return BoundVar("?" + n)
        case Param():
            return x
        case Tfo(op, v, b):
            return Tfo(op, "", _nl(b, env + (v,)))
        case Pred(n, args):
            return Pred(n, tuple(_nl(a, env) for a in args))
        case Eq(l, r) | In(l, r):
            return type(x)(_nl(l, env), _nl(r, env))
        case Ex(t):
            return Ex(_nl(t, env))
        case Not(s):
            return Not(_nl(s, env))
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return type(x)(_nl(l, env), _nl(r, env))
        case Forall(v, b) | Exists(v, b):
            return type(x)("", _nl(b, env + (v,)))
    raise TypeError(f"not syntax: {x!r}")


@lru_cache(maxsize=200_000)
def nameless(x):
    """De Bruijn form: binder names erased, bound variables numbered by
    distance to their binder. Structural equality of nameless forms is
    alpha-equivalence, and closed subterms keep their form in any context."""
    return _nl(x, ())


# --- alpha-equivalence by parallel traversal --------------------------------

def _index(name: str, env: list):
    for i in range(len(env) - 1, -1, -1):
        if env[i] == name:
            return len(env) - 1 - i
    return None


def _par(p, q, penv: list, qenv: list, hole, found: dict) -> bool:
    """Parallel traversal. With ``hole`` set, free occurrences of that bound
    variable in ``p`` may match any closed subterm of ``q`` (consistently)."""
    if isinstance(p, BoundVar):
        i = _index(p.name, penv)
        if i is None and hole is not None and p.name == hole:
            if free_bound_vars(q):
                return False
            if "t" in found:
                return alpha_eq(found["t"], q)
            found["t"] = q
            return True
        if not isinstance(q, BoundVar):
            return False
        j = _index(q.name, qenv)
        if i is None or j is None:
            return i is None and j is None and p.name == q.name
        return i == j
    if type(p) is not type(q):
        return False
    match p:
        case Param(n):
            return n == q.name
        case Tfo(op, v, b):
            if op != q.op:
                return False
            return _par(b, q.body, penv + [v], qenv + [q.var], hole, found)
        case Pred(n, args):
            return (n == q.name and len(args) == len(q.args)
                    and all(_par(a, c, penv, qenv, hole, found) for a, c in zip(args, q.args)))
        case Eq(l, r) | In(l, r):
            return _par(l, q.lhs, penv, qenv, hole, found) and _par(r, q.rhs, penv, qenv, hole, found)
        case Ex(t):
            return _par(t, q.arg, penv, qenv, hole, found)
        case Not(s):
            return _par(s, q.sub, penv, qenv, hole, found)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return _par(l, q.left, penv, qenv, hole, found) and _par(r, q.right, penv, qenv, hole, found)
        case Forall(v, b) | Exists(v, b):
            return _par(b, q.body, penv + [v], qenv + [q.var], hole, found)
    return False


def alpha_eq(u, v) -> bool:
    """Equality up to consistent renaming of bound variables."""
    return _par(u, v, [], [], None, {})


_VACUOUS = object()


def match_instance(binder, target):
    """Find ``t`` with ``instantiate(binder, t)`` alpha-equal to ``target``.

    Returns the term, ``VACUOUS`` when the bound variable does not occur (any
    term fits), or ``None`` when ``target`` is not an instance.
    """
    found: dict = {}
    if not _par(binder.body, target, [], [], binder.var, found):
        return None
    return found.get("t", VACUOUS)


VACUOUS = _VACUOUS


def free_bound_vars(x, env: frozenset = frozenset()) -> set:
    match x:
        case BoundVar(n):
            return set() if n in env else {n}
        case Param():
            return set()
        case Tfo(_, v, b) | Forall(v, b) | Exists(v, b):
            return free_bound_vars(b, env | {v})
        case Pred(_, args):
            return set().union(*(free_bound_vars(a, env) for a in args)) if args else set()
        case Eq(l, r) | In(l, r):
            return free_bound_vars(l, env) | free_bound_vars(r, env)
        case Ex(t):
            return free_bound_vars(t, env)
        case Not(s):
            return free_bound_vars(s, env)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return free_bound_vars(l, env) | free_bound_vars(r, env)
    raise TypeError(f"not syntax: {x!r}")


def _ll(p, q, penv, qenv, t1, t2) -> bool:
    if _par(p, q, penv, qenv, None, {}):
        return True
    is_term = isinstance(p, (BoundVar, Param, Tfo))
    if is_term and isinstance(q, (BoundVar, Param, Tfo)):
        if (not free_bound_vars(p) and not free_bound_vars(q)
                and alpha_eq(p, t1) and alpha_eq(q, t2)):
            return True
    if type(p) is not type(q):
        return False
    match p:
        case Tfo(op, v, b):
            return op == q.op and _ll(b, q.body, penv + [v], qenv + [q.var], t1, t2)
        case Pred(n, args):
            return (n == q.name and len(args) == len(q.args)
                    and all(_ll(a, c, penv, qenv, t1, t2) for a, c in zip(args, q.args)))
        case Eq(l, r) | In(l, r):
            return _ll(l, q.lhs, penv, qenv, t1, t2) and _ll(r, q.rhs, penv, qenv, t1, t2)
        case Ex(t):
            return _ll(t, q.arg, penv, qenv, t1, t2)
        case Not(s):
            return _ll(s, q.sub, penv, qenv, t1, t2)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return _ll(l, q.left, penv, qenv, t1, t2) and _ll(r, q.right, penv, qenv, t1, t2)
        case Forall(v, b) | Exists(v, b):
            return _ll(b, q.body, penv + [v], qenv + [q.var], t1, t2)
    return False


def ll_related(before, after, t1, t2) -> bool:
    """True iff some ``phi`` gives ``before = phi[x/t1]`` and ``after = phi[x/t2]``
    (up to alpha), i.e. ``after`` arises by replacing some occurrences of ``t1``."""
    return _ll(before, after, [], [], t1, t2)


# --- parameters --------------------------------------------------------------

def _params(x, acc: set):
    match x:
        case Param(n):
            acc.add(n)
        case BoundVar():
            pass
        case Tfo(_, _, b) | Forall(_, b) | Exists(_, b) | Not(b):
            _params(b, acc)
        case Pred(_, args):
            for a in args:
                _params(a, acc)
        case Eq(l, r) | In(l, r):
            _params(l, acc)
            _params(r, acc)
        case Ex(t):
            _params(t, acc)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            _params(l, acc)
            _params(r, acc)
        case _:
            if hasattr(x, "ante") and hasattr(x, "succ"):
                for phi in (*x.ante, *x.succ):
                    _params(phi, acc)
            elif isinstance(x, (tuple, list, set, frozenset)):
                for y in x:
                    _params(y, acc)
            else:
                raise TypeError(f"not syntax: {x!r}")


def free_params(x) -> set:
    """Every parameter name occurring in a term, formula, sequent or collection,
    including inside tfo bodies."""
    acc: set = set()
    _params(x, acc)
    return acc


def canonical_names():
    yield from string.ascii_lowercase
    for k in itertools.count(1):
        for c in string.ascii_lowercase:
            yield f"{c}{k}"


def fresh_param(avoid) -> Param:
    """First name in the order a..z, a1..z1, a2.. that is not in ``avoid``."""
    avoid = set(avoid)
    for name in canonical_names():
        if name not in avoid:
            return Param(name)


def subterms(x, acc: list = None, closed_only: bool = True) -> list:
    """Closed terms occurring in ``x`` (including inside tfo bodies), each once
    up to alpha-equivalence, in order of first occurrence."""
    if acc is None:
        acc = []

    def add(t):
        if closed_only and free_bound_vars(t):
            return
        if not any(alpha_eq(t, s) for s in acc):
            acc.append(t)

    def walk(y):
        match y:
            case Param():
                add(y)
            case BoundVar():
                pass
            case Tfo(_, _, b):
                add(y)
                walk(b)
            case Pred(_, args):
                for a in args:
                    walk(a)
            case Eq(l, r) | In(l, r):
                walk(l)
                walk(r)
            case Ex(t):
                walk(t)
            case Not(s) | Forall(_, s) | Exists(_, s):
                walk(s)
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                walk(l)
                walk(r)
            case _:
                if hasattr(y, "ante"):
                    for phi in (*y.ante, *y.succ):
                        walk(phi)
                else:
                    for z in y:
                        walk(z)

    walk(x)
    return acc
