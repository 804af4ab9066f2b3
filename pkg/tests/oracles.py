"""Reference implementations used only by the tests.

They are written independently of the package: naive, exhaustive, and slow.
"""
import itertools

from tfocalc.syntax import (
    BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists,
)


def canon(x, env=None, counter=None):
    """Rename every binder to v0, v1, ... in pre-order; alpha-variants become equal."""
    env = dict(env or {})
    counter = counter if counter is not None else itertools.count()
    match x:
        case BoundVar(n):
            return BoundVar(env.get(n, n))
        case Param():
            return x
        case Tfo(op, v, b):
            fresh = f"v{next(counter)}"
            return Tfo(op, fresh, canon(b, {**env, v: fresh}, counter))
        case Forall(v, b) | Exists(v, b):
            fresh = f"v{next(counter)}"
            return type(x)(fresh, canon(b, {**env, v: fresh}, counter))
        case Pred(n, args):
            return Pred(n, tuple(canon(a, env, counter) for a in args))
        case Eq(l, r) | In(l, r) | And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return type(x)(canon(l, env, counter), canon(r, env, counter))
        case Ex(t) | Not(t):
            return type(x)(canon(t, env, counter))
    raise TypeError(x)


def naive_alpha_eq(u, v) -> bool:
    return canon(u) == canon(v)


def params_of(x, acc=None):
    acc = set() if acc is None else acc
    match x:
        case Param(n):
            acc.add(n)
        case BoundVar():
            pass
        case Tfo(_, _, b) | Forall(_, b) | Exists(_, b) | Not(b) | Ex(b):
            params_of(b, acc)
        case Pred(_, args):
            for a in args:
                params_of(a, acc)
        case Eq(l, r) | In(l, r) | And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            params_of(l, acc)
            params_of(r, acc)
    return acc


def atoms_between_variables(phi, acc=None):
    """``(kind, left, right)`` for each in/= atom whose sides are plain names."""
    acc = [] if acc is None else acc
    match phi:
        case In(l, r) | Eq(l, r):
            acc.append(("in" if isinstance(phi, In) else "=", l.name, r.name))
        case Not(s) | Forall(_, s) | Exists(_, s):
            atoms_between_variables(s, acc)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            atoms_between_variables(l, acc)
            atoms_between_variables(r, acc)
    return acc


def brute_force_stratifiable(phi, span=None):
    """Try every level assignment in 0..span for the variables of ``phi``."""
    atoms = atoms_between_variables(phi)
    names = sorted({n for _, a, b in atoms for n in (a, b)})
    span = len(names) if span is None else span
    for levels in itertools.product(range(span + 1), repeat=len(names)):
        lv = dict(zip(names, levels))
        if all(lv[b] == lv[a] + (1 if k == "in" else 0) for k, a, b in atoms):
            return True
    return False


def satisfies(levels, phi) -> bool:
    return all(levels[b] == levels[a] + (1 if k == "in" else 0)
               for k, a, b in atoms_between_variables(phi))


NAMES = ("x", "y", "z")
ATOMS = [(k, a, b) for k in ("in", "=") for a in NAMES for b in NAMES]
BINOPS = (And, Or, Imp, Iff)
PREFIXES = ((), (("forall", "x"),), (("exists", "y"), ("forall", "z")))


def _atom(kind, a, b, bound):
    term = lambda n: BoundVar(n) if n in bound else Param(n)  # noqa: E731
    return (In if kind == "in" else Eq)(term(a), term(b))


def _skeletons(atoms):
    if len(atoms) == 1:
        yield atoms[0]
        yield Not(atoms[0])
        return
    if len(atoms) == 2:
        for op in BINOPS:
            yield op(*atoms)
        return
    a, b, c = atoms
    for op1, op2 in itertools.product(BINOPS, repeat=2):
        yield op2(op1(a, b), c)


def enumerate_formulas():
    """Every connective shape over every multiset of at most three atoms, each
    under three quantifier prefixes."""
    for k in (1, 2, 3):
        for combo in itertools.combinations_with_replacement(ATOMS, k):
            for prefix in PREFIXES:
                bound = {v for _, v in prefix}
                atoms = [_atom(*a, bound) for a in combo]
                for body in _skeletons(atoms):
                    phi = body
                    for q, v in reversed(prefix):
                        phi = (Forall if q == "forall" else Exists)(v, phi)
                    yield phi
