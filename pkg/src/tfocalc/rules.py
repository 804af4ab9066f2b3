"""Rule schemas and their inference checkers.

Every checker receives the conclusion, the premise sequents and the system,
and raises :class:`RuleError` unless the node is a correct application. All
formula comparisons are modulo alpha-equivalence and all contexts are
multisets. Checkers try every candidate principal formula, so instantiation
hints are never required for correctness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .binding import (
    VACUOUS, alpha_eq, free_params, instantiate, ll_related, match_instance, nameless,
)
from .proof import Sequent, distinct, msub, same_multiset
from .stratify import stratify
from .syntax import (
    And, Eq, Ex, Exists, Forall, Iff, Imp, In, Not, Or, Param, Pred, Tfo,
    is_atomic, is_complex, atom_args, print_formula, print_term,
)


class RuleError(Exception):
    """A rejected inference. ``kind`` names the violated condition."""

    def __init__(self, kind: str, message: str, line=None, path=None, rule=None):
        self.kind = kind
        self.message = message
        self.line = line
        self.path = path
        self.rule = rule
        super().__init__(self.describe())

    def describe(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        rule = f"({self.rule}) " if self.rule else ""
        return f"{where}{rule}{self.kind}: {self.message}"


@dataclass(frozen=True)
class RuleSchema:
    id: str
    premises: tuple
    conclusion: str
    side_conditions: tuple = ()
    anchor: str = ""
    check: Optional[Callable] = field(default=None, compare=False, repr=False)

    @property
    def arity(self) -> int:
        return len(self.premises)


@dataclass
class Node:
    conclusion: Sequent
    premises: tuple
    hints: dict = field(default_factory=dict)


# --- helpers -------------------------------------------------------------------

def _extras(prem: Sequent, ctx: Sequent):
    a = msub(prem.ante, ctx.ante)
    s = msub(prem.succ, ctx.succ)
    if a is None or s is None:
        return None
    return a, s


def _same(xs, ys) -> bool:
    return same_multiset(tuple(xs), tuple(ys))


def _hint_formula(node: Node, key="principal"):
    text = node.hints.get(key)
    if text is None:
        return None
    from .syntax import parse_formula
    return parse_formula(text)


def _principal(node: Node, side: str, pred, expect, what="principal formula"):
    """Try each distinct candidate on ``side`` ('L' or 'R'); ``expect(pi, extras, ctx)``
    returns True on a match, False on mismatch, or raises a side-condition error."""
    C = node.conclusion
    pool = C.ante if side == "L" else C.succ
    hint = _hint_formula(node)
    errors = []
    for pi in distinct(pool):
        if not pred(pi) or (hint is not None and not alpha_eq(hint, pi)):
            continue
        if side == "L":
            ctx = Sequent(msub(C.ante, [pi]), C.succ)
        else:
            ctx = Sequent(C.ante, msub(C.succ, [pi]))
        extras = [_extras(p, ctx) for p in node.premises]
        if any(x is None for x in extras):
            continue
        try:
            if expect(pi, extras, ctx):
                return
        except RuleError as e:
            errors.append(e)
    if errors:
        raise errors[0]
    raise RuleError("schema", f"no {what} in the {'antecedent' if side == 'L' else 'succedent'} "
                              "matches the premises")


def _no_principal(node: Node, expect):
    ctx = node.conclusion
    extras = [_extras(p, ctx) for p in node.premises]
    if any(x is None for x in extras):
        raise RuleError("schema", "premise does not contain the conclusion's context")
    if not expect(extras, ctx):
        raise RuleError("schema", "premise formulas do not fit the rule")


def _fixed(expected):
    """expect() for rules whose premise extras are determined by the principal."""
    def expect(pi, extras, ctx):
        for (ea, es), (xa, xs) in zip(expected(pi), extras):
            if not (_same(ea, xa) and _same(es, xs)):
                return False
        return True
    return expect


def _eigen(a, conclusion: Sequent, rule_name="eigenvariable"):
    if not isinstance(a, Param):
        return False
    if a.name in free_params(conclusion):
        raise RuleError("eigenvariable",
                        f"parameter {a.name} must not occur in the conclusion (Γ, Δ or the principal formula)")
    return True


def _pure(sys, t):
    if sys.pure and t is not VACUOUS and not isinstance(t, Param):
        raise RuleError("pure-instantiation",
                        f"pure system {sys.id} instantiates only parameters, not {print_term(t)}")


def _single(x):
    return x[0] if len(x) == 1 else None


def relation(sys, b, t):
    r = sys.relation_R
    if r == "=":
        return Eq(b, t)
    if r == "in":
        return In(b, t)
    return Pred(r, (b, t))


def _rel_parts(sys, phi):
    """(b, t) if phi is a relation atom for this system's R."""
    r = sys.relation_R
    if r == "=" and isinstance(phi, Eq):
        return phi.lhs, phi.rhs
    if r == "in" and isinstance(phi, In):
        return phi.lhs, phi.rhs
    if isinstance(phi, Pred) and phi.name == r and len(phi.args) == 2:
        return phi.args
    return None


def _stratified(body, rule):
    res = stratify(body)
    if not res.ok:
        raise RuleError("stratification", f"body {print_formula(body)} is not stratified ({res})")


# --- structural ----------------------------------------------------------------

def check_ax(node, sys):
    C = node.conclusion
    left = {nameless(f) for f in C.ante}
    if not any(nameless(f) in left for f in C.succ):
        raise RuleError("schema", "no formula occurs on both sides")


def check_cut(node, sys):
    p1, p2 = node.premises
    C = node.conclusion
    hint = _hint_formula(node, "cut")
    for phi in distinct(p1.succ):
        if hint is not None and not alpha_eq(hint, phi):
            continue
        pi = msub(p2.ante, [phi])
        if pi is None:
            continue
        delta = msub(p1.succ, [phi])
        if _same(C.ante, p1.ante + pi) and _same(C.succ, delta + p2.succ):
            return
    raise RuleError("schema", "no cut formula joins the premises into the conclusion")


def _weak(side):
    def check(node, sys):
        (p,) = node.premises
        C = node.conclusion
        da, ds = msub(C.ante, p.ante), msub(C.succ, p.succ)
        want = (1, 0) if side == "L" else (0, 1)
        if da is None or ds is None or (len(da), len(ds)) != want:
            raise RuleError("schema", "conclusion must add exactly one formula to the premise")
    return check


def _contr(side):
    def check(node, sys):
        (p,) = node.premises
        C = node.conclusion
        da, ds = msub(p.ante, C.ante), msub(p.succ, C.succ)
        want = (1, 0) if side == "L" else (0, 1)
        if da is None or ds is None or (len(da), len(ds)) != want:
            raise RuleError("schema", "premise must have exactly one extra copy")
        extra = (da or ds)[0]
        if not any(alpha_eq(extra, f) for f in (C.ante if side == "L" else C.succ)):
            raise RuleError("schema", "contracted formula missing from the conclusion")
    return check


# --- propositional ----------------------------------------------------------------

def _prop(side, cls, expected):
    def check(node, sys):
        _principal(node, side, lambda f: isinstance(f, cls), _fixed(expected))
    return check


PROP_CHECKS = {
    "not=>": _prop("L", Not, lambda p: [((), (p.sub,))]),
    "=>not": _prop("R", Not, lambda p: [((p.sub,), ())]),
    "and=>": _prop("L", And, lambda p: [((p.left, p.right), ())]),
    "=>and": _prop("R", And, lambda p: [((), (p.left,)), ((), (p.right,))]),
    "or=>": _prop("L", Or, lambda p: [((p.left,), ()), ((p.right,), ())]),
    "=>or": _prop("R", Or, lambda p: [((), (p.left, p.right))]),
    "imp=>": _prop("L", Imp, lambda p: [((), (p.left,)), ((p.right,), ())]),
    "=>imp": _prop("R", Imp, lambda p: [((p.left,), (p.right,))]),
    "iff=>": _prop("L", Iff, lambda p: [((), (p.left, p.right)), ((p.left, p.right), ())]),
    "=>iff": _prop("R", Iff, lambda p: [((p.left,), (p.right,)), ((p.right,), (p.left,))]),
}


# --- quantifiers --------------------------------------------------------------------

def _quant(side, cls, eigen):
    """(forall=>), (=>exists) instantiate any term (parameters in pure systems);
    (=>forall), (exists=>) need an eigenvariable."""
    def check(node, sys):
        C = node.conclusion

        def expect(pi, extras, ctx):
            (xa, xs), = extras
            body = _single(xa if side == "L" else xs)
            if body is None or (xs if side == "L" else xa):
                return False
            t = match_instance(pi, body)
            if t is None:
                return False
            if eigen:
                return t is VACUOUS or _eigen(t, C)
            _pure(sys, t)
            return True
        _principal(node, side, lambda f: isinstance(f, cls), expect)
    return check


def check_forall_l_free(node, sys):
    C = node.conclusion
    errors = []
    for q in distinct(C.ante):
        if not isinstance(q, Forall):
            continue
        rest = msub(C.ante, [q])
        for e in distinct(rest):
            if not isinstance(e, Ex):
                continue
            ctx = Sequent(msub(rest, [e]), C.succ)
            ext = _extras(node.premises[0], ctx)
            if ext is None or ext[1] or not _same(ext[0], [instantiate(q, e.arg)]):
                continue
            try:
                _pure(sys, e.arg)
                return
            except RuleError as err:
                errors.append(err)
    if errors:
        raise errors[0]
    raise RuleError("schema", "needs E t and a universal formula in the antecedent")


def check_exists_r_free(node, sys):
    C = node.conclusion
    errors = []
    for q in distinct(C.succ):
        if not isinstance(q, Exists):
            continue
        for e in distinct(C.ante):
            if not isinstance(e, Ex):
                continue
            ctx = Sequent(msub(C.ante, [e]), msub(C.succ, [q]))
            ext = _extras(node.premises[0], ctx)
            if ext is None or ext[0] or not _same(ext[1], [instantiate(q, e.arg)]):
                continue
            try:
                _pure(sys, e.arg)
                return
            except RuleError as err:
                errors.append(err)
    if errors:
        raise errors[0]
    raise RuleError("schema", "needs E t in the antecedent and an existential in the succedent")


def _eigen_free(side, cls):
    """(=>forall)^F: Ea, Γ => Δ, φ(a);  (exists=>)^F: Ea, φ(a), Γ => Δ."""
    def check(node, sys):
        C = node.conclusion

        def expect(pi, extras, ctx):
            (xa, xs), = extras
            if side == "R":
                e, body = _single(xa), _single(xs)
                if e is None or body is None or not isinstance(e, Ex):
                    return False
            else:
                if xs or len(xa) != 2:
                    return False
                e, body = (xa[0], xa[1]) if isinstance(xa[0], Ex) else (xa[1], xa[0])
                if not isinstance(e, Ex):
                    return False
            a = e.arg
            if not isinstance(a, Param) or not alpha_eq(instantiate(pi, a), body):
                return False
            return _eigen(a, C)
        _principal(node, side, lambda f: isinstance(f, cls), expect)
    return check


def check_str(node, sys):
    def expect(pi, extras, ctx):
        (xa, xs), = extras
        e = _single(xa)
        if xs or e is None or not isinstance(e, Ex):
            return False
        return any(alpha_eq(e.arg, t) for t in atom_args(pi))
    _principal(node, "L", is_atomic, expect, "atomic formula")


# --- identity ---------------------------------------------------------------------

def _added_identity(node):
    (prem,) = node.premises
    ext = _extras(prem, node.conclusion)
    if ext is None or ext[1] or len(ext[0]) != 1 or not isinstance(ext[0][0], Eq):
        raise RuleError("schema", "premise must add exactly one identity to the antecedent")
    return ext[0][0]


def check_ref(node, sys):
    e = _added_identity(node)
    if not alpha_eq(e.lhs, e.rhs):
        raise RuleError("schema", "added identity must be of the form t = t")


def check_ref_param(node, sys):
    e = _added_identity(node)
    if not alpha_eq(e.lhs, e.rhs):
        raise RuleError("schema", "added identity must be of the form b = b")
    if not isinstance(e.lhs, Param):
        raise RuleError("Ref'-parameter", "(Ref') only adds identities between parameters")


def check_ref_n(node, sys):
    def expect(pi, extras, ctx):
        (xa, xs), = extras
        e = _single(xa)
        return (not xs and isinstance(e, Eq) and alpha_eq(e.lhs, pi.arg)
                and alpha_eq(e.rhs, pi.arg))
    _principal(node, "L", lambda f: isinstance(f, Ex), expect)


def check_av(node, sys):
    e = _added_identity(node)
    if not (isinstance(e.lhs, Tfo) and isinstance(e.rhs, Tfo)):
        raise RuleError("schema", "(AV) adds an identity between two tfo terms")
    if not alpha_eq(e.lhs, e.rhs):
        raise RuleError("AV-variants", "the two terms are not alphabetic variants")


def check_a_intro(node, sys):
    e = _added_identity(node)
    if not (isinstance(e.lhs, Param) and isinstance(e.rhs, Tfo)):
        raise RuleError("schema", "(a=>) adds a = tau x phi with a a parameter")
    _eigen(e.lhs, node.conclusion)


def _ll2(target_ok=None, target_name="atomic"):
    """(2LL) family: Γ => Δ, t1 = t2 and Γ => Δ, φ(t1) give Γ => Δ, φ(t2)."""
    def check(node, sys):
        def expect(pi, extras, ctx):
            (a1, s1), (a2, s2) = extras
            e, before = _single(s1), _single(s2)
            if a1 or a2 or not isinstance(e, Eq) or before is None:
                return False
            if not ll_related(before, pi, e.lhs, e.rhs):
                return False
            if not is_atomic(pi):
                raise RuleError("atomic", f"(2LL) rewrites atomic formulas only, not {print_formula(pi)}")
            if target_ok is not None and not target_ok(pi):
                raise RuleError(target_name, f"target {print_formula(pi)} not allowed for this variant")
            return True
        _principal(node, "R", lambda f: True, expect, "rewritten formula")
    return check


def _in_atom(phi):
    return isinstance(phi, In)


def _in_or_param_eq(phi):
    return isinstance(phi, In) or (isinstance(phi, Eq) and isinstance(phi.lhs, Param)
                                   and isinstance(phi.rhs, Param))


def check_ll1(node, sys):
    C = node.conclusion
    (prem,) = node.premises
    errors = []
    for e in distinct(C.ante):
        if not isinstance(e, Eq):
            continue
        rest = msub(C.ante, [e])
        for before in distinct(rest):
            ctx = Sequent(msub(rest, [before]), C.succ)
            ext = _extras(prem, ctx)
            if ext is None or ext[1] or len(ext[0]) != 1:
                continue
            after = ext[0][0]
            if not is_atomic(before) or not ll_related(before, after, e.lhs, e.rhs):
                continue
            try:
                if not (isinstance(e.lhs, Param) or isinstance(e.rhs, Param)):
                    raise RuleError("1LL-restriction", "one of t1, t2 must be a parameter")
                if isinstance(before, Eq) and is_complex(before.lhs) and is_complex(before.rhs):
                    raise RuleError("1LL-restriction",
                                    "rewritten atom is an identity between two complex terms")
                return
            except RuleError as err:
                errors.append(err)
    if errors:
        raise errors[0]
    raise RuleError("schema", "no identity and atom in the antecedent fit (1LL)")


def check_ll3(node, sys):
    """(3LL): Γ=>Δ,t=t'; Γ=>Δ,φ(t); φ(t'),Γ=>Δ / Γ=>Δ with φ(t)/φ(t') either
    t''∈t / t''∈t' or t∈t'' / t'∈t''."""
    def expect(extras, ctx):
        (a1, s1), (a2, s2), (a3, s3) = extras
        e, A, B = _single(s1), _single(s2), _single(a3)
        if a1 or a2 or s3 or e is None or A is None or B is None or not isinstance(e, Eq):
            return False
        if not (isinstance(A, In) and isinstance(B, In)):
            raise RuleError("3LL-atoms", "(3LL) side formulas must be membership atoms")
        t, t2 = e.lhs, e.rhs
        right = alpha_eq(A.lhs, B.lhs) and alpha_eq(A.rhs, t) and alpha_eq(B.rhs, t2)
        left = alpha_eq(A.rhs, B.rhs) and alpha_eq(A.lhs, t) and alpha_eq(B.lhs, t2)
        if not (right or left):
            raise RuleError("3LL-atoms", "membership atoms not in the required positions")
        return True
    _no_principal(node, expect)


def _ll3_prime(two_complex: bool):
    """(3LL'): Γ=>Δ,t=t'; Γ=>Δ,t=t''; t'=t'',Γ=>Δ / Γ=>Δ."""
    def check(node, sys):
        def expect(extras, ctx):
            (a1, s1), (a2, s2), (a3, s3) = extras
            e1, e2, e3 = _single(s1), _single(s2), _single(a3)
            if a1 or a2 or s3 or e1 is None or e2 is None or e3 is None:
                return False
            if not all(isinstance(e, Eq) for e in (e1, e2, e3)):
                raise RuleError("3LL'-identities", "(3LL') side formulas must all be identities")
            t, t1, t2 = e1.lhs, e1.rhs, e2.rhs
            if not (alpha_eq(e2.lhs, t) and alpha_eq(e3.lhs, t1) and alpha_eq(e3.rhs, t2)):
                raise RuleError("3LL'-identities",
                                "identities must read t = t', t = t'' and t' = t''")
            if two_complex:
                n = sum(1 for x in (t, t1, t2) if is_complex(x))
                # symmetry instances (t'' is t) are kept, the derivation of case 3 needs them
                if n < 2 and not alpha_eq(t, t2):
                    raise RuleError("3LL'-two-complex",
                                    "at least two of t, t', t'' must be complex terms")
            return True
        _no_principal(node, expect)
    return check


def _param_identity(phi):
    return isinstance(phi, Eq) and isinstance(phi.lhs, Param) and isinstance(phi.rhs, Param)


def _tr_or_e(flip: bool):
    """(E): Γ=>Δ,a=t; b=t,Γ=>Δ / a=b,Γ=>Δ.  (Tr): second premise t=b."""
    def check(node, sys):
        def expect(pi, extras, ctx):
            (a1, s1), (a2, s2) = extras
            e1, e2 = _single(s1), _single(a2)
            if a1 or s2 or not isinstance(e1, Eq) or not isinstance(e2, Eq):
                return False
            a, b = pi.lhs, pi.rhs
            if not alpha_eq(e1.lhs, a):
                return False
            t = e1.rhs
            return (alpha_eq(e2.lhs, t) and alpha_eq(e2.rhs, b)) if flip else \
                (alpha_eq(e2.lhs, b) and alpha_eq(e2.rhs, t))
        _principal(node, "L", _param_identity, expect, "identity between parameters")
    return check


# --- S-theory rules ----------------------------------------------------------------

def _tfo_identity(phi):
    return (isinstance(phi, Eq) and isinstance(phi.lhs, Tfo) and isinstance(phi.rhs, Tfo)
            and phi.lhs.op == phi.rhs.op)


def check_ext(node, sys):
    C = node.conclusion

    def expect(pi, extras, ctx):
        (a1, s1), (a2, s2) = extras
        f1, g1, g2, f2 = _single(a1), _single(s1), _single(a2), _single(s2)
        if None in (f1, g1, g2, f2):
            return False
        left, right = pi.lhs, pi.rhs
        a = match_instance(left, f1)
        if a is None:
            return False
        if a is VACUOUS:
            a = match_instance(right, g1)
            if a is None:
                return False
        if a is VACUOUS:
            a = Param("_")  # both bodies vacuous: any instance works
            ok = alpha_eq(instantiate(left, a), f1) and alpha_eq(instantiate(right, a), g1)
        else:
            if not isinstance(a, Param):
                return False
            ok = (alpha_eq(instantiate(right, a), g1) and alpha_eq(instantiate(right, a), g2)
                  and alpha_eq(instantiate(left, a), f2))
            if ok:
                _eigen(a, C)
        return ok and alpha_eq(f1, f2) and alpha_eq(g1, g2)
    _principal(node, "R", _tfo_identity, expect, "identity between tfo terms")


def check_extav(node, sys):
    C = node.conclusion

    def expect(pi, extras, ctx):
        (a1, s1), (a2, s2) = extras
        if len(a1) != 2 or len(a2) != 2 or len(s1) != 1 or len(s2) != 1:
            return False
        left, right = pi.lhs, pi.rhs
        for e in a1:
            if not _param_identity(e):
                continue
            a, b = e.lhs, e.rhs
            fa, gb = instantiate(left, a), instantiate(right, b)
            if not (_same(a1, [e, fa]) and _same(s1, [gb])
                    and _same(a2, [e, gb]) and _same(s2, [fa])):
                continue
            if a.name == b.name:
                raise RuleError("eigenvariable", "(ExtAV) needs two distinct fresh parameters")
            _eigen(a, C)
            _eigen(b, C)
            return True
        return False
    _principal(node, "R", _tfo_identity, expect, "identity between tfo terms")


# --- T-theory rules -------------------------------------------------------------------

def _tfo_eq(op=None):
    def pred(phi):
        return isinstance(phi, Eq) and isinstance(phi.rhs, Tfo) and (op is None or phi.rhs.op == op)
    return pred


def _t_right(free: bool, op=None, strat=False, relation_override=None):
    """(=>tau): a fresh; classical premises φ(a),Γ=>Δ,aRt and aRt,Γ=>Δ,φ(a);
    the free version adds Γ=>Δ,Et in front and Ea to the first."""
    def check(node, sys):
        C = node.conclusion
        rsys = _RelSys(sys, relation_override)

        def expect(pi, extras, ctx):
            t, tfo = pi.lhs, pi.rhs
            if free:
                (ea, es), p2, p3 = extras
                if ea or not _same(es, [Ex(t)]):
                    return False
            else:
                p2, p3 = extras
            (xa, xs), (ya, ys) = p2, p3
            r_atom = _single(xs)
            parts = _rel_parts(rsys, r_atom) if r_atom is not None else None
            if parts is None or not alpha_eq(parts[1], t):
                return False
            a = parts[0]
            if not isinstance(a, Param):
                return False
            phi_a = instantiate(tfo, a)
            want_x = [Ex(a), phi_a] if free else [phi_a]
            if not (_same(xa, want_x) and _same(ya, [r_atom]) and _same(ys, [phi_a])):
                return False
            _eigen(a, C)
            if strat:
                _stratified(tfo.body, "=>:")
            return True
        _principal(node, "R", _tfo_eq(op), expect, "identity t = tfo-term")
    return check


class _RelSys:
    def __init__(self, sys, override):
        self.relation_R = override or sys.relation_R
        self.pure = sys.pure
        self.id = sys.id


def _t_left(shapes, op=None, strat=False, relation_override=None, term_b=True):
    """Left tfo rules. ``shapes`` lists premise patterns over the tokens
    'phi' (φ(b)), 'R' (bRt), 'Eb', 'Et' as (ante, succ) pairs."""
    def check(node, sys):
        rsys = _RelSys(sys, relation_override)

        def expect(pi, extras, ctx):
            t, tfo = pi.lhs, pi.rhs
            for shape in shapes:
                if len(shape) != len(extras):
                    continue
                b = None
                for (sa, ss), (xa, xs) in zip(shape, extras):
                    for toks, got in ((sa, xa), (ss, xs)):
                        if "R" in toks and len(got) == 1:
                            parts = _rel_parts(rsys, got[0])
                            if parts is not None and alpha_eq(parts[1], t):
                                b = parts[0]
                if b is None:
                    for (sa, ss), (xa, xs) in zip(shape, extras):
                        for toks, got in ((sa, xa), (ss, xs)):
                            if "phi" in toks and len(got) == 1:
                                m = match_instance(tfo, got[0])
                                if m is not None and m is not VACUOUS:
                                    b = m
                if b is None:
                    continue

                def render(tok):
                    return {"phi": instantiate(tfo, b), "R": relation(rsys, b, t),
                            "Eb": Ex(b), "Et": Ex(t)}[tok]
                if all(_same(xa, [render(x) for x in sa]) and _same(xs, [render(x) for x in ss])
                       for (sa, ss), (xa, xs) in zip(shape, extras)):
                    if term_b:
                        _pure(rsys, b)
                    if strat:
                        _stratified(tfo.body, ":=>")
                    return True
            return False
        _principal(node, "L", _tfo_eq(op), expect, "identity t = tfo-term")
    return check


def check_tau_l2(node, sys):
    """(tau=>2): Et,Γ=>Δ / t=τxφ,Γ=>Δ."""
    def expect(pi, extras, ctx):
        (xa, xs), = extras
        return not xs and _same(xa, [Ex(pi.lhs)])
    _principal(node, "L", _tfo_eq(), expect, "identity t = tfo-term")


# --- NF (S-approach) ----------------------------------------------------------------

def _member_of_abstract(phi):
    return isinstance(phi, In) and isinstance(phi.rhs, Tfo) and phi.rhs.op == "set"


def _abs(side):
    def check(node, sys):
        def expect(pi, extras, ctx):
            (xa, xs), = extras
            inst = instantiate(pi.rhs, pi.lhs)
            got, other = (xa, xs) if side == "L" else (xs, xa)
            if other or not _same(got, [inst]):
                return False
            _stratified(pi.rhs.body, "Abs")
            return True
        _principal(node, side, _member_of_abstract, expect, "membership in a set abstract")
    return check


def check_eq_right(node, sys):
    """(=>eq): a∈t,Γ=>Δ,a∈t' and a∈t',Γ=>Δ,a∈t / Γ=>Δ,t=t'; a fresh."""
    C = node.conclusion

    def expect(pi, extras, ctx):
        (xa, xs), (ya, ys) = extras
        m = _single(xa)
        if not isinstance(m, In):
            return False
        a, t, t2 = m.lhs, pi.lhs, pi.rhs
        if not isinstance(a, Param):
            return False
        ok = (_same(xa, [In(a, t)]) and _same(xs, [In(a, t2)])
              and _same(ya, [In(a, t2)]) and _same(ys, [In(a, t)]))
        return ok and _eigen(a, C)
    _principal(node, "R", lambda f: isinstance(f, Eq), expect, "identity")


def check_eq_left(node, sys):
    """(eq=>): Γ=>Δ,b∈t,b∈t' and b∈t,b∈t',Γ=>Δ / t=t',Γ=>Δ."""
    def expect(pi, extras, ctx):
        (xa, xs), (ya, ys) = extras
        if xa or ys or len(xs) != 2:
            return False
        t, t2 = pi.lhs, pi.rhs
        for m in xs:
            if isinstance(m, In) and alpha_eq(m.rhs, t):
                b = m.lhs
                want = [In(b, t), In(b, t2)]
                if _same(xs, want) and _same(ya, want):
                    _pure(sys, b)
                    return True
        return False
    _principal(node, "L", lambda f: isinstance(f, Eq), expect, "identity")


# --- table ------------------------------------------------------------------------------

def S(id, premises, conclusion, check, side=(), anchor=""):
    return RuleSchema(id, tuple(premises), conclusion, tuple(side), anchor, check)


G, D = "Γ", "Δ"
STRUCTURAL = [
    S("Cut", ["Γ => Δ, φ", "φ, Π => Σ"], "Γ, Π => Δ, Σ", check_cut, anchor="GC rule list"),
    S("AX", [], "φ, Γ => Δ, φ", check_ax, anchor="GC rule list"),
    S("W=>", ["Γ => Δ"], "φ, Γ => Δ", _weak("L")),
    S("=>W", ["Γ => Δ"], "Γ => Δ, φ", _weak("R")),
    S("C=>", ["φ, φ, Γ => Δ"], "φ, Γ => Δ", _contr("L")),
    S("=>C", ["Γ => Δ, φ, φ"], "Γ => Δ, φ", _contr("R")),
]

_PROP_DISPLAY = {
    "not=>": (["Γ => Δ, φ"], "not φ, Γ => Δ"),
    "=>not": (["φ, Γ => Δ"], "Γ => Δ, not φ"),
    "and=>": (["φ, ψ, Γ => Δ"], "φ & ψ, Γ => Δ"),
    "=>and": (["Γ => Δ, φ", "Γ => Δ, ψ"], "Γ => Δ, φ & ψ"),
    "or=>": (["φ, Γ => Δ", "ψ, Γ => Δ"], "φ | ψ, Γ => Δ"),
    "=>or": (["Γ => Δ, φ, ψ"], "Γ => Δ, φ | ψ"),
    "imp=>": (["Γ => Δ, φ", "ψ, Γ => Δ"], "φ -> ψ, Γ => Δ"),
    "=>imp": (["φ, Γ => Δ, ψ"], "Γ => Δ, φ -> ψ"),
    "iff=>": (["Γ => Δ, φ, ψ", "φ, ψ, Γ => Δ"], "φ <-> ψ, Γ => Δ"),
    "=>iff": (["φ, Γ => Δ, ψ", "ψ, Γ => Δ, φ"], "Γ => Δ, φ <-> ψ"),
}
PROPOSITIONAL = [S(k, v[0], v[1], PROP_CHECKS[k]) for k, v in _PROP_DISPLAY.items()]

QUANTIFIER = [
    S("forall=>", ["φ[x/t], Γ => Δ"], "forall x φ, Γ => Δ", _quant("L", Forall, False),
      ["t a parameter in pure systems"]),
    S("=>exists", ["Γ => Δ, φ[x/t]"], "Γ => Δ, exists x φ", _quant("R", Exists, False),
      ["t a parameter in pure systems"]),
    S("=>forall", ["Γ => Δ, φ[x/a]"], "Γ => Δ, forall x φ", _quant("R", Forall, True),
      ["a not in Γ, Δ, φ"]),
    S("exists=>", ["φ[x/a], Γ => Δ"], "exists x φ, Γ => Δ", _quant("L", Exists, True),
      ["a not in Γ, Δ, φ"]),
]

FREE_QUANTIFIER = [
    S("forall=>F", ["φ[x/t], Γ => Δ"], "E! t, forall x φ, Γ => Δ", check_forall_l_free,
      ["t a parameter in pure systems"]),
    S("=>forallF", ["E! a, Γ => Δ, φ[x/a]"], "Γ => Δ, forall x φ", _eigen_free("R", Forall),
      ["a not in Γ, Δ, φ"]),
    S("exists=>F", ["E! a, φ[x/a], Γ => Δ"], "exists x φ, Γ => Δ", _eigen_free("L", Exists),
      ["a not in Γ, Δ, φ"]),
    S("=>existsF", ["Γ => Δ, φ[x/t]"], "E! t, Γ => Δ, exists x φ", check_exists_r_free,
      ["t a parameter in pure systems"]),
]

STR = S("Str", ["E! t, Γ => Δ"], "φ(t), Γ => Δ", check_str, ["φ atomic"])
REF = S("Ref", ["t = t, Γ => Δ"], "Γ => Δ", check_ref)
REF_N = S("RefN", ["t = t, Γ => Δ"], "E! t, Γ => Δ", check_ref_n)
REF_P = S("Ref'", ["b = b, Γ => Δ"], "Γ => Δ", check_ref_param, ["b a parameter"])
LL2 = S("2LL", ["Γ => Δ, t1 = t2", "Γ => Δ, φ[x/t1]"], "Γ => Δ, φ[x/t2]", _ll2(), ["φ atomic"])
LL1 = S("1LL", ["φ(t2), Γ => Δ"], "t1 = t2, φ(t1), Γ => Δ", check_ll1,
        ["t1 or t2 a parameter", "φ(t1) not an identity between complex terms"])

EXT = S("Ext", ["φ(a), Γ => Δ, ψ(a)", "ψ(a), Γ => Δ, φ(a)"], "Γ => Δ, τxφ = τxψ", check_ext,
        ["a fresh"])
AV = S("AV", ["τxφ(x) = τyφ(y), Γ => Δ"], "Γ => Δ", check_av, ["alphabetic variants"])
EXTAV = S("ExtAV", ["a = b, φ(a), Γ => Δ, ψ(b)", "a = b, ψ(b), Γ => Δ, φ(a)"],
          "Γ => Δ, τxφ = τyψ", check_extav, ["a, b distinct and fresh"])
A_INTRO = S("a=>", ["a = τxφ, Γ => Δ"], "Γ => Δ", check_a_intro, ["a fresh"])

T_RIGHT_FREE = S("=>tau", ["Γ => Δ, E! t", "E! a, φ(a), Γ => Δ, aRt", "aRt, Γ => Δ, φ(a)"],
                 "Γ => Δ, t = τxφ", _t_right(True), ["a not in Γ, Δ, φ"])
T_LEFT1 = S("tau=>1", ["Γ => Δ, E! b", "Γ => Δ, φ(b)", "bRt, Γ => Δ"], "t = τxφ, Γ => Δ",
            _t_left([[((), ("Eb",)), ((), ("phi",)), (("R",), ())]]),
            ["b a parameter in pure systems"])
T_LEFT2 = S("tau=>2", ["E! t, Γ => Δ"], "t = τxφ, Γ => Δ", check_tau_l2)
T_LEFT3 = S("tau=>3", ["Γ => Δ, bRt", "φ(b), Γ => Δ"], "t = τxφ, Γ => Δ",
            _t_left([[((), ("R",)), (("phi",), ())]]), ["b a parameter in pure systems"])
T_RIGHT = S("=>tau", ["φ(a), Γ => Δ, aRt", "aRt, Γ => Δ, φ(a)"], "Γ => Δ, t = τxφ",
            _t_right(False), ["a not in Γ, Δ, φ"])
T_LEFT = S("tau=>", ["Γ => Δ, φ(b) | Γ => Δ, bRt", "bRt, Γ => Δ | φ(b), Γ => Δ"],
           "t = τxφ, Γ => Δ",
           _t_left([[((), ("phi",)), (("R",), ())], [((), ("R",)), (("phi",), ())]]),
           ["b a parameter in pure systems"])

EQ_LEFT = S("eq=>", ["Γ => Δ, b in t, b in t'", "b in t, b in t', Γ => Δ"], "t = t', Γ => Δ",
            check_eq_left)
EQ_RIGHT = S("=>eq", ["a in t, Γ => Δ, a in t'", "a in t', Γ => Δ, a in t"], "Γ => Δ, t = t'",
             check_eq_right, ["a fresh"])
ABS_L = S("Abs=>", ["φ[x/t], Γ => Δ"], "t in {x | φ}, Γ => Δ", _abs("L"), ["φ stratified"])
ABS_R = S("=>Abs", ["Γ => Δ, φ[x/t]"], "Γ => Δ, t in {x | φ}", _abs("R"), ["φ stratified"])
LL3 = S("3LL", ["Γ => Δ, t = t'", "Γ => Δ, φ(t)", "φ(t'), Γ => Δ"], "Γ => Δ", check_ll3,
        ["φ(t)/φ(t') are t'' in t / t'' in t' or t in t'' / t' in t''"])

COLON_RIGHT = S("=>:", ["φ(a), Γ => Δ, a in t", "a in t, Γ => Δ, φ(a)"], "Γ => Δ, t = {x | φ}",
                _t_right(False, op="set", strat=True, relation_override="in"),
                ["a not in Γ, Δ, φ", "φ stratified"])
COLON_LEFT = S(":=>", ["Γ => Δ, φ(b) | Γ => Δ, b in t", "b in t, Γ => Δ | φ(b), Γ => Δ"],
               "t = {x | φ}, Γ => Δ",
               _t_left([[((), ("phi",)), (("R",), ())], [((), ("R",)), (("phi",), ())]],
                       op="set", strat=True, relation_override="in"),
               ["φ stratified", "b a parameter"])
LL2_P = S("2LL'", ["Γ => Δ, t = t'", "Γ => Δ, φ(t)"], "Γ => Δ, φ(t')",
          _ll2(_in_atom, "2LL'-target"), ["φ(t') a membership atom"])
LL2_PP = S("2LL''", ["Γ => Δ, t = t'", "Γ => Δ, φ(t)"], "Γ => Δ, φ(t')",
           _ll2(_in_or_param_eq, "2LL''-target"),
           ["φ(t') a membership atom or b = c between parameters"])
LL3_P = S("3LL'", ["Γ => Δ, t = t'", "Γ => Δ, t = t''", "t' = t'', Γ => Δ"], "Γ => Δ",
          _ll3_prime(False), ["side formulas are identities"])
LL3_PR = S("3LL'", ["Γ => Δ, t = t'", "Γ => Δ, t = t''", "t' = t'', Γ => Δ"], "Γ => Δ",
           _ll3_prime(True), ["side formulas are identities",
                              "at least two of t, t', t'' complex (symmetry instances exempt)"])
E_RULE = S("E", ["Γ => Δ, a = t", "b = t, Γ => Δ"], "a = b, Γ => Δ", _tr_or_e(False))
TR_RULE = S("Tr", ["Γ => Δ, a = t", "t = b, Γ => Δ"], "a = b, Γ => Δ", _tr_or_e(True))
