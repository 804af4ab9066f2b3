"""Bounded backward proof search.

Depth-first, depth bounded by proof height. Propositional rules and the
eigenvariable quantifier rules are height-preserving invertible and are
applied eagerly; every other rule is a choice point enumerated in a fixed
order. Cut and weakening are never tried (axioms absorb contexts). Contraction
is offered only for formulas that a non-invertible rule consumes, up to
``max_branch`` copies.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Optional, Union

from .binding import alpha_eq, free_params, fresh_param, instantiate, nameless, subterms
from .calculi import CalculusDefinition, check_proof, get_system
from .proof import ProofTree, Sequent, distinct, mcount, msub
from .rules import LL3_PR, relation
from .stratify import is_stratified
from .syntax import (
    And, BoundVar, Eq, Ex, Exists, Forall, Iff, Imp, In, Not, Or, Param, Pred, Tfo, atom_args,
    is_atomic, is_complex,
)


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 8
    max_branch: int = 2
    term_universe: tuple = ()   # extra instantiation candidates beyond the goal's subterms
    time_limit: float = 10.0    # seconds


@dataclass(frozen=True)
class Found:
    proof: ProofTree
    nodes: int = 0
    status = "found"


@dataclass(frozen=True)
class Exhausted:
    nodes: int = 0
    status = "exhausted"


@dataclass(frozen=True)
class TimedOut:
    nodes: int = 0
    status = "timeout"


SearchResult = Union[Found, Exhausted, TimedOut]


class _Timeout(Exception):
    pass


def _rest(seq, f):
    return msub(seq, [f])


def _seq(ante, succ):
    return Sequent(tuple(ante), tuple(succ))


def _replacements(x, t2, t1):
    """Every variant of ``x`` with a non-empty subset of the closed occurrences
    of ``t2`` replaced by ``t1`` (occurrences inside tfo bodies included)."""
    out = [v for v, changed in _variants(x, t2, t1) if changed]
    return distinct(out)


def _variants(x, t2, t1):
    match x:
        case BoundVar():
            return [(x, False)]
        case Param() | Tfo():
            here = []
            if alpha_eq(x, t2) and not _open(x):
                here.append((t1, True))
            if isinstance(x, Tfo):
                here += [(Tfo(x.op, x.var, b), c) for b, c in _variants(x.body, t2, t1)]
            else:
                here.append((x, False))
            return here
        case Pred(n, args):
            return [(Pred(n, tuple(a for a, _ in combo)), any(c for _, c in combo))
                    for combo in itertools.product(*(_variants(a, t2, t1) for a in args))]
        case Eq(l, r) | In(l, r):
            return [(type(x)(a, b), c1 or c2) for (a, c1), (b, c2)
                    in itertools.product(_variants(l, t2, t1), _variants(r, t2, t1))]
        case Ex(t):
            return [(Ex(a), c) for a, c in _variants(t, t2, t1)]
        case Not(s):
            return [(Not(a), c) for a, c in _variants(s, t2, t1)]
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return [(type(x)(a, b), c1 or c2) for (a, c1), (b, c2)
                    in itertools.product(_variants(l, t2, t1), _variants(r, t2, t1))]
        case Forall(v, b) | Exists(v, b):
            return [(type(x)(v, a), c) for a, c in _variants(b, t2, t1)]
    raise TypeError(x)


def _open(t):
    from .binding import free_bound_vars
    return bool(free_bound_vars(t))


class _Search:
    def __init__(self, sysdef: CalculusDefinition, goal: Sequent, budget: SearchBudget):
        self.sys = sysdef
        self.has = set(sysdef.rules)
        self.budget = budget
        self.goal_terms = subterms(goal) + [t for t in budget.term_universe
                                            if not any(alpha_eq(t, s) for s in subterms(goal))]
        self.goal_tfos = [t for t in self.goal_terms if isinstance(t, Tfo)]
        self.deadline = time.monotonic() + budget.time_limit
        self.failed: dict = {}
        self.nodes = 0
        self.loop_hit = False

    # -- universe ------------------------------------------------------------
    def universe(self, s: Sequent):
        terms = list(self.goal_terms)
        names = sorted(free_params(s))
        for n in names:
            if not any(isinstance(t, Param) and t.name == n for t in terms):
                terms.append(Param(n))
        if not any(isinstance(t, Param) for t in terms):
            terms.append(fresh_param(free_params(self.goal_terms)))
        return terms

    def inst(self, s):
        u = self.universe(s)
        return [t for t in u if isinstance(t, Param)] if self.sys.pure else u

    def fresh(self, s, k=1):
        avoid = free_params(s) | free_params(self.goal_terms)
        out = []
        for _ in range(k):
            p = fresh_param(avoid)
            avoid.add(p.name)
            out.append(p)
        return out if k > 1 else out[0]

    # -- main loop -------------------------------------------------------------
    def prove(self, s: Sequent, depth: int, path: frozenset) -> Optional[ProofTree]:
        if depth <= 0:
            return None
        self.nodes += 1
        if self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Timeout
        left = {nameless(f) for f in s.ante}
        if any(nameless(f) in left for f in s.succ):
            return ProofTree(s, "AX")
        key = s.key()
        if key in path:
            self.loop_hit = True
            return None
        if self.failed.get(key, 0) >= depth:
            return None
        saved, self.loop_hit = self.loop_hit, False
        path = path | {key}
        result = None
        inv = self.invertible(s)
        steps = [inv] if inv is not None else self.steps(s)
        for rule, prems in steps:
            kids = []
            for p in prems:
                k = self.prove(p, depth - 1, path)
                if k is None:
                    break
                kids.append(k)
            else:
                result = ProofTree(s, rule, tuple(kids))
                break
        if result is None and not self.loop_hit:
            self.failed[key] = max(self.failed.get(key, 0), depth)
        self.loop_hit = self.loop_hit or saved
        return result

    # -- invertible ------------------------------------------------------------------
    def invertible(self, s):
        for f in distinct(s.ante):
            r = _rest(s.ante, f)
            match f:
                case Not(a) if "not=>" in self.has:
                    return "not=>", [_seq(r, s.succ + (a,))]
                case And(a, b) if "and=>" in self.has:
                    return "and=>", [_seq((a, b) + r, s.succ)]
                case Or(a, b) if "or=>" in self.has:
                    return "or=>", [_seq((a,) + r, s.succ), _seq((b,) + r, s.succ)]
                case Imp(a, b) if "imp=>" in self.has:
                    return "imp=>", [_seq(r, s.succ + (a,)), _seq((b,) + r, s.succ)]
                case Iff(a, b) if "iff=>" in self.has:
                    return "iff=>", [_seq(r, s.succ + (a, b)), _seq((a, b) + r, s.succ)]
                case Exists() if "exists=>" in self.has:
                    a = self.fresh(s)
                    return "exists=>", [_seq((instantiate(f, a),) + r, s.succ)]
                case Exists() if "exists=>F" in self.has:
                    a = self.fresh(s)
                    return "exists=>F", [_seq((Ex(a), instantiate(f, a)) + r, s.succ)]
        for f in distinct(s.succ):
            r = _rest(s.succ, f)
            match f:
                case Not(a) if "=>not" in self.has:
                    return "=>not", [_seq((a,) + s.ante, r)]
                case And(a, b) if "=>and" in self.has:
                    return "=>and", [_seq(s.ante, r + (a,)), _seq(s.ante, r + (b,))]
                case Or(a, b) if "=>or" in self.has:
                    return "=>or", [_seq(s.ante, r + (a, b))]
                case Imp(a, b) if "=>imp" in self.has:
                    return "=>imp", [_seq((a,) + s.ante, r + (b,))]
                case Iff(a, b) if "=>iff" in self.has:
                    return "=>iff", [_seq((a,) + s.ante, r + (b,)), _seq((b,) + s.ante, r + (a,))]
                case Forall() if "=>forall" in self.has:
                    a = self.fresh(s)
                    return "=>forall", [_seq(s.ante, r + (instantiate(f, a),))]
                case Forall() if "=>forallF" in self.has:
                    a = self.fresh(s)
                    return "=>forallF", [_seq((Ex(a),) + s.ante, r + (instantiate(f, a),))]
        return None

    # -- choice points ------------------------------------------------------------------
    def steps(self, s):
        yield from self.left_steps(s)
        yield from self.right_steps(s)
        yield from self.free_steps(s)
        yield from self.contractions(s)

    def rel(self, b, t, op_in=False):
        return In(b, t) if op_in else relation(self.sys, b, t)

    def left_steps(self, s):
        h, succ = self.has, s.succ
        for f in distinct(s.ante):
            r = _rest(s.ante, f)
            if isinstance(f, Forall):
                if "forall=>" in h:
                    for t in self.inst(s):
                        yield "forall=>", [_seq((instantiate(f, t),) + r, succ)]
                if "forall=>F" in h:
                    for e in distinct(r):
                        if isinstance(e, Ex) and (not self.sys.pure or isinstance(e.arg, Param)):
                            yield "forall=>F", [_seq((instantiate(f, e.arg),) + _rest(r, e), succ)]
            if isinstance(f, Eq) and isinstance(f.rhs, Tfo):
                yield from self.t_left(s, f, r)
            if isinstance(f, Eq) and "eq=>" in h:
                for b in self.inst(s):
                    both = (In(b, f.lhs), In(b, f.rhs))
                    yield "eq=>", [_seq(r, succ + both), _seq(both + r, succ)]
            if isinstance(f, In) and isinstance(f.rhs, Tfo) and f.rhs.op == "set" and "Abs=>" in h:
                if is_stratified(f.rhs.body):
                    yield "Abs=>", [_seq((instantiate(f.rhs, f.lhs),) + r, succ)]
            if is_atomic(f) and "Str" in h:
                for t in distinct_terms(atom_args(f)):
                    if not any(alpha_eq(Ex(t), g) for g in s.ante):
                        yield "Str", [_seq((Ex(t),) + r, succ)]
            if isinstance(f, Ex) and "RefN" in h:
                if not any(alpha_eq(Eq(f.arg, f.arg), g) for g in s.ante):
                    yield "RefN", [_seq((Eq(f.arg, f.arg),) + r, succ)]
            if (isinstance(f, Eq) and isinstance(f.lhs, Param) and isinstance(f.rhs, Param)):
                for rid in ("E", "Tr"):
                    if rid in h:
                        for t in self.universe(s):
                            second = Eq(f.rhs, t) if rid == "E" else Eq(t, f.rhs)
                            yield rid, [_seq(r, succ + (Eq(f.lhs, t),)), _seq((second,) + r, succ)]
            if isinstance(f, Eq) and "1LL" in h:
                for g in distinct(r):
                    if is_atomic(g):
                        for g2 in _replacements(g, f.lhs, f.rhs):
                            yield "1LL", [_seq((g2,) + _rest(r, g), succ)]

    def t_left(self, s, f, r):
        h, succ, t, tfo = self.has, s.succ, f.lhs, f.rhs
        variants = []
        if "tau=>" in h:
            variants.append(("tau=>", False))
        if ":=>" in h and tfo.op == "set" and is_stratified(tfo.body):
            variants.append((":=>", True))
        for rid, op_in in variants:
            for b in self.inst(s):
                phi, rb = instantiate(tfo, b), self.rel(b, t, op_in)
                yield rid, [_seq(r, succ + (phi,)), _seq((rb,) + r, succ)]
                yield rid, [_seq(r, succ + (rb,)), _seq((phi,) + r, succ)]
        if "tau=>2" in h:
            yield "tau=>2", [_seq((Ex(t),) + r, succ)]
        for b in self.inst(s):
            phi, rb = instantiate(tfo, b), self.rel(b, t)
            if "tau=>1" in h:
                yield "tau=>1", [_seq(r, succ + (Ex(b),)), _seq(r, succ + (phi,)),
                                 _seq((rb,) + r, succ)]
            if "tau=>3" in h:
                yield "tau=>3", [_seq(r, succ + (rb,)), _seq((phi,) + r, succ)]

    def right_steps(self, s):
        h, ante = self.has, s.ante
        for f in distinct(s.succ):
            r = _rest(s.succ, f)
            if isinstance(f, Exists):
                if "=>exists" in h:
                    for t in self.inst(s):
                        yield "=>exists", [_seq(ante, r + (instantiate(f, t),))]
                if "=>existsF" in h:
                    for e in distinct(ante):
                        if isinstance(e, Ex) and (not self.sys.pure or isinstance(e.arg, Param)):
                            yield "=>existsF", [_seq(_rest(ante, e), r + (instantiate(f, e.arg),))]
            if isinstance(f, Eq) and isinstance(f.rhs, Tfo):
                t, tfo = f.lhs, f.rhs
                a = self.fresh(s)
                phi = instantiate(tfo, a)
                if "=>tau" in h:
                    ra = self.rel(a, t)
                    if self.sys.rules["=>tau"].arity == 3:
                        yield "=>tau", [_seq(ante, r + (Ex(t),)), _seq((Ex(a), phi) + ante, r + (ra,)),
                                        _seq((ra,) + ante, r + (phi,))]
                    else:
                        yield "=>tau", [_seq((phi,) + ante, r + (ra,)), _seq((ra,) + ante, r + (phi,))]
                if "=>:" in h and tfo.op == "set" and is_stratified(tfo.body):
                    ra = In(a, t)
                    yield "=>:", [_seq((phi,) + ante, r + (ra,)), _seq((ra,) + ante, r + (phi,))]
            if (isinstance(f, Eq) and isinstance(f.lhs, Tfo) and isinstance(f.rhs, Tfo)
                    and f.lhs.op == f.rhs.op):
                if "Ext" in h:
                    a = self.fresh(s)
                    fa, ga = instantiate(f.lhs, a), instantiate(f.rhs, a)
                    yield "Ext", [_seq((fa,) + ante, r + (ga,)), _seq((ga,) + ante, r + (fa,))]
                if "ExtAV" in h:
                    a, b = self.fresh(s, 2)
                    fa, gb = instantiate(f.lhs, a), instantiate(f.rhs, b)
                    yield "ExtAV", [_seq((Eq(a, b), fa) + ante, r + (gb,)),
                                    _seq((Eq(a, b), gb) + ante, r + (fa,))]
            if isinstance(f, Eq) and "=>eq" in h:
                a = self.fresh(s)
                yield "=>eq", [_seq((In(a, f.lhs),) + ante, r + (In(a, f.rhs),)),
                               _seq((In(a, f.rhs),) + ante, r + (In(a, f.lhs),))]
            if isinstance(f, In) and isinstance(f.rhs, Tfo) and f.rhs.op == "set" and "=>Abs" in h:
                if is_stratified(f.rhs.body):
                    yield "=>Abs", [_seq(ante, r + (instantiate(f.rhs, f.lhs),))]
            if is_atomic(f):
                for rid, ok in (("2LL", lambda g: True), ("2LL'", lambda g: isinstance(g, In)),
                                ("2LL''", _in_or_param_eq)):
                    if rid not in h or not ok(f):
                        continue
                    for t2 in subterms(f):
                        for t1 in self.universe(s):
                            if alpha_eq(t1, t2):
                                continue
                            for before in _replacements(f, t2, t1):
                                yield rid, [_seq(ante, r + (Eq(t1, t2),)), _seq(ante, r + (before,))]

    def free_steps(self, s):
        h, ante, succ = self.has, s.ante, s.succ

        def absent(phi):
            return not any(alpha_eq(phi, g) for g in ante)
        u = self.universe(s)
        if "Ref" in h:
            for t in u:
                if absent(Eq(t, t)):
                    yield "Ref", [_seq((Eq(t, t),) + ante, succ)]
        if "Ref'" in h:
            for t in u:
                if isinstance(t, Param) and absent(Eq(t, t)):
                    yield "Ref'", [_seq((Eq(t, t),) + ante, succ)]
        if "AV" in h:
            for t in self.goal_tfos:
                if absent(Eq(t, t)):
                    yield "AV", [_seq((Eq(t, t),) + ante, succ)]
        if "a=>" in h:
            for t in self.goal_tfos:
                if not any(isinstance(g, Eq) and isinstance(g.lhs, Param) and alpha_eq(g.rhs, t)
                           for g in ante):
                    yield "a=>", [_seq((Eq(self.fresh(s), t),) + ante, succ)]
        if "3LL" in h:
            for t, t1, t2 in itertools.product(u, repeat=3):
                e = Eq(t, t1)
                yield "3LL", [_seq(ante, succ + (e,)), _seq(ante, succ + (In(t2, t),)),
                              _seq((In(t2, t1),) + ante, succ)]
                yield "3LL", [_seq(ante, succ + (e,)), _seq(ante, succ + (In(t, t2),)),
                              _seq((In(t1, t2),) + ante, succ)]
        if "3LL'" in h:
            restricted = self.sys.rules["3LL'"] is LL3_PR
            for t, t1, t2 in itertools.product(u, repeat=3):
                if restricted and sum(map(is_complex, (t, t1, t2))) < 2 and not alpha_eq(t, t2):
                    continue
                yield "3LL'", [_seq(ante, succ + (Eq(t, t1),)), _seq(ante, succ + (Eq(t, t2),)),
                               _seq((Eq(t1, t2),) + ante, succ)]

    def contractions(self, s):
        cap = self.budget.max_branch
        if "C=>" in self.has:
            for f in distinct(s.ante):
                if isinstance(f, (Forall, Eq, Ex)) and mcount(s.ante, f) < cap:
                    yield "C=>", [_seq((f,) + s.ante, s.succ)]
        if "=>C" in self.has:
            for f in distinct(s.succ):
                if (isinstance(f, Exists) or is_atomic(f)) and mcount(s.succ, f) < cap:
                    yield "=>C", [_seq(s.ante, s.succ + (f,))]


def _in_or_param_eq(phi):
    return isinstance(phi, In) or (isinstance(phi, Eq) and isinstance(phi.lhs, Param)
                                   and isinstance(phi.rhs, Param))


def distinct_terms(ts):
    out = []
    for t in ts:
        if not _open(t) and not any(alpha_eq(t, u) for u in out):
            out.append(t)
    return out


def prove_bounded(system, goal: Sequent, budget: SearchBudget = SearchBudget(),
                  verify: bool = True) -> SearchResult:
    """Search for a cut-free proof of ``goal`` of height at most ``budget.max_depth``.

    Iterative deepening makes the result monotone in the depth bound and
    returns a proof of minimal height among those the enumeration reaches.
    """
    sysdef = get_system(system) if isinstance(system, str) else system
    search = _Search(sysdef, goal, budget)
    try:
        for d in range(1, budget.max_depth + 1):
            search.failed.clear()
            p = search.prove(goal, d, frozenset())
            if p is not None:
                if verify:
                    errs = check_proof(sysdef, p)
                    assert not errs, f"search produced an invalid proof: {errs[0]}"
                return Found(p, search.nodes)
    except _Timeout:
        return TimedOut(search.nodes)
    return Exhausted(search.nodes)


def find_refutation_absence(system, goal: Sequent, budget: SearchBudget = SearchBudget()):
    """Run the bounded search; an ``Exhausted`` result carries the number of
    explored nodes. Exhaustion only means no proof exists within the budget."""
    return prove_bounded(system, goal, budget)
