"""Cut elimination for GC, GCI, GPC, GPCI, GS and GS'.

Cuts are removed topmost first. Each cut is handled as a multicut: ``m``
copies of the cut formula are cut from the left premise and ``n`` from the
right one, which absorbs trailing contractions without losing the measure.
Every recursive call is made on a strictly smaller pair
``(complexity of the cut formula, sum of premise heights)``; the order is
lexicographic and the decrease is asserted at runtime.
"""
from __future__ import annotations

import sys as _sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .binding import VACUOUS, alpha_eq, free_params, fresh_param, match_instance, nameless
from .calculi import check_inference, check_proof, get_system
from .proof import ProofTree, Sequent, distinct, height, mcount, msub, nodes
from .rules import RuleError
from .syntax import Forall, Exists, Param, complexity

SUPPORTED = ("GC", "GCI", "GPC", "GPCI", "GS", "GS'")

_QUANT_RULES = ("forall=>", "=>exists")


class CutElimError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CutMeasure:
    cut_formula_complexity: int
    cut_height: int

    def __str__(self):
        return f"({self.cut_formula_complexity}, {self.cut_height})"


@dataclass
class ReductionStep:
    kind: str
    before: ProofTree
    after: Optional[ProofTree]
    measure: CutMeasure
    cut_formula: object = None
    copies: tuple = (1, 1)
    depth: int = 0
    parent: Optional[int] = None
    substeps: list = field(default_factory=list)


# --- proof surgery ------------------------------------------------------------

def _local_params(parent: Sequent, child: ProofTree) -> set:
    return free_params(child.conclusion) - free_params(parent)


def subst_proof(p: ProofTree, name: str, term, avoid=()) -> ProofTree:
    """Replace parameter ``name`` by ``term`` in every sequent where it occurs
    free in the end-sequent's sense. Eigenvariables local to a subproof that
    clash with ``term`` are renamed first, so the height is unchanged."""
    tparams = free_params(term)
    avoid = set(avoid) | tparams | {name}

    def go(node: ProofTree) -> ProofTree:
        if name not in free_params(node.conclusion):
            return node
        kids = [go(c) for c in _rename_shared(node, tparams, avoid)]
        return ProofTree(node.conclusion.subst(name, term), node.rule, tuple(kids), (), node.line)

    return _deep(go, p)


def _rename_shared(node: ProofTree, clash: set, avoid: set) -> list:
    """Children of ``node`` with their local parameters that meet ``clash``
    renamed apart. An eigenvariable shared by several premises gets one fresh
    name in all of them."""
    kids = list(node.children)
    local = set().union(*(_local_params(node.conclusion, c) for c in kids)) if kids else set()
    for q in sorted(local & clash):
        fresh = fresh_param(avoid | clash | set().union(*(_all_params(c) for c in kids)))
        avoid.add(fresh.name)
        kids = [subst_proof(c, q, fresh, avoid) if q in _local_params(node.conclusion, c) else c
                for c in kids]
    return kids


def _all_params(p: ProofTree) -> set:
    acc = set()
    for _, n in nodes(p):
        acc |= free_params(n.conclusion)
    return acc


def _deep(fn, *args):
    limit = _sys.getrecursionlimit()
    _sys.setrecursionlimit(max(limit, 50_000))
    try:
        return fn(*args)
    finally:
        _sys.setrecursionlimit(limit)


def weaken(p: ProofTree, ante=(), succ=()) -> ProofTree:
    for f in ante:
        p = ProofTree(Sequent((f,) + p.conclusion.ante, p.conclusion.succ), "W=>", (p,))
    for f in succ:
        p = ProofTree(Sequent(p.conclusion.ante, p.conclusion.succ + (f,)), "=>W", (p,))
    return p


def fit(p: ProofTree, target: Sequent) -> ProofTree:
    """Contract surplus copies, then weaken in what is missing."""
    for side, rule in (("ante", "C=>"), ("succ", "=>C")):
        want = Counter(nameless(f) for f in getattr(target, side))
        for f in distinct(getattr(p.conclusion, side)):
            k = nameless(f)
            if want[k] == 0:
                raise CutElimError(f"cannot fit {p.conclusion} into {target}")
            while mcount(getattr(p.conclusion, side), f) > want[k]:
                seq = list(getattr(p.conclusion, side))
                idx = next(i for i, g in enumerate(seq) if nameless(g) == k)
                del seq[idx]
                c = p.conclusion
                new = Sequent(tuple(seq), c.succ) if side == "ante" else Sequent(c.ante, tuple(seq))
                p = ProofTree(new, rule, (p,))
    extra_a = msub(target.ante, p.conclusion.ante)
    extra_s = msub(target.succ, p.conclusion.succ)
    return weaken(p, extra_a, extra_s)


def _is_axiom(s: Sequent) -> bool:
    left = {nameless(f) for f in s.ante}
    return any(nameless(f) in left for f in s.succ)


def _principal_counts(node: ProofTree, side: str) -> Counter:
    """Formulas the last rule introduces on ``side`` of its conclusion."""
    if not node.children:
        return Counter()
    conc = Counter(nameless(f) for f in getattr(node.conclusion, side))
    prem = Counter(nameless(f) for f in getattr(node.children[0].conclusion, side))
    return conc - prem


# --- the multicut ------------------------------------------------------------------

class _Eliminator:
    def __init__(self, sysdef, record: bool):
        self.sys = sysdef
        self.record = record
        self.steps: list = []
        self.avoid: set = set()

    def target(self, L, R, phi, m, n) -> Sequent:
        return Sequent(L.conclusion.ante + msub(R.conclusion.ante, [phi] * n),
                       msub(L.conclusion.succ, [phi] * m) + R.conclusion.succ)

    def status(self, X: ProofTree, side: str, phi, k: int) -> str:
        if X.rule == "AX":
            return "ax"
        if not X.children:
            return "leaf"
        forms = getattr(X.conclusion, side)
        count = mcount(forms, phi)
        weak, contr = ("=>W", "=>C") if side == "succ" else ("W=>", "C=>")
        if X.rule == contr:
            extra = msub(getattr(X.children[0].conclusion, side), forms)
            if extra and alpha_eq(extra[0], phi) and count == k:
                return "contr"
            return "param"
        pf = _principal_counts(X, side)[nameless(phi)]
        if count - pf >= k and self._permutable(X, side, phi, k):
            return "param"
        return "weak" if X.rule == weak else "principal"

    def _permutable(self, X: ProofTree, side: str, phi, k: int) -> bool:
        """Does the rule still apply with ``k`` copies of ``phi`` taken out of its
        conclusion and of every premise? A formula-difference count alone is fooled
        when a side formula of a premise coincides with the principal one."""
        def drop(s: Sequent):
            rest = msub(getattr(s, side), [phi] * k)
            if rest is None:
                return None
            return Sequent(rest, s.succ) if side == "ante" else Sequent(s.ante, rest)
        prems = [drop(c.conclusion) for c in X.children]
        if any(q is None for q in prems):
            return False
        try:
            check_inference(self.sys, drop(X.conclusion), X.rule, tuple(prems), X.hints)
        except RuleError:
            return False
        return True

    def mcut(self, L, R, phi, m, n, parent=None, depth=0, pidx=None) -> ProofTree:
        measure = CutMeasure(complexity(phi), height(L) + height(R))
        if parent is not None:
            assert measure < parent, f"measure {measure} does not decrease below {parent}"
        T = self.target(L, R, phi, m, n)
        sL, sR = self.status(L, "succ", phi, m), self.status(R, "ante", phi, n)
        step, me = None, None
        if self.record:
            step = ReductionStep("", ProofTree(T, "Cut", (L, R)), None, measure, phi, (m, n), depth,
                                 pidx)
            self.steps.append(step)
            me = len(self.steps) - 1
        sub = dict(parent=measure, depth=depth + 1, pidx=me)

        if sL == "ax" and mcount(L.conclusion.ante, phi):
            kind, out = "axiom", fit(R, T)
        elif sR == "ax" and mcount(R.conclusion.succ, phi):
            kind, out = "axiom", fit(L, T)
        elif _is_axiom(T):
            kind, out = "axiom", ProofTree(T, "AX")
        elif sL == "weak":
            kind = "weakening-introduced"
            P = L.children[0]
            out = weaken(P, msub(R.conclusion.ante, [phi] * n), R.conclusion.succ) if m == 1 \
                else self.mcut(P, R, phi, m - 1, n, **sub)
        elif sR == "weak":
            kind = "weakening-introduced"
            P = R.children[0]
            out = weaken(P, L.conclusion.ante, msub(L.conclusion.succ, [phi] * m)) if n == 1 \
                else self.mcut(L, P, phi, m, n - 1, **sub)
        elif sL == "contr":
            kind, out = "parametric-left", self.mcut(L.children[0], R, phi, m + 1, n, **sub)
        elif sR == "contr":
            kind, out = "parametric-right", self.mcut(L, R.children[0], phi, m, n + 1, **sub)
        elif sL == "param":
            kind, out = "parametric-left", self.permute_left(L, R, phi, m, n, sub)
        elif sR == "param":
            kind, out = "parametric-right", self.permute_right(L, R, phi, m, n, sub)
        elif sL == "principal" and sR == "principal":
            kind = "principal-both"
            L1 = L if m == 1 else self.permute_left(L, R, phi, m - 1, n, sub)
            R1 = R if n == 1 else self.permute_right(L, R, phi, m, n - 1, sub)
            out = fit(self.principal(L1, R1, phi, sub), T)
        else:
            raise CutElimError(f"cut on {phi} between ({L.rule}) and ({R.rule}) cannot be reduced: "
                               "a premise is an open assumption")
        out = fit(out, T) if not out.conclusion.same(T) else out
        if step is not None:
            step.kind, step.after = kind, out
            if step.parent is not None:
                self.steps[step.parent].substeps.append(me)
        return out

    def _rename_locals(self, node: ProofTree, clash: set) -> ProofTree:
        kids = _rename_shared(node, clash, self.avoid)
        return ProofTree(node.conclusion, node.rule, tuple(kids), node.hints, node.line)

    def _reapply(self, node, kids, conclusion):
        new = ProofTree(conclusion, node.rule, tuple(kids), node.hints)
        check_inference(self.sys, conclusion, node.rule, tuple(k.conclusion for k in kids))
        return new

    def permute_left(self, L, R, phi, m, n, sub):
        L = self._rename_locals(L, free_params(R.conclusion))
        kids = [self.mcut(P, R, phi, m, n, **sub) for P in L.children]
        return self._reapply(L, kids, self.target(L, R, phi, m, n))

    def permute_right(self, L, R, phi, m, n, sub):
        R = self._rename_locals(R, free_params(L.conclusion))
        kids = [self.mcut(L, P, phi, m, n, **sub) for P in R.children]
        return self._reapply(R, kids, self.target(L, R, phi, m, n))

    # --- principal reductions -----------------------------------------------------
    def principal(self, L, R, phi, sub):
        cut = lambda a, b, f: self.mcut(a, b, f, 1, 1, **sub)  # noqa: E731
        pair = (L.rule, R.rule)
        ps = [c for c in L.children]
        qs = [c for c in R.children]
        if pair == ("=>not", "not=>"):
            return cut(qs[0], ps[0], phi.sub)
        if pair == ("=>and", "and=>"):
            x = cut(ps[0], qs[0], phi.left)
            return cut(ps[1], x, phi.right)
        if pair == ("=>or", "or=>"):
            x = cut(ps[0], qs[0], phi.left)
            return cut(x, qs[1], phi.right)
        if pair == ("=>imp", "imp=>"):
            x = cut(qs[0], ps[0], phi.left)
            return cut(x, qs[1], phi.right)
        if pair == ("=>iff", "iff=>"):
            a, b = phi.left, phi.right
            x = cut(qs[0], ps[0], a)          # Π, Γ => Σ, B, Δ, B
            x = self._contract(x, b, "succ")
            z = cut(ps[1], qs[1], a)          # B, Γ, B, Π => Δ, Σ
            z = self._contract(z, b, "ante")
            return cut(x, z, b)
        if pair == ("=>forall", "forall=>"):
            inst_l = msub(ps[0].conclusion.succ, msub(L.conclusion.succ, [phi]))[0]
            inst_r = msub(qs[0].conclusion.ante, msub(R.conclusion.ante, [phi]))[0]
            left = self._align(ps[0], phi, inst_l, inst_r, R)
            return cut(left, qs[0], inst_r)
        if pair == ("=>exists", "exists=>"):
            inst_l = msub(ps[0].conclusion.succ, msub(L.conclusion.succ, [phi]))[0]
            inst_r = msub(qs[0].conclusion.ante, msub(R.conclusion.ante, [phi]))[0]
            right = self._align(qs[0], phi, inst_r, inst_l, L)
            return cut(ps[0], right, inst_l)
        raise CutElimError(f"no principal reduction for ({L.rule}) against ({R.rule})")

    def _align(self, P, phi, eigen_inst, target_inst, other):
        """Substitute the eigenvariable of ``P`` so its instance matches ``target_inst``."""
        a = match_instance(phi, eigen_inst)
        t = match_instance(phi, target_inst)
        if a is VACUOUS or t is VACUOUS:
            return P
        if not isinstance(a, Param):
            raise CutElimError("eigenvariable instance is not a parameter")
        self.avoid |= free_params(other.conclusion)
        return subst_proof(P, a.name, t, self.avoid)

    def _contract(self, p, f, side):
        seq = getattr(p.conclusion, side)
        if mcount(seq, f) < 2:
            return p
        rest = list(msub(seq, [f]))
        c = p.conclusion
        new = Sequent(tuple(rest), c.succ) if side == "ante" else Sequent(c.ante, tuple(rest))
        return ProofTree(new, "C=>" if side == "ante" else "=>C", (p,))


def cut_formula(node: ProofTree):
    L, R = node.children
    for phi in distinct(L.conclusion.succ):
        pi = msub(R.conclusion.ante, [phi])
        if pi is None:
            continue
        s = Sequent(L.conclusion.ante + pi, msub(L.conclusion.succ, [phi]) + R.conclusion.succ)
        if s.same(node.conclusion):
            return phi
    raise CutElimError("node is not a correct cut")


def _system(system):
    sysdef = get_system(system) if isinstance(system, str) else system
    base = sysdef.id.split("[")[0]
    if base not in SUPPORTED:
        raise CutElimError(f"cut elimination is implemented for {', '.join(SUPPORTED)}, not {base}")
    return sysdef


def instantiation_scan(sysdef, p: ProofTree) -> list:
    """Nodes of a pure system's proof whose quantifier instance is not a parameter."""
    bad = []
    if not sysdef.pure:
        return bad
    for path, node in nodes(p):
        if node.rule in _QUANT_RULES and node.children:
            side = "ante" if node.rule == "forall=>" else "succ"
            for q in distinct(getattr(node.conclusion, side)):
                if not isinstance(q, (Forall, Exists)):
                    continue
                extra = msub(getattr(node.children[0].conclusion, side),
                             msub(getattr(node.conclusion, side), [q]) or ())
                if extra and len(extra) == 1:
                    t = match_instance(q, extra[0])
                    if t is not None and t is not VACUOUS and not isinstance(t, Param):
                        bad.append(path)
    return bad


def _precheck(sysdef, p, assumptions):
    errs = check_proof(sysdef, p, assumptions)
    if errs:
        raise CutElimError(f"input proof does not check: {errs[0]}")
    bad = instantiation_scan(sysdef, p)
    if bad:
        raise CutElimError(f"pure system instantiates a non-parameter at {bad[0]}")


def _topmost(p: ProofTree, path) -> bool:
    node = p
    for i in path:
        node = node.children[i]
    if node.rule != "Cut":
        return False
    return all(n.rule != "Cut" for c in node.children for _, n in nodes(c))


def reduce_one(system, p: ProofTree, path=(), assumptions=()) -> ReductionStep:
    """Eliminate the topmost cut at ``path``. The returned step's ``after`` is
    the whole proof with that cut replaced; ``substeps`` hold the recursion."""
    sysdef = _system(system)
    if not _topmost(p, path):
        raise CutElimError(f"path {tuple(path)} is not a topmost cut")
    el = _Eliminator(sysdef, record=True)
    el.avoid = _all_params(p)
    node = p
    for i in path:
        node = node.children[i]
    phi = cut_formula(node)
    L, R = node.children
    out = _deep(el.mcut, L, R, phi, 1, 1)
    out = fit(out, node.conclusion)
    from .proof import replace_at
    after = replace_at(p, tuple(path), out)
    top = el.steps[0]
    step = ReductionStep(top.kind, p, after, top.measure, phi, (1, 1), 0, None,
                         el.steps)
    errs = check_proof(sysdef, after, assumptions)
    if errs:
        raise CutElimError(f"reduction produced an invalid proof: {errs[0]}")
    return step


def _first_topmost(p: ProofTree):
    for path, node in nodes(p):
        if node.rule == "Cut" and _topmost(p, path):
            return path
    return None


def trace(system, p: ProofTree, assumptions=()) -> list:
    """One ReductionStep per eliminated cut, topmost first."""
    sysdef = _system(system)
    _precheck(sysdef, p, assumptions)
    out = []
    while (path := _first_topmost(p)) is not None:
        step = reduce_one(sysdef, p, path, assumptions)
        out.append(step)
        p = step.after
    return out


def eliminate_cuts(system, p: ProofTree, assumptions=(), check: bool = True) -> ProofTree:
    sysdef = _system(system)
    if check:
        _precheck(sysdef, p, assumptions)
    el = _Eliminator(sysdef, record=False)
    el.avoid = _all_params(p)

    def go(node: ProofTree) -> ProofTree:
        if not any(n.rule == "Cut" for _, n in nodes(node)):
            return node
        kids = tuple(go(c) for c in node.children)
        if node.rule != "Cut":
            return ProofTree(node.conclusion, node.rule, kids, node.hints)
        phi = cut_formula(ProofTree(node.conclusion, "Cut", kids))
        return fit(el.mcut(kids[0], kids[1], phi, 1, 1), node.conclusion)

    out = _deep(go, p)
    assert out.conclusion.same(p.conclusion)
    if check:
        errs = check_proof(sysdef, out, assumptions)
        if errs:
            raise CutElimError(f"elimination produced an invalid proof: {errs[0]}")
    return out


def flatten_trace(steps) -> list:
    """All recorded reductions with their nesting depth, in the order performed."""
    flat = []
    for s in steps:
        flat.extend(s.substeps if s.substeps else [s])
    return flat
