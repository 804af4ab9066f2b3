"""Calculus catalog, single-inference checking and whole-proof checking."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import rules as R
from .binding import alpha_eq, free_bound_vars
from .proof import Assumption, ProofTree, Sequent, nodes
from .rules import Node, RuleError, RuleSchema
from .syntax import (
    BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists,
)


@dataclass(frozen=True)
class CalculusDefinition:
    id: str
    rules: dict = field(hash=False)
    pure: bool = False
    relation_R: str = "R"
    description: str = ""
    experimental: bool = False

    def rule(self, rid: str) -> RuleSchema:
        return self.rules[rid]

    def __contains__(self, rid):
        return rid in self.rules


def _d(*groups):
    out = {}
    for g in groups:
        if isinstance(g, dict):
            g = list(g.values())
        for s in (g if isinstance(g, (list, tuple)) else [g]):
            out[s.id] = s
    return out


def _build_catalog() -> dict:
    base = R.STRUCTURAL + R.PROPOSITIONAL
    gc = _d(base, R.QUANTIFIER)
    gf = _d(base, R.FREE_QUANTIFIER)
    ident = [R.REF, R.LL2]
    ident_n = [R.REF_N, R.LL2]
    entries = [
        ("GC", gc, False, "classical first-order logic"),
        ("GPC", gc, True, "pure classical: instantiation by parameters only"),
        ("GCI", _d(gc, ident), False, "GC with identity"),
        ("GPCI", _d(gc, ident), True, "GPC with identity"),
        ("GF", gf, False, "positive free logic"),
        ("GPF", gf, True, "pure positive free logic"),
        ("GFI", _d(gf, ident), False, "GF with identity"),
        ("GPFI", _d(gf, ident), True, "GPF with identity"),
        ("GNF", _d(gf, R.STR), False, "negative free logic"),
        ("GPNF", _d(gf, R.STR), True, "pure negative free logic"),
        ("GNFI", _d(gf, R.STR, ident_n), False, "GNF with identity"),
        ("GPNFI", _d(gf, R.STR, ident_n), True, "GPNF with identity"),
    ]
    cat = {k: CalculusDefinition(k, rs, pure, "R", desc) for k, rs, pure, desc in entries}
    gpci = cat["GPCI"].rules
    cat["GS"] = CalculusDefinition("GS", _d(gpci, R.EXT, R.AV, R.A_INTRO), True,
                                   description="S-approach: extensionality, alphabetic variants")
    cat["GS'"] = CalculusDefinition("GS'", _d(gpci, R.EXTAV, R.A_INTRO), True,
                                    description="S-approach with (ExtAV) replacing (Ext), (AV)")
    cat["GT-FREE"] = CalculusDefinition(
        "GT-FREE", _d(cat["GPNFI"].rules, R.T_RIGHT_FREE, R.T_LEFT1, R.T_LEFT2, R.T_LEFT3), True,
        "R", "T-approach over pure negative free logic")
    cls = _d(cat["GCI"].rules, R.T_RIGHT, R.T_LEFT)
    cat["GT-CLASSICAL"] = CalculusDefinition("GT-CLASSICAL", cls, False, "R",
                                             "T-approach over classical logic")
    cat["GT-CLASSICAL-UNSOUND"] = CalculusDefinition(
        "GT-CLASSICAL-UNSOUND", cls, False, "=",
        "classical T-rules with R read as identity (inconsistent for iota)")
    gpc = cat["GPC"].rules
    cat["GSNF"] = CalculusDefinition(
        "GSNF", _d(gpc, R.EQ_LEFT, R.EQ_RIGHT, R.ABS_L, R.ABS_R, R.LL3), True, "in",
        "NF-style set theory, S-approach")
    cat["GTNF"] = CalculusDefinition(
        "GTNF", _d(gpc, R.COLON_LEFT, R.COLON_RIGHT, R.LL2_P, R.LL3_P, R.REF), True, "in",
        "NF-style set theory, T-approach")
    cat["GTNF'"] = CalculusDefinition(
        "GTNF'", _d(gpc, R.COLON_LEFT, R.COLON_RIGHT, R.LL2_PP, R.LL3_PR, R.REF, R.E_RULE), True,
        "in", "GTNF with (2LL'') and restricted (3LL'), plus (E)")
    cat["GTNF'-TR"] = CalculusDefinition(
        "GTNF'-TR", _d(cat["GTNF'"].rules, R.TR_RULE), True, "in",
        "GTNF' with (Tr) added", experimental=True)
    cat["GS-1LL"] = CalculusDefinition(
        "GS-1LL", _d(cat["GS"].rules, R.LL1), True, description="GS plus left Leibniz (1LL)",
        experimental=True)
    ref_p = {k: v for k, v in cat["GS"].rules.items() if k != "Ref"}
    ref_p[R.REF_P.id] = R.REF_P
    cat["GS-REF'"] = CalculusDefinition("GS-REF'", ref_p, True,
                                        description="GS with (Ref') in place of (Ref)",
                                        experimental=True)
    return cat


CATALOG = _build_catalog()
_ALIASES = {"GS′": "GS'", "GTNF′": "GTNF'", "GTNF′-TR": "GTNF'-TR", "GS-REF′": "GS-REF'"}
_RELATIONS = {"=": "=", "in": "in", "∈": "in"}


def get_system(spec: str) -> CalculusDefinition:
    """Look up a calculus; ``ID[=]``, ``ID[in]`` or ``ID[Name]`` fixes the relation R."""
    spec = spec.strip()
    rel = None
    if spec.endswith("]") and "[" in spec:
        spec, _, rel = spec[:-1].partition("[")
        rel = rel.strip()
    key = _ALIASES.get(spec, spec).upper().replace("GS'", "GS'")
    sysdef = CATALOG.get(key) or CATALOG.get(spec)
    if sysdef is None:
        raise KeyError(f"unknown calculus {spec!r}; known: {', '.join(CATALOG)}")
    if rel:
        sysdef = replace(sysdef, id=f"{sysdef.id}[{rel}]",
                         relation_R=_RELATIONS.get(rel, rel))
    return sysdef


# --- checking -----------------------------------------------------------------------

def check_inference(system, conclusion: Sequent, rule: str, premises=(), hints=()) -> None:
    """Raise RuleError unless ``premises / conclusion`` is an instance of ``rule``."""
    sysdef = get_system(system) if isinstance(system, str) else system
    if rule not in sysdef.rules:
        raise RuleError("rule-not-in-system", f"{sysdef.id} has no rule ({rule})", rule=rule)
    schema = sysdef.rules[rule]
    if len(premises) != schema.arity:
        raise RuleError("premise-count",
                        f"({rule}) takes {schema.arity} premise(s), got {len(premises)}", rule=rule)
    node = Node(conclusion, tuple(premises), dict(hints))
    try:
        schema.check(node, sysdef)
    except RuleError as e:
        e.rule = rule
        e.args = (e.describe(),)
        raise
    except ValueError as e:  # malformed hint text
        raise RuleError("hint", str(e), rule=rule) from None


def _match_term(p, q, schem, subst, penv, qenv):
    if isinstance(p, Param) and p.name in schem:
        if free_bound_vars(q) - set(qenv):
            return False
        if free_bound_vars(q):
            return False
        if p.name in subst:
            return alpha_eq(subst[p.name], q)
        subst[p.name] = q
        return True
    if isinstance(p, BoundVar) or isinstance(q, BoundVar):
        if not (isinstance(p, BoundVar) and isinstance(q, BoundVar)):
            return False
        i = _idx(p.name, penv)
        j = _idx(q.name, qenv)
        return i == j and (i is not None or p.name == q.name)
    if type(p) is not type(q):
        return False
    match p:
        case Param(n):
            return n == q.name
        case Tfo(op, v, b):
            return op == q.op and _match_term(b, q.body, schem, subst, penv + [v], qenv + [q.var])
        case Pred(n, args):
            return n == q.name and len(args) == len(q.args) and all(
                _match_term(a, c, schem, subst, penv, qenv) for a, c in zip(args, q.args))
        case Eq(l, r) | In(l, r):
            return (_match_term(l, q.lhs, schem, subst, penv, qenv)
                    and _match_term(r, q.rhs, schem, subst, penv, qenv))
        case Ex(t):
            return _match_term(t, q.arg, schem, subst, penv, qenv)
        case Not(s):
            return _match_term(s, q.sub, schem, subst, penv, qenv)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return (_match_term(l, q.left, schem, subst, penv, qenv)
                    and _match_term(r, q.right, schem, subst, penv, qenv))
        case Forall(v, b) | Exists(v, b):
            return _match_term(b, q.body, schem, subst, penv + [v], qenv + [q.var])
    return False


def _idx(name, env):
    for i in range(len(env) - 1, -1, -1):
        if env[i] == name:
            return len(env) - 1 - i
    return None


def _match_side(pats, targets, schem, subst):
    if not pats:
        return subst if not targets else None
    first, rest = pats[0], pats[1:]
    for i, t in enumerate(targets):
        trial = dict(subst)
        if _match_term(first, t, schem, trial, [], []):
            out = _match_side(rest, targets[:i] + targets[i + 1:], schem, trial)
            if out is not None:
                return out
    return None


def match_assumption(a: Assumption, s: Sequent):
    """Substitution for the schematic parameters making ``a`` equal to ``s``, or None."""
    if len(a.sequent.ante) != len(s.ante) or len(a.sequent.succ) != len(s.succ):
        return None
    sub = _match_side(list(a.sequent.ante), list(s.ante), a.schematic, {})
    if sub is None:
        return None
    # the succedent must agree with the same substitution
    return _match_side(list(a.sequent.succ), list(s.succ), a.schematic, sub)


def _check_leaf(node: ProofTree, assumptions):
    kind = "hyp" if node.rule == "Hyp" else "axiom"
    if node.children:
        raise RuleError("premise-count", f"({node.rule}) is a leaf", rule=node.rule)
    for a in assumptions:
        if a.kind == kind and match_assumption(a, node.conclusion) is not None:
            return
    raise RuleError("assumption", f"{node.conclusion} matches no declared "
                                  f"{'assumption' if kind == 'hyp' else 'axiom'}", rule=node.rule)


def check_node(sysdef, node: ProofTree, assumptions=()):
    if node.rule in ("Hyp", "Axiom"):
        _check_leaf(node, assumptions)
        return
    check_inference(sysdef, node.conclusion, node.rule,
                    tuple(c.conclusion for c in node.children), node.hints)


def check_proof(system, p: ProofTree, assumptions=()) -> list:
    """All errors in the tree, each located by script line (if any) and path.
    An empty list means the tree is a correct derivation."""
    sysdef = get_system(system) if isinstance(system, str) else system
    errors, seen = [], set()
    for path, node in nodes(p):
        if id(node) in seen:
            continue
        seen.add(id(node))
        try:
            check_node(sysdef, node, assumptions)
        except RuleError as e:
            e.line, e.path = node.line, path
            e.args = (e.describe(),)
            errors.append(e)
    return errors


def rule_table(system=None) -> str:
    """Markdown table of rule schemas, for one calculus or the union of all."""
    if system is None:
        schemas = {}
        for c in CATALOG.values():
            for k, s in c.rules.items():
                schemas.setdefault((k, s.premises), s)
        items = list(schemas.values())
    else:
        items = list((get_system(system) if isinstance(system, str) else system).rules.values())
    rows = ["| rule | premises | conclusion | side conditions |", "|---|---|---|---|"]
    for s in items:
        cells = [s.id, " ; ".join(s.premises) or "(none)", s.conclusion,
                 "; ".join(s.side_conditions)]
        rows.append("| " + " | ".join(c.replace("|", r"\|") for c in cells) + " |")
    return "\n".join(rows)
