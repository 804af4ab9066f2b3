"""Sequents, proof trees, heights and the proof-script text format.

Script grammar (one item per line, ``#`` starts a comment)::

    system <ID>
    proof <name>
    assume [a b ...] <SEQUENT>       open premise; listed parameters are schematic
    axiom <SEQUENT>                  extra axiomatic sequent; all parameters schematic
    N. <SEQUENT> ; <RULE> [P1 P2 ...] [with key=value; key=value ...]

A sequent is ``A1, ..., An => S1, ..., Sm``; either side may be empty.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .binding import nameless, subst_param, free_params, fresh_param
from .syntax import Parser, ParseError, Signature, DEFAULT_SIGNATURE, print_formula


# --- multisets ---------------------------------------------------------------

def mkey(formulas) -> frozenset:
    """Order-insensitive, multiplicity-sensitive key modulo alpha-equivalence."""
    return frozenset(Counter(nameless(f) for f in formulas).items())


def same_multiset(a, b) -> bool:
    return len(a) == len(b) and mkey(a) == mkey(b)


def msub(big, small) -> Optional[tuple]:
    """``big - small`` as multisets (alpha-equality), or None if small is not contained."""
    rest = list(big)
    keys = [nameless(f) for f in rest]
    for f in small:
        k = nameless(f)
        try:
            i = keys.index(k)
        except ValueError:
            return None
        del rest[i]
        del keys[i]
    return tuple(rest)


def mcount(seq, phi) -> int:
    k = nameless(phi)
    return sum(1 for f in seq if nameless(f) == k)


def distinct(seq) -> list:
    seen, out = set(), []
    for f in seq:
        k = nameless(f)
        if k not in seen:
            seen.add(k)
            out.append(f)
    return out


@dataclass(frozen=True)
class Sequent:
    ante: tuple = ()
    succ: tuple = ()

    def key(self):
        return mkey(self.ante), mkey(self.succ)

    def same(self, other: "Sequent") -> bool:
        return same_multiset(self.ante, other.ante) and same_multiset(self.succ, other.succ)

    def add(self, ante=(), succ=()) -> "Sequent":
        return Sequent(tuple(ante) + self.ante, self.succ + tuple(succ))

    def subst(self, name: str, term) -> "Sequent":
        return Sequent(tuple(subst_param(f, name, term) for f in self.ante),
                       tuple(subst_param(f, name, term) for f in self.succ))

    def params(self) -> set:
        return free_params(self)

    def __str__(self):
        return print_sequent(self)


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.ante)
    right = ", ".join(print_formula(f) for f in s.succ)
    return f"{left} => {right}".strip()


def _formula_list(p: Parser, stop) -> tuple:
    items = []
    if p.peek() in stop:
        return ()
    items.append(p.formula())
    while p.peek() == ",":
        p.i += 1
        items.append(p.formula())
    return tuple(items)


def parse_sequent(text: str, sig: Signature = DEFAULT_SIGNATURE) -> Sequent:
    p = Parser(text, sig)
    try:
        ante = _formula_list(p, ("=>",))
        p.expect("=>")
        succ = _formula_list(p, (None,))
    except RecursionError:
        raise ParseError("nesting too deep", p.pos()) from None
    if not p.at_end():
        raise ParseError(f"unexpected token {p.peek()!r}", p.pos())
    return Sequent(ante, succ)


# --- proof trees ---------------------------------------------------------------

@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: str
    children: tuple = ()
    hints: tuple = ()  # (key, text) pairs; only used to prune matching
    line: Optional[int] = field(default=None, compare=False)

    def hint(self, key, default=None):
        return dict(self.hints).get(key, default)


def height(p: ProofTree, _memo=None) -> int:
    """Number of nodes on the longest branch."""
    memo = {} if _memo is None else _memo
    stack = [p]
    while stack:
        node = stack[-1]
        if id(node) in memo:
            stack.pop()
            continue
        pending = [c for c in node.children if id(c) not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[id(node)] = 1 + max((memo[id(c)] for c in node.children), default=0)
        stack.pop()
    return memo[id(p)]


def nodes(p: ProofTree):
    """Pre-order traversal yielding ``(path, node)``; path is a tuple of child indices."""
    stack = [((), p)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for i in range(len(node.children) - 1, -1, -1):
            stack.append((path + (i,), node.children[i]))


def subtree(p: ProofTree, path) -> ProofTree:
    for i in path:
        p = p.children[i]
    return p


def replace_at(p: ProofTree, path, new: ProofTree) -> ProofTree:
    if not path:
        return new
    i = path[0]
    kids = list(p.children)
    kids[i] = replace_at(kids[i], path[1:], new)
    return ProofTree(p.conclusion, p.rule, tuple(kids), p.hints, p.line)


def tree_params(p: ProofTree) -> set:
    acc = set()
    for _, n in nodes(p):
        acc |= n.conclusion.params()
    return acc


def count_rule(p: ProofTree, rule: str) -> int:
    return sum(1 for _, n in nodes(p) if n.rule == rule)


# --- scripts -------------------------------------------------------------------

class StructureError(ValueError):
    pass


class ScriptParseError(ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        super().__init__(message if lineno is None else f"line {lineno}: {message}")


@dataclass(frozen=True)
class Assumption:
    sequent: Sequent
    schematic: frozenset = frozenset()
    kind: str = "hyp"  # "hyp" (rule premise) or "axiom"

    def subst(self, name, term) -> "Assumption":
        if name in self.schematic:
            return self
        seq, schem = self.sequent, set(self.schematic)
        # schematic names act as binders: rename them away from the incoming term
        for q in sorted(schem & free_params(term)):
            fresh = fresh_param(free_params(seq) | free_params(term) | schem | {name})
            seq = seq.subst(q, fresh)
            schem = (schem - {q}) | {fresh.name}
        return Assumption(seq.subst(name, term), frozenset(schem), self.kind)


@dataclass
class ScriptLine:
    number: int
    sequent: Sequent
    rule: str
    premises: tuple = ()
    hints: tuple = ()
    source_line: Optional[int] = None


@dataclass
class ProofScript:
    system: str
    name: str
    lines: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)


_RULE_UNICODE = {"⇒": "=>", "∀": "forall", "∃": "exists", "¬": "not", "∧": "and",
                 "∨": "or", "→": "imp", "↔": "iff", "τ": "tau", "′": "'", "″": "''"}


def normalize_rule(rule: str) -> str:
    for k, v in _RULE_UNICODE.items():
        rule = rule.replace(k, v)
    return rule


_LINE_RE = re.compile(r"^\s*(\d+)\s*\.\s*(.*)$")
_TAIL_RE = re.compile(r"^(?P<rule>\S+)\s*(?:\[(?P<prem>[^\]]*)\])?\s*(?:with\s+(?P<hints>.*))?$")


def parse_script(text: str, sig: Signature = DEFAULT_SIGNATURE) -> ProofScript:
    script = ProofScript(system="", name="")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("system "):
                script.system = line.split(None, 1)[1].strip()
            elif line.startswith("proof "):
                script.name = line.split(None, 1)[1].strip()
            elif line.startswith("assume "):
                rest = line[len("assume "):].strip()
                schematic = frozenset()
                if rest.startswith("["):
                    close = rest.index("]")
                    schematic = frozenset(rest[1:close].split())
                    rest = rest[close + 1:]
                script.assumptions.append(Assumption(parse_sequent(rest, sig), schematic, "hyp"))
            elif line.startswith("axiom "):
                seq = parse_sequent(line[len("axiom "):], sig)
                script.assumptions.append(Assumption(seq, frozenset(seq.params()), "axiom"))
            else:
                m = _LINE_RE.match(line)
                if not m:
                    raise ScriptParseError(f"cannot read {line!r}")
                number = int(m.group(1))
                if ";" not in m.group(2):
                    raise ScriptParseError("missing ';' before rule name")
                seq_text, tail = m.group(2).split(";", 1)
                t = _TAIL_RE.match(tail.strip())
                if not t:
                    raise ScriptParseError(f"cannot read rule part {tail.strip()!r}")
                premises = tuple(int(x) for x in (t.group("prem") or "").replace(",", " ").split())
                hints = []
                if t.group("hints"):
                    for item in t.group("hints").split(";"):
                        if item.strip():
                            k, _, v = item.partition("=")
                            hints.append((k.strip(), v.strip()))
                script.lines.append(ScriptLine(number, parse_sequent(seq_text, sig),
                                               normalize_rule(t.group("rule")), premises,
                                               tuple(hints), lineno))
        except ScriptParseError as e:
            if e.lineno is None:
                raise ScriptParseError(str(e), lineno) from None
            raise
        except ValueError as e:  # includes ParseError
            raise ScriptParseError(str(e), lineno) from None
    if not script.system:
        raise ScriptParseError("missing 'system' header")
    return script


def script_to_tree(s: ProofScript) -> ProofTree:
    """Unfold the numbered lines into a tree rooted at the last line."""
    if not s.lines:
        raise StructureError("missing final line")
    built: dict[int, ProofTree] = {}
    for ln in s.lines:
        if ln.number in built:
            raise StructureError(f"line {ln.number} defined twice")
        kids = []
        for ref in ln.premises:
            if ref >= ln.number or (ref not in built and any(l.number == ref for l in s.lines)):
                raise StructureError(f"forward reference to line {ref} from line {ln.number}")
            if ref not in built:
                raise StructureError(f"dangling premise {ref} in line {ln.number}")
            kids.append(built[ref])
        built[ln.number] = ProofTree(ln.sequent, ln.rule, tuple(kids), ln.hints, ln.number)
    return built[s.lines[-1].number]


def tree_to_script(p: ProofTree, system: str, name: str = "proof", assumptions=()) -> ProofScript:
    """Linearize a tree (post-order); physically shared subtrees are emitted once."""
    script = ProofScript(system, name, [], list(assumptions))
    numbers: dict[int, int] = {}

    def emit(node):
        if id(node) in numbers:
            return numbers[id(node)]
        refs = tuple(emit(c) for c in node.children)
        n = len(script.lines) + 1
        script.lines.append(ScriptLine(n, node.conclusion, node.rule, refs, node.hints))
        numbers[id(node)] = n
        return n

    # iterative guard for deep trees
    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        emit(p)
    finally:
        sys.setrecursionlimit(limit)
    return script


def format_script(s: ProofScript) -> str:
    out = [f"system {s.system}", f"proof {s.name}"]
    for a in s.assumptions:
        if a.kind == "axiom":
            out.append(f"axiom {print_sequent(a.sequent)}")
        elif a.schematic:
            out.append(f"assume [{' '.join(sorted(a.schematic))}] {print_sequent(a.sequent)}")
        else:
            out.append(f"assume {print_sequent(a.sequent)}")
    for ln in s.lines:
        text = f"{ln.number}. {print_sequent(ln.sequent)} ; {ln.rule}"
        if ln.premises:
            text += " [" + " ".join(str(x) for x in ln.premises) + "]"
        if ln.hints:
            text += " with " + "; ".join(f"{k}={v}" for k, v in ln.hints)
        out.append(text)
    return "\n".join(out) + "\n"
