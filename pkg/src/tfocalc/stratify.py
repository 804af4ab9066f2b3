"""NF stratification: integer levels with ``t in t'`` at i / i+1 and ``t = t'`` at i / i.

Constraints are difference equations ``level(b) - level(a) = d`` solved with a
union-find carrying offsets to the representative.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .syntax import (
    BoundVar, Param, Tfo, Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists,
)


class Unsupported(Exception):
    pass


def _level(t, out, warnings):
    """Node name and offset for a term: level(t) = level(node) + offset."""
    match t:
        case Param(n) | BoundVar(n):
            return n, 0
        case Tfo("set", v, body):
            _collect(body, out, warnings)
            return v, 1
        case Tfo(op, _, _):
            raise Unsupported(f"term-forming operator {op!r} has no stratification rule")
    raise TypeError(t)


def _collect(phi, out, warnings):
    match phi:
        case In(l, r):
            (a, da), (b, db) = _level(l, out, warnings), _level(r, out, warnings)
            out.append((a, b, da + 1 - db))
        case Eq(l, r):
            (a, da), (b, db) = _level(l, out, warnings), _level(r, out, warnings)
            out.append((a, b, da - db))
        case Pred(name, args):
            warnings.append(f"atom {name} imposes no stratification constraint")
            for t in args:
                _level(t, out, warnings)
        case Ex(t):
            warnings.append("E! atom imposes no stratification constraint")
            _level(t, out, warnings)
        case Not(s) | Forall(_, s) | Exists(_, s):
            _collect(s, out, warnings)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            _collect(l, out, warnings)
            _collect(r, out, warnings)
        case _:
            raise TypeError(phi)


def constraints(phi):
    """``(edges, warnings, names)``; edge ``(a, b, d)`` demands level(b) - level(a) = d."""
    edges, warnings = [], []
    _collect(phi, edges, warnings)
    names = []
    for a, b, _ in edges:
        for n in (a, b):
            if n not in names:
                names.append(n)
    _names(phi, names)
    return edges, warnings, names


def _names(x, acc):
    match x:
        case Param(n) | BoundVar(n):
            if n not in acc:
                acc.append(n)
        case Tfo(_, v, b) | Forall(v, b) | Exists(v, b):
            if v not in acc:
                acc.append(v)
            _names(b, acc)
        case Pred(_, args):
            for a in args:
                _names(a, acc)
        case Eq(l, r) | In(l, r):
            _names(l, acc)
            _names(r, acc)
        case Ex(t) | Not(t):
            _names(t, acc)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            _names(l, acc)
            _names(r, acc)


@dataclass(frozen=True)
class StratAssignment:
    levels: dict
    warnings: tuple = ()
    ok = True

    def __str__(self):
        return "stratified: " + " ".join(f"{k}:{v}" for k, v in sorted(self.levels.items()))


@dataclass(frozen=True)
class Unstratifiable:
    """``cycle`` is a list of ``(a, b, d)`` steps whose offsets sum to non-zero."""
    cycle: tuple = ()
    reason: str = ""
    warnings: tuple = ()
    ok = False

    def __str__(self):
        if not self.cycle:
            return f"unstratifiable: {self.reason}"
        steps = " ".join(f"{a}-({d:+d})->{b}" for a, b, d in self.cycle)
        total = sum(d for _, _, d in self.cycle)
        return f"unstratifiable: cycle {steps} has offset sum {total:+d}"


class _Potentials:
    def __init__(self):
        self.parent: dict = {}
        self.offset: dict = {}  # level(x) - level(parent(x))

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.offset[x] = 0
            return x, 0
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root, acc = x, 0
        for y in reversed(path):
            acc += self.offset[y]
            self.offset[y] = acc
            self.parent[y] = root
        return root, (self.offset[path[0]] if path else 0)

    def union(self, a, b, d) -> bool:
        ra, oa = self.find(a)
        rb, ob = self.find(b)
        if ra == rb:
            return ob - oa == d
        self.parent[rb] = ra
        self.offset[rb] = oa + d - ob
        return True


def _path(adj, src, dst):
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for v, d in adj.get(u, ()):
            if v not in prev:
                prev[v] = (u, d)
                queue.append(v)
    steps = []
    node = dst
    while prev[node] is not None:
        u, d = prev[node]
        steps.append((u, node, d))
        node = u
    return list(reversed(steps))


def stratify(phi):
    """Canonical level assignment (each connected component shifted to minimum 0),
    or an Unstratifiable witness."""
    try:
        edges, warnings, names = constraints(phi)
    except Unsupported as e:
        return Unstratifiable((), str(e))
    uf = _Potentials()
    adj: dict = {}
    for a, b, d in edges:
        if not uf.union(a, b, d):
            cycle = [(a, b, d)] + _path(adj, b, a)
            return Unstratifiable(tuple(cycle), "inconsistent levels", tuple(warnings))
        adj.setdefault(a, []).append((b, d))
        adj.setdefault(b, []).append((a, -d))
    raw = {}
    for n in names:
        raw[n] = uf.find(n)
    low: dict = {}
    for root, off in raw.values():
        low[root] = min(low.get(root, off), off)
    levels = {n: off - low[root] for n, (root, off) in raw.items()}
    return StratAssignment(levels, tuple(dict.fromkeys(warnings)))


def is_stratified(phi) -> bool:
    return stratify(phi).ok
