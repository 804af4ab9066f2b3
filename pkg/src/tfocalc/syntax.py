"""Terms, formulas, a recursive-descent parser and a round-tripping printer.

Concrete grammar (ASCII; Unicode aliases accepted on input only)::

    formula  ::= iff
    iff      ::= imp ( "<->" imp )*                 left-assoc, loosest
    imp      ::= or ( "->" imp )?                   right-assoc
    or       ::= and ( "|" and )*
    and      ::= unary ( "&" unary )*
    unary    ::= "not" unary
               | ("forall" | "exists") IDENT "(" formula ")"
               | "(" formula ")"
               | atom
    atom     ::= "E!" term
               | IDENT "(" [ term ( "," term )* ] ")"     predicate
               | term ( "=" | "!=" | "in" ) term
               | IDENT                                     0-ary predicate
    term     ::= IDENT
               | TFO IDENT "(" formula ")"                 TFO in tau iota eps count lambda
               | "{" IDENT ( "|" | ":" ) formula "}"       set abstract

An identifier used as a term is a bound variable iff an enclosing binder
binds it, otherwise a parameter.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

TFO_KEYWORDS = ("tau", "iota", "eps", "count", "lambda")
TFO_NAMES = TFO_KEYWORDS + ("set",)
KEYWORDS = frozenset(("forall", "exists", "not", "in") + TFO_KEYWORDS)


# --- terms -----------------------------------------------------------------

@dataclass(frozen=True)
class BoundVar:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Tfo:
    """A complex term ``op var (body)``; ``op == "set"`` is ``{ var | body }``."""
    op: str
    var: str
    body: "Formula"


Term = Union[BoundVar, Param, Tfo]


# --- formulas --------------------------------------------------------------

@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class In:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Ex:
    """The existence predicate ``E! t``."""
    arg: Term


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Pred, Eq, In, Ex, Not, And, Or, Imp, Iff, Forall, Exists]
ATOMS = (Pred, Eq, In, Ex)
BINARY = (And, Or, Imp, Iff)
QUANTIFIERS = (Forall, Exists)


def is_atomic(phi) -> bool:
    return isinstance(phi, ATOMS)


def is_complex(t) -> bool:
    return isinstance(t, Tfo)


def atom_args(phi) -> tuple:
    """Direct argument terms of an atomic formula."""
    match phi:
        case Pred(_, args):
            return args
        case Eq(l, r) | In(l, r):
            return (l, r)
        case Ex(t):
            return (t,)
    raise TypeError(f"not an atom: {phi!r}")


def complexity(phi) -> int:
    """Connective/quantifier depth; atoms (whatever terms they hold) are 0."""
    match phi:
        case Not(s):
            return 1 + complexity(s)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return 1 + max(complexity(l), complexity(r))
        case Forall(_, b) | Exists(_, b):
            return 1 + complexity(b)
    return 0


# --- signature -------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Admissible symbols. ``predicates=None`` accepts any predicate name with a
    consistent arity inside one parse."""
    predicates: Optional[Mapping[str, int]] = None
    tfos: frozenset = field(default_factory=lambda: frozenset(TFO_NAMES))
    equality: bool = True
    membership: bool = True
    existence: bool = True


DEFAULT_SIGNATURE = Signature()


class ParseError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None):
        self.message = message
        self.pos = pos
        where = "at end of input" if pos is None else f"at position {pos}"
        super().__init__(f"{message} {where}")


# --- tokenizer -------------------------------------------------------------

_UNICODE = {
    "⇒": "=>", "→": "->", "↔": "<->", "¬": "not", "∧": "&", "∨": "|",
    "∀": "forall", "∃": "exists", "∈": "in", "τ": "tau", "ι": "iota",
    "ı": "iota", "℩": "iota", "ε": "eps", "ϵ": "eps", "λ": "lambda", "♯": "count",
    "≠": "!=", "~": "not", "<=>": "<->",
}

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<op><->|<=>|->|=>|!=|E!|[(){}|,&=:;~⇒→↔¬∧∨∀∃∈τιı℩εϵλ♯≠])"
    r"|(?P<id>[A-Za-z_][A-Za-z0-9_']*)"
)


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "op":
            tok = _UNICODE.get(m.group(), m.group())
            tokens.append((tok, pos))
        elif m.lastgroup == "id":
            tokens.append((m.group(), pos))
        pos = m.end()
    return tokens


def _is_ident(tok: str) -> bool:
    return bool(re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok)) and tok not in KEYWORDS


# --- parser ----------------------------------------------------------------

class Parser:
    """Recursive-descent parser over a token list; shared with the sequent and
    proof-script readers."""

    def __init__(self, text: str, sig: Signature = DEFAULT_SIGNATURE):
        self.tokens = tokenize(text)
        self.i = 0
        self.sig = sig
        self.env: list[str] = []
        self.arities: dict[str, int] = {}

    # token helpers
    def peek(self, k: int = 0):
        j = self.i + k
        return self.tokens[j][0] if j < len(self.tokens) else None

    def pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else None

    def next(self):
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input")
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            found = self.peek()
            raise ParseError(f"expected {tok!r}" + ("" if found is None else f", found {found!r}"),
                             self.pos())
        self.i += 1

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def ident(self) -> str:
        tok = self.peek()
        if tok is None or not _is_ident(tok):
            raise ParseError("expected identifier" + ("" if tok is None else f", found {tok!r}"),
                             self.pos())
        self.i += 1
        return tok

    # grammar
    def formula(self):
        left = self.imp()
        while self.peek() == "<->":
            self.i += 1
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.peek() == "->":
            self.i += 1
            return Imp(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "|":
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "&":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "not":
            self.i += 1
            return Not(self.unary())
        if tok in ("forall", "exists"):
            self.i += 1
            var = self.ident()
            self.env.append(var)
            try:
                body = self.paren_formula()
            finally:
                self.env.pop()
            return Forall(var, body) if tok == "forall" else Exists(var, body)
        if tok == "(":
            return self.paren_formula()
        return self.atom()

    def paren_formula(self):
        self.expect("(")
        phi = self.formula()
        self.expect(")")
        return phi

    def atom(self):
        tok = self.peek()
        start = self.pos()
        if tok is None:
            raise ParseError("expected formula")
        if tok == "E!":
            if not self.sig.existence:
                raise ParseError("existence predicate disabled", start)
            self.i += 1
            return Ex(self.term())
        if _is_ident(tok) and self.peek(1) not in ("=", "!=", "in"):
            self.i += 1
            args: tuple = ()
            if self.peek() == "(":
                self.i += 1
                items = []
                if self.peek() != ")":
                    items.append(self.term())
                    while self.peek() == ",":
                        self.i += 1
                        items.append(self.term())
                self.expect(")")
                args = tuple(items)
            self.check_pred(tok, len(args), start)
            return Pred(tok, args)
        lhs = self.term()
        op = self.peek()
        if op not in ("=", "!=", "in"):
            raise ParseError("expected '=' or 'in' after term", self.pos())
        self.i += 1
        rhs = self.term()
        if op == "in":
            if not self.sig.membership:
                raise ParseError("membership predicate disabled", start)
            return In(lhs, rhs)
        if not self.sig.equality:
            raise ParseError("identity predicate disabled", start)
        return Eq(lhs, rhs) if op == "=" else Not(Eq(lhs, rhs))

    def check_pred(self, name: str, arity: int, pos):
        preds = self.sig.predicates
        if preds is None:
            known = self.arities.setdefault(name, arity)
        elif name not in preds:
            raise ParseError(f"unknown predicate {name!r}", pos)
        else:
            known = preds[name]
        if known != arity:
            raise ParseError(f"arity mismatch for {name!r}: expected {known}, got {arity}", pos)

    def term(self):
        tok = self.peek()
        start = self.pos()
        if tok in TFO_KEYWORDS:
            if tok not in self.sig.tfos:
                raise ParseError(f"term-forming operator {tok!r} not in signature", start)
            self.i += 1
            var = self.ident()
            self.env.append(var)
            try:
                body = self.paren_formula()
            finally:
                self.env.pop()
            return Tfo(tok, var, body)
        if tok == "{":
            if "set" not in self.sig.tfos:
                raise ParseError("set abstraction not in signature", start)
            self.i += 1
            var = self.ident()
            if self.peek() not in ("|", ":"):
                raise ParseError("expected '|' in set abstract", self.pos())
            self.i += 1
            self.env.append(var)
            try:
                body = self.formula()
            finally:
                self.env.pop()
            self.expect("}")
            return Tfo("set", var, body)
        name = self.ident()
        return BoundVar(name) if name in self.env else Param(name)


def _run(text: str, sig: Signature, rule):
    p = Parser(text, sig)
    try:
        result = rule(p)
    except RecursionError:
        raise ParseError("nesting too deep", p.pos()) from None
    if not p.at_end():
        raise ParseError(f"unexpected token {p.peek()!r}", p.pos())
    return result


def parse_formula(text: str, sig: Signature = DEFAULT_SIGNATURE):
    return _run(text, sig, Parser.formula)


def parse_term(text: str, sig: Signature = DEFAULT_SIGNATURE):
    return _run(text, sig, Parser.term)


# --- printer ---------------------------------------------------------------

_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4}
_SYM = {Iff: "<->", Imp: "->", Or: "|", And: "&"}


def _prec(phi) -> int:
    return _PREC.get(type(phi), 5)


def print_term(t) -> str:
    match t:
        case BoundVar(name) | Param(name):
            return name
        case Tfo("set", var, body):
            return f"{{ {var} | {print_formula(body)} }}"
        case Tfo(op, var, body):
            return f"{op} {var} ({print_formula(body)})"
    raise TypeError(f"not a term: {t!r}")


def print_formula(phi) -> str:
    match phi:
        case Pred(name, ()):
            return name
        case Pred(name, args):
            return f"{name}({', '.join(print_term(a) for a in args)})"
        case Eq(l, r):
            return f"{print_term(l)} = {print_term(r)}"
        case In(l, r):
            return f"{print_term(l)} in {print_term(r)}"
        case Ex(t):
            return f"E! {print_term(t)}"
        case Not(s):
            inner = print_formula(s)
            return f"not {inner}" if _prec(s) == 5 else f"not ({inner})"
        case Forall(v, b):
            return f"forall {v} ({print_formula(b)})"
        case Exists(v, b):
            return f"exists {v} ({print_formula(b)})"
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            p = _prec(phi)
            # right-assoc for ->, left-assoc for the rest
            lmin, rmin = (p + 1, p) if isinstance(phi, Imp) else (p, p + 1)
            ls, rs = print_formula(l), print_formula(r)
            if _prec(l) < lmin:
                ls = f"({ls})"
            if _prec(r) < rmin:
                rs = f"({rs})"
            return f"{ls} {_SYM[type(phi)]} {rs}"
    raise TypeError(f"not a formula: {phi!r}")


# --- well-formedness -------------------------------------------------------

def well_formed(x, sig: Optional[Signature] = None) -> tuple[bool, list[str]]:
    """Check the binding invariant (and, given ``sig``, the signature).

    Returns ``(ok, diagnostics)``; never raises on structurally typed input.
    """
    diags: list[str] = []
    arities: dict[str, int] = {}

    def name_ok(name, what):
        if not _is_ident(name):
            diags.append(f"invalid {what} name {name!r}")

    def term(t, env):
        match t:
            case BoundVar(name):
                if name not in env:
                    diags.append(f"unbound variable {name}")
            case Param(name):
                name_ok(name, "parameter")
                if name in env:
                    diags.append(f"parameter {name} shadowed by a binder of the same name")
            case Tfo(op, var, body):
                name_ok(var, "variable")
                if op not in TFO_NAMES or (sig is not None and op not in sig.tfos):
                    diags.append(f"unknown term-forming operator {op!r}")
                formula(body, env | {var})
            case _:
                diags.append(f"not a term: {t!r}")

    def formula(phi, env):
        match phi:
            case Pred(name, args):
                name_ok(name, "predicate")
                known = (arities.setdefault(name, len(args)) if sig is None or sig.predicates is None
                         else sig.predicates.get(name))
                if known is None:
                    diags.append(f"unknown predicate {name!r}")
                elif known != len(args):
                    diags.append(f"arity mismatch for {name!r}")
                for a in args:
                    term(a, env)
            case Eq(l, r) | In(l, r):
                if sig is not None and isinstance(phi, Eq) and not sig.equality:
                    diags.append("identity predicate disabled")
                if sig is not None and isinstance(phi, In) and not sig.membership:
                    diags.append("membership predicate disabled")
                term(l, env)
                term(r, env)
            case Ex(t):
                if sig is not None and not sig.existence:
                    diags.append("existence predicate disabled")
                term(t, env)
            case Not(s):
                formula(s, env)
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                formula(l, env)
                formula(r, env)
            case Forall(v, b) | Exists(v, b):
                name_ok(v, "variable")
                formula(b, env | {v})
            case _:
                diags.append(f"not a formula: {phi!r}")

    if isinstance(x, (BoundVar, Param, Tfo)):
        term(x, frozenset())
    else:
        formula(x, frozenset())
    return not diags, diags
