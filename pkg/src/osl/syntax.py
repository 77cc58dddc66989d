"""Propositions and sequents: AST, parser, printer, negation normal form.

Concrete syntax (Unicode aliases in brackets)::

    prop    := disj
    disj    := conj [ '|' conj ]          # a second '|' needs parentheses
    conj    := unary [ '&' unary ]        # a second '&' needs parentheses
    unary   := '~' unary | atom | '(' prop ')'
    atom    := [a-zA-Z][a-zA-Z0-9_]*
    sequent := [ prop { ',' prop } ] '|-' [ prop { ',' prop } ]

``~`` [¬] binds tightest, then ``&`` [∧], then ``|`` [∨]; ``|-`` [⊢, ⊨] is
the turnstile.  Both binary connectives are non-associative, so ``p & q & r``
is rejected rather than silently associated.
"""

from __future__ import annotations

import re
import functools
from dataclasses import dataclass, fields
from typing import Union

from .errors import ParseError


_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")


def _cached_hash(self):
    # formulas are hashed constantly during search; nested trees would
    # otherwise rehash their whole subtree every time
    try:
        return self.__dict__["_hash"]
    except KeyError:
        h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self._fields))
        object.__setattr__(self, "_hash", h)
        return h


def _node(cls):
    cls = dataclass(frozen=True)(cls)
    cls._fields = tuple(f.name for f in fields(cls))
    cls.__hash__ = _cached_hash
    return cls


@_node
class Atom:
    name: str

    def __post_init__(self):
        if not _NAME_RE.fullmatch(self.name):
            raise ParseError(f"bad atom name {self.name!r}", self.name)

    def __str__(self):
        return format_prop(self)


@_node
class Neg:
    arg: "Prop"

    def __str__(self):
        return format_prop(self)


@_node
class And:
    left: "Prop"
    right: "Prop"

    def __str__(self):
        return format_prop(self)


@_node
class Or:
    left: "Prop"
    right: "Prop"

    def __str__(self):
        return format_prop(self)


Prop = Union[Atom, Neg, And, Or]


@dataclass(frozen=True)
class Sequent:
    lhs: tuple = ()
    rhs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def __str__(self):
        return format_sequent(self)


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------

_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "⊢": "|-", "⊨": "|-"}
_TOKEN_RE = re.compile(r"\s*(?:(\|-|[~&|(),¬∧∨⊢⊨])|([a-zA-Z][a-zA-Z0-9_]*)|(\S))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.group(3) is not None:
            raise ParseError(f"unexpected character {m.group(3)!r}", text, m.start(3))
        if m.group(1) is not None:
            tokens.append((_ALIASES.get(m.group(1), m.group(1)), m.start(1)))
        else:
            tokens.append(("atom:" + m.group(2), m.start(2)))
        pos = m.end()
    tokens.append(("eof", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.text, self.pos())

    def prop(self) -> Prop:
        left = self.conj()
        if self.peek() == "|":
            self.take()
            right = self.conj()
            if self.peek() == "|":
                self.fail("ambiguous association of '|': add parentheses")
            return Or(left, right)
        return left

    def conj(self) -> Prop:
        left = self.unary()
        if self.peek() == "&":
            self.take()
            right = self.unary()
            if self.peek() == "&":
                self.fail("ambiguous association of '&': add parentheses")
            return And(left, right)
        return left

    def unary(self) -> Prop:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Neg(self.unary())
        if tok == "(":
            self.take()
            p = self.prop()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return p
        if tok.startswith("atom:"):
            self.take()
            return Atom(tok[5:])
        if tok == "eof":
            self.fail("unexpected end of input")
        if tok == ")":
            self.fail("unbalanced ')'")
        self.fail(f"expected a proposition, found {tok!r}")

    def prop_list(self, stop: str) -> list:
        out = []
        if self.peek() == stop:
            return out
        out.append(self.prop())
        while self.peek() == ",":
            self.take()
            out.append(self.prop())
        return out

    def expect_end(self):
        if self.peek() != "eof":
            tok = self.peek()
            self.fail("unbalanced ')'" if tok == ")" else f"unexpected {tok!r}")


def parse_prop(text: str) -> Prop:
    p = _Parser(text)
    if p.peek() == "eof":
        raise ParseError("empty proposition", text, 0)
    result = p.prop()
    p.expect_end()
    return result


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    lhs = p.prop_list("|-")
    if p.peek() != "|-":
        p.fail("expected ',' or '|-'")
    p.take()
    rhs = p.prop_list("eof")
    p.expect_end()
    return Sequent(tuple(lhs), tuple(rhs))


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

def format_prop(p: Prop) -> str:
    if isinstance(p, Atom):
        return p.name
    if isinstance(p, Neg):
        inner = format_prop(p.arg)
        return "~" + (inner if isinstance(p.arg, (Atom, Neg)) else f"({inner})")
    if isinstance(p, And):
        parts = [format_prop(c) if isinstance(c, (Atom, Neg)) else f"({format_prop(c)})"
                 for c in (p.left, p.right)]
        return f"{parts[0]} & {parts[1]}"
    if isinstance(p, Or):
        parts = [f"({format_prop(c)})" if isinstance(c, Or) else format_prop(c)
                 for c in (p.left, p.right)]
        return f"{parts[0]} | {parts[1]}"
    raise TypeError(f"not a proposition: {p!r}")


def format_seq(props) -> str:
    return ", ".join(format_prop(p) for p in props)


def format_sequent(s: Sequent) -> str:
    left = format_seq(s.lhs)
    right = format_seq(s.rhs)
    return " ".join(x for x in (left, "|-", right) if x)


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=1 << 16)
def to_nnf(p: Prop) -> Prop:
    """Push negations to the atoms, reversing operands as the connectives
    demand: ~(a & b) => ~b | ~a and ~(a | b) => ~b & ~a; ~~a => a."""
    if isinstance(p, Atom):
        return p
    if isinstance(p, And):
        return And(to_nnf(p.left), to_nnf(p.right))
    if isinstance(p, Or):
        return Or(to_nnf(p.left), to_nnf(p.right))
    q = p.arg
    if isinstance(q, Atom):
        return p
    if isinstance(q, Neg):
        return to_nnf(q.arg)
    if isinstance(q, And):
        return Or(to_nnf(Neg(q.right)), to_nnf(Neg(q.left)))
    return And(to_nnf(Neg(q.right)), to_nnf(Neg(q.left)))


@functools.lru_cache(maxsize=1 << 16)
def negate(p: Prop) -> Prop:
    """Negation inside the restricted language: the NNF of ~p."""
    return to_nnf(Neg(p))


def is_restricted(p: Prop) -> bool:
    """Every negation applies to an atom."""
    if isinstance(p, Atom):
        return True
    if isinstance(p, Neg):
        return isinstance(p.arg, Atom)
    return is_restricted(p.left) and is_restricted(p.right)


def is_normalized(s: Sequent) -> bool:
    return not s.rhs and all(is_restricted(p) for p in s.lhs)


def normalize_sequent(s: Sequent) -> Sequent:
    """Move every right-hand formula to the left as its negation (first one
    first) and put every formula in NNF.  Validity is preserved."""
    lhs = [to_nnf(p) for p in s.lhs]
    lhs.extend(negate(b) for b in s.rhs)
    return Sequent(tuple(lhs), ())


def atoms(p) -> set:
    """Atom names of a proposition, a sequent, or an iterable of either."""
    if isinstance(p, Atom):
        return {p.name}
    if isinstance(p, Neg):
        return atoms(p.arg)
    if isinstance(p, (And, Or)):
        return atoms(p.left) | atoms(p.right)
    if isinstance(p, Sequent):
        return atoms(p.lhs) | atoms(p.rhs)
    out = set()
    for q in p:
        out |= atoms(q)
    return out


def subformulas(p: Prop) -> list:
    """Distinct subformulas, children before parents."""
    out: dict = {}

    def walk(q):
        if isinstance(q, Neg):
            walk(q.arg)
        elif isinstance(q, (And, Or)):
            walk(q.left)
            walk(q.right)
        out.setdefault(q, None)

    walk(p)
    return list(out)


def depth(p: Prop) -> int:
    if isinstance(p, Atom):
        return 0
    if isinstance(p, Neg):
        return 1 + depth(p.arg)
    return 1 + max(depth(p.left), depth(p.right))


negate_in_L = negate
