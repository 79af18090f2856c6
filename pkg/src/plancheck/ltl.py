"""Temporal-logic formulas over finite traces.

The formula language has lower_snake_case atoms, the boolean connectives
``!``, ``&``, ``|`` and ``->``, and the temporal operators ``G`` (always),
``F`` (eventually) and ``U`` (until).  Formulas are immutable trees; every
operation in this module is a pure function, so values can be shared
freely across threads.

Concrete syntax (whitespace between tokens is insignificant)::

    formula := implies
    implies := or ("->" or)*
    or      := and ("|" and)*
    and     := until ("&" until)*
    until   := unary ("U" unary)*
    unary   := "!" unary | "G" unary | "F" unary | atomish
    atomish := IDENT | "(" formula ")"
    IDENT   := [a-z][a-z0-9_]*

Binary operators associate to the left.  Evaluation uses finite-trace
semantics: temporal quantifiers range over the remaining positions of the
trace only, and ``U`` is strong (its right operand must occur).
"""

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ParseError, UnknownPredicate

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

#: a single plan state: predicate name -> truth value
Valuation = Mapping[str, bool]
#: finite, non-empty sequence of states; index 0 is the initial state
Trace = Sequence[Valuation]


class Formula:
    """Base class for formula nodes. Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_ltl(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Globally(Formula):
    child: Formula


@dataclass(frozen=True)
class Finally(Formula):
    child: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


def children(f: Formula) -> tuple[Formula, ...]:
    """Direct subformulas of ``f``, left to right."""
    if isinstance(f, Atom):
        return ()
    if isinstance(f, (Not, Globally, Finally)):
        return (f.child,)
    return (f.left, f.right)  # type: ignore[union-attr]


def atoms(f: Formula) -> set[str]:
    """Names of all atoms occurring in ``f``."""
    if isinstance(f, Atom):
        return {f.name}
    out: set[str] = set()
    for c in children(f):
        out |= atoms(c)
    return out


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"(?P<ident>[a-z][a-z0-9_]*)|(?P<op>->|[GFU!&|()])")
_EXPECT_FORMULA = ("identifier", "!", "G", "F", "(")


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", the operator text, or "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, _EXPECT_FORMULA)
        if m.lastgroup == "ident":
            tokens.append(_Token("ident", m.group(), pos))
        else:
            tokens.append(_Token(m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.offset, (kind,))
        return self.advance()

    def formula(self) -> Formula:
        return self.implies()

    def implies(self) -> Formula:
        left = self.or_()
        while self.peek().kind == "->":
            self.advance()
            left = Implies(left, self.or_())
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while self.peek().kind == "|":
            self.advance()
            left = Or(left, self.and_())
        return left

    def and_(self) -> Formula:
        left = self.until()
        while self.peek().kind == "&":
            self.advance()
            left = And(left, self.until())
        return left

    def until(self) -> Formula:
        left = self.unary()
        while self.peek().kind == "U":
            self.advance()
            left = Until(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "!":
            self.advance()
            return Not(self.unary())
        if tok.kind == "G":
            self.advance()
            return Globally(self.unary())
        if tok.kind == "F":
            self.advance()
            return Finally(self.unary())
        return self.atomish()

    def atomish(self) -> Formula:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return Atom(tok.text)
        if tok.kind == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.offset, _EXPECT_FORMULA)


def parse_ltl(text: str) -> Formula:
    """Parse concrete syntax into a formula tree.

    Raises :class:`ParseError` with the byte offset and expected tokens on
    malformed input.
    """
    parser = _Parser(_tokenize(text))
    f = parser.formula()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(f"trailing input {tail.text!r}", tail.offset, ("end of input",))
    return f


# --- printing ---------------------------------------------------------------

_BINARY = {Implies: ("->", 1), Or: ("|", 2), And: ("&", 3), Until: ("U", 4)}
_UNARY = {Not: "!", Globally: "G", Finally: "F"}


def _precedence(f: Formula) -> int:
    if isinstance(f, Atom):
        return 6
    if type(f) in _UNARY:
        return 5
    return _BINARY[type(f)][1]


def format_ltl(f: Formula) -> str:
    """Canonical single-line rendering of ``f``.

    Parentheses are minimal for the binary operators; a unary operator
    parenthesizes its argument exactly when the argument is not an atom.
    ``parse_ltl(format_ltl(f))`` reproduces ``f``, and formatting a parsed
    canonical string is byte-identical to it.
    """
    if isinstance(f, Atom):
        return f.name
    sym = _UNARY.get(type(f))
    if sym is not None:
        child = f.child  # type: ignore[union-attr]
        if isinstance(child, Atom):
            return f"{sym}{child.name}" if sym == "!" else f"{sym} {child.name}"
        return f"{sym}({format_ltl(child)})"
    sym, prec = _BINARY[type(f)]
    left, right = f.left, f.right  # type: ignore[union-attr]
    left_s = format_ltl(left)
    if _precedence(left) < prec:
        left_s = f"({left_s})"
    right_s = format_ltl(right)
    if _precedence(right) <= prec:
        right_s = f"({right_s})"
    return f"{left_s} {sym} {right_s}"


# --- evaluation ---------------------------------------------------------------


def _lookup(valuation: Valuation, name: str) -> bool:
    try:
        return valuation[name]
    except KeyError:
        raise UnknownPredicate([name]) from None


def _satisfaction(f: Formula, trace: Trace) -> list[bool]:
    """Truth value of ``f`` at every trace position, computed backwards."""
    n = len(trace)
    if isinstance(f, Atom):
        return [_lookup(trace[j], f.name) for j in range(n)]
    if isinstance(f, Not):
        c = _satisfaction(f.child, trace)
        return [not v for v in c]
    if isinstance(f, And):
        a, b = _satisfaction(f.left, trace), _satisfaction(f.right, trace)
        return [x and y for x, y in zip(a, b)]
    if isinstance(f, Or):
        a, b = _satisfaction(f.left, trace), _satisfaction(f.right, trace)
        return [x or y for x, y in zip(a, b)]
    if isinstance(f, Implies):
        a, b = _satisfaction(f.left, trace), _satisfaction(f.right, trace)
        return [(not x) or y for x, y in zip(a, b)]
    out = [False] * n
    if isinstance(f, Globally):
        c = _satisfaction(f.child, trace)
        acc = True
        for j in range(n - 1, -1, -1):
            acc = c[j] and acc
            out[j] = acc
        return out
    if isinstance(f, Finally):
        c = _satisfaction(f.child, trace)
        acc = False
        for j in range(n - 1, -1, -1):
            acc = c[j] or acc
            out[j] = acc
        return out
    if isinstance(f, Until):
        a, b = _satisfaction(f.left, trace), _satisfaction(f.right, trace)
        acc = False
        for j in range(n - 1, -1, -1):
            acc = b[j] or (a[j] and acc)
            out[j] = acc
        return out
    raise TypeError(f"not a formula node: {f!r}")


def eval_at(f: Formula, trace: Trace, i: int) -> bool:
    """Truth value of ``f`` at position ``i`` of a finite trace."""
    if not 0 <= i < len(trace):
        raise IndexError(f"trace index {i} out of range for length {len(trace)}")
    return _satisfaction(f, trace)[i]


def holds(f: Formula, trace: Trace) -> bool:
    """Truth value of ``f`` at the start of the trace."""
    return eval_at(f, trace, 0)
