"""Abstract syntax for LTL over traces (action-based), with a small parser.

Core constructors: ``TT``, ``Not``, ``Or``, ``Next`` (the per-action next
``<a>phi``) and ``Until``.  ``ff``, ``&``, ``F`` and ``G`` are surface syntax
only and are desugared by the parser.

Grammar, loosest binding first::

    phi  ::= conj ("|" conj)*
    conj ::= utl ("&" utl)*
    utl  ::= unary ("U" utl)?          # right associative
    unary::= "!" unary | "<" name ">" unary | "F" unary | "G" unary | atom
    atom ::= "tt" | "ff" | "(" phi ")"
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class TT:
    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Not:
    sub: "Formula"

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Next:
    letter: str
    sub: "Formula"

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Until:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render(self)


Formula = Union[TT, Not, Or, Next, Until]

TRUE = TT()
FALSE = Not(TRUE)


def conj(f: Formula, g: Formula) -> Formula:
    return Not(Or(Not(f), Not(g)))


def eventually(f: Formula) -> Formula:
    return Until(TRUE, f)


def always(f: Formula) -> Formula:
    return Not(Until(TRUE, Not(f)))


class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[!&|()<>]))")
_KEYWORDS = {"tt", "ff", "U", "F", "G"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start("name") if m.group("name") else m.start("sym")
        value = m.group("name") or m.group("sym")
        kind = "kw" if value in _KEYWORDS else ("name" if m.group("name") else value)
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise FormulaSyntaxError(f"expected {want!r}, got {got!r}", tok[2])
        return tok

    def is_kw(self, value):
        tok = self.peek()
        return tok[0] == "kw" and tok[1] == value

    def disj(self):
        f = self.conj()
        while self.peek()[0] == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.until()
        while self.peek()[0] == "&":
            self.take()
            f = conj(f, self.until())
        return f

    def until(self):
        f = self.unary()
        if self.is_kw("U"):
            self.take()
            return Until(f, self.until())
        return f

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "!":
            self.take()
            return Not(self.unary())
        if kind == "<":
            self.take()
            name = self.expect("name")[1]
            self.expect(">")
            return Next(name, self.unary())
        if kind == "kw" and value == "F":
            self.take()
            return eventually(self.unary())
        if kind == "kw" and value == "G":
            self.take()
            return always(self.unary())
        return self.atom()

    def atom(self):
        kind, value, pos = self.take()
        if kind == "kw" and value == "tt":
            return TRUE
        if kind == "kw" and value == "ff":
            return FALSE
        if kind == "(":
            f = self.disj()
            self.expect(")")
            return f
        if kind == "eof":
            raise FormulaSyntaxError("unexpected end of input", pos)
        raise FormulaSyntaxError(f"unexpected token {value!r}", pos)


def parse(text: str) -> Formula:
    if not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    p = _Parser(text)
    f = p.disj()
    tok = p.peek()
    if tok[0] != "eof":
        raise FormulaSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
    return f


def render(f: Formula) -> str:
    """Print in core syntax; binary operators are always parenthesised."""
    if isinstance(f, TT):
        return "tt"
    if isinstance(f, Not):
        return "!" + render(f.sub)
    if isinstance(f, Next):
        return f"<{f.letter}>" + render(f.sub)
    if isinstance(f, Or):
        return f"({render(f.left)} | {render(f.right)})"
    if isinstance(f, Until):
        return f"({render(f.left)} U {render(f.right)})"
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order traversal, children before parents."""
    if isinstance(f, (Not, Next)):
        yield from subformulas(f.sub)
    elif isinstance(f, (Or, Until)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    yield f


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def letters_of(f: Formula) -> set[str]:
    return {g.letter for g in subformulas(f) if isinstance(g, Next)}


def validate_letters(f: Formula, alpha) -> list[str]:
    """Unknown letters used by `<a>` operators; empty list means ok."""
    known = set(alpha.letters)
    return sorted(x for x in letters_of(f) if x not in known)


def until_nesting_depth(f: Formula) -> int:
    if isinstance(f, TT):
        return 0
    if isinstance(f, (Not, Next)):
        return until_nesting_depth(f.sub)
    depth = max(until_nesting_depth(f.left), until_nesting_depth(f.right))
    return depth + 1 if isinstance(f, Until) else depth
