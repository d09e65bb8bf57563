"""Concrete syntax: tokenizer, parser, pretty-printer, and desugaring.

Sugared terms extend the core constructors with negation, and-then, and the
eight sequential binary connectives.  ``desugar`` rewrites them into pure
conditional composition by their defining equations:

    not x       = F <| x |> T
    x then y    = y <| x |> y
    x land y    = y <| x |> F          x rand y  = x <| y |> F
    x lor y     = T <| x |> y          x ror y   = T <| y |> x
    x limp y    = y <| x |> T          x rimp y  = T <| y |> not x
    x liff y    = y <| x |> not y      x riff y  = x <| y |> not x
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .errors import SyntaxValidationError
from .terms import (
    FALSE,
    RESERVED_WORDS,
    TRUE,
    Atom,
    AtomTerm,
    Cond,
    FalseConst,
    Term,
    TrueConst,
)

# ---------------------------------------------------------------------------
# Sugared term constructors


class SugarNode(Term):
    """Base class for the non-core constructors of sugared terms."""

    __slots__ = ()


@dataclass(frozen=True)
class Not(SugarNode):
    operand: Term


@dataclass(frozen=True)
class BinarySugar(SugarNode):
    left: Term
    right: Term


class AndThen(BinarySugar):
    keyword = "then"


class LeftAnd(BinarySugar):
    keyword = "land"


class RightAnd(BinarySugar):
    keyword = "rand"


class LeftOr(BinarySugar):
    keyword = "lor"


class RightOr(BinarySugar):
    keyword = "ror"


class LeftImp(BinarySugar):
    keyword = "limp"


class RightImp(BinarySugar):
    keyword = "rimp"


class LeftBiimp(BinarySugar):
    keyword = "liff"


class RightBiimp(BinarySugar):
    keyword = "riff"


_BINARY_CLASSES: dict[str, type[BinarySugar]] = {
    cls.keyword: cls
    for cls in (AndThen, LeftAnd, RightAnd, LeftOr, RightOr, LeftImp, RightImp, LeftBiimp, RightBiimp)
}


def desugar(s: Term) -> Term:
    """Rewrite a sugared term into the core language via the defining equations."""
    if isinstance(s, (TrueConst, FalseConst, AtomTerm)):
        return s
    if isinstance(s, Cond):
        return Cond(desugar(s.left), desugar(s.cond), desugar(s.right))
    if isinstance(s, Not):
        return Cond(FALSE, desugar(s.operand), TRUE)
    if isinstance(s, BinarySugar):
        x = desugar(s.left)
        y = desugar(s.right)
        if isinstance(s, AndThen):
            return Cond(y, x, y)
        if isinstance(s, LeftAnd):
            return Cond(y, x, FALSE)
        if isinstance(s, RightAnd):
            return Cond(x, y, FALSE)
        if isinstance(s, LeftOr):
            return Cond(TRUE, x, y)
        if isinstance(s, RightOr):
            return Cond(TRUE, y, x)
        if isinstance(s, LeftImp):
            return Cond(y, x, TRUE)
        if isinstance(s, RightImp):
            return Cond(TRUE, y, Cond(FALSE, x, TRUE))
        if isinstance(s, LeftBiimp):
            return Cond(y, x, Cond(FALSE, y, TRUE))
        if isinstance(s, RightBiimp):
            return Cond(x, y, Cond(FALSE, x, TRUE))
    raise TypeError(f"not a sugared term: {s!r}")


def sugared_atoms(s: Term) -> frozenset[Atom]:
    """Atoms written in a sugared term."""
    if isinstance(s, (TrueConst, FalseConst)):
        return frozenset()
    if isinstance(s, AtomTerm):
        return frozenset({s.atom})
    if isinstance(s, Cond):
        return sugared_atoms(s.left) | sugared_atoms(s.cond) | sugared_atoms(s.right)
    if isinstance(s, Not):
        return sugared_atoms(s.operand)
    if isinstance(s, BinarySugar):
        return sugared_atoms(s.left) | sugared_atoms(s.right)
    raise TypeError(f"not a sugared term: {s!r}")


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # 'word', 'lbar', 'rbar', 'lparen', 'rparen', 'eof'
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"[ \t\r\n]+|(?P<lbar><\|)|(?P<rbar>\|>)|(?P<lp>\()|(?P<rp>\))|(?P<word>[A-Za-z][A-Za-z0-9_]*)")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    idx = 0
    line, col = 1, 1
    while idx < len(text):
        m = _TOKEN_RE.match(text, idx)
        if not m:
            raise SyntaxValidationError(f"{line}:{col}: unexpected character {text[idx]!r}")
        chunk = m.group(0)
        if m.lastgroup == "lbar":
            tokens.append(Token("lbar", chunk, line, col))
        elif m.lastgroup == "rbar":
            tokens.append(Token("rbar", chunk, line, col))
        elif m.lastgroup == "lp":
            tokens.append(Token("lparen", chunk, line, col))
        elif m.lastgroup == "rp":
            tokens.append(Token("rparen", chunk, line, col))
        elif m.lastgroup == "word":
            tokens.append(Token("word", chunk, line, col))
        # whitespace falls through
        for ch in chunk:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        idx = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent following the declared precedence)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, expected: str) -> SyntaxValidationError:
        tok = self.peek()
        got = tok.text or "end of input"
        return SyntaxValidationError(f"{tok.line}:{tok.col}: expected {expected}, got {got!r}")

    def at_word(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "word" and tok.text in words

    def parse_stmt(self) -> Term:
        left = self.parse_biimp()
        if self.peek().kind == "lbar":
            self.advance()
            middle = self.parse_biimp()
            if self.peek().kind != "rbar":
                raise self.error("'|>'")
            self.advance()
            right = self.parse_biimp()
            return Cond(left, middle, right)
        return left

    def parse_biimp(self) -> Term:
        node = self.parse_imp()
        while self.at_word("liff", "riff"):
            op = self.advance().text
            rhs = self.parse_imp()
            node = _BINARY_CLASSES[op](node, rhs)
        return node

    def parse_imp(self) -> Term:
        node = self.parse_or()
        if self.at_word("limp", "rimp"):
            op = self.advance().text
            rhs = self.parse_or()
            node = _BINARY_CLASSES[op](node, rhs)
            if self.at_word("limp", "rimp"):
                raise self.error("parentheses (implications are non-associative)")
        return node

    def parse_or(self) -> Term:
        node = self.parse_and()
        while self.at_word("lor", "ror"):
            op = self.advance().text
            node = _BINARY_CLASSES[op](node, self.parse_and())
        return node

    def parse_and(self) -> Term:
        node = self.parse_seq()
        while self.at_word("land", "rand"):
            op = self.advance().text
            node = _BINARY_CLASSES[op](node, self.parse_seq())
        return node

    def parse_seq(self) -> Term:
        node = self.parse_unary()
        while self.at_word("then"):
            self.advance()
            node = AndThen(node, self.parse_unary())
        return node

    def parse_unary(self) -> Term:
        tok = self.peek()
        if tok.kind == "word":
            if tok.text == "not":
                self.advance()
                return Not(self.parse_unary())
            if tok.text == "T":
                self.advance()
                return TRUE
            if tok.text == "F":
                self.advance()
                return FALSE
            if tok.text in RESERVED_WORDS:
                raise self.error("a statement")
            if re.fullmatch(r"[a-z][a-z0-9_]*", tok.text):
                self.advance()
                return AtomTerm(Atom(tok.text))
            raise SyntaxValidationError(
                f"{tok.line}:{tok.col}: invalid atom name {tok.text!r} (atoms are lowercase)"
            )
        if tok.kind == "lparen":
            self.advance()
            node = self.parse_stmt()
            if self.peek().kind != "rparen":
                raise self.error("')'")
            self.advance()
            return node
        raise self.error("'T', 'F', 'not', an atom, or '('")


def parse(text: str) -> Term:
    """Parse concrete syntax into a sugared term."""
    parser = _Parser(tokenize(text))
    node = parser.parse_stmt()
    if parser.peek().kind != "eof":
        raise parser.error("end of input")
    return node


# ---------------------------------------------------------------------------
# Printer (minimal parentheses per the precedence table)

# Precedence levels, loosest first; a child is parenthesized when its level is
# lower than the level its context requires.
_LEVEL_COND = 0
_LEVEL_BIIMP = 1
_LEVEL_IMP = 2
_LEVEL_OR = 3
_LEVEL_AND = 4
_LEVEL_SEQ = 5
_LEVEL_UNARY = 6

_BINARY_LEVELS: dict[str, int] = {
    "liff": _LEVEL_BIIMP,
    "riff": _LEVEL_BIIMP,
    "limp": _LEVEL_IMP,
    "rimp": _LEVEL_IMP,
    "lor": _LEVEL_OR,
    "ror": _LEVEL_OR,
    "land": _LEVEL_AND,
    "rand": _LEVEL_AND,
    "then": _LEVEL_SEQ,
}


def _print(s: Term, min_level: int) -> str:
    if isinstance(s, (TrueConst, FalseConst, AtomTerm)):
        return str(s)
    if isinstance(s, Cond):
        text = (
            f"{_print(s.left, _LEVEL_BIIMP)} <| {_print(s.cond, _LEVEL_BIIMP)}"
            f" |> {_print(s.right, _LEVEL_BIIMP)}"
        )
        return f"({text})" if min_level > _LEVEL_COND else text
    if isinstance(s, Not):
        return f"not {_print(s.operand, _LEVEL_UNARY)}"
    if isinstance(s, BinarySugar):
        level = _BINARY_LEVELS[s.keyword]
        if level == _LEVEL_IMP:
            # Non-associative: both operands must bind tighter.
            text = f"{_print(s.left, level + 1)} {s.keyword} {_print(s.right, level + 1)}"
        else:
            # Left-associative: same-level chains on the left stay bare.
            text = f"{_print(s.left, level)} {s.keyword} {_print(s.right, level + 1)}"
        return f"({text})" if min_level > level else text
    raise TypeError(f"not a sugared term: {s!r}")


def print_sugared(s: Term) -> str:
    """Render a sugared term in canonical concrete syntax."""
    return _print(s, _LEVEL_COND)


def print_term(t: Term) -> str:
    """Render a core term (alias of print_sugared; core terms are sugared terms)."""
    return _print(t, _LEVEL_COND)


ParseFn = Callable[[str], Term]
