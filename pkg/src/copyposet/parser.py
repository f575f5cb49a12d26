"""Expression grammar for ordinal terms.

Atoms: ``w`` (omega), ``w_1``, ``w_2``, ... and user atoms declared in a
preamble of ``card <name> rank <k> [singular cf <atom|w>];`` statements.
Operators ``+ * ^`` with precedence ``^ > * > +``; ``+`` and ``*`` associate
left, ``^`` right; parentheses and decimal naturals. Arithmetic is evaluated
on the spot, so the result is always canonical.
"""
from __future__ import annotations

from dataclasses import dataclass

from .atoms import AtomRegistry, AtomError
from .terms import OrdinalTerm, OMEGA, add, mul, power, nat, from_atom


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], i))
            i = j
            continue
        if c in "+*^();":
            tokens.append(Token("op", c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


_PREC = {"+": 1, "*": 2, "^": 3}


class _Parser:
    def __init__(self, tokens: list[Token], registry: AtomRegistry,
                 env: dict[str, OrdinalTerm] | None):
        self.tokens = tokens
        self.i = 0
        self.registry = registry
        self.env = env or {}

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}", tok.pos)
        return self.advance()

    def atom(self) -> OrdinalTerm:
        tok = self.advance()
        if tok.kind == "num":
            return nat(int(tok.text))
        if tok.kind == "name":
            if tok.text in self.env:
                return self.env[tok.text]
            if tok.text == "w":
                return OMEGA
            found = self.registry.lookup(tok.text)
            if found is None:
                raise ParseError(f"undeclared atom {tok.text!r}", tok.pos)
            return from_atom(found)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expression(0)
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, atom or parenthesized expression", tok.pos)

    def expression(self, min_prec: int) -> OrdinalTerm:
        lhs = self.atom()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text not in _PREC:
                return lhs
            prec = _PREC[tok.text]
            if prec < min_prec:
                return lhs
            self.advance()
            # ^ is right-associative, + and * left-associative
            rhs = self.expression(prec if tok.text == "^" else prec + 1)
            if tok.text == "+":
                lhs = add(lhs, rhs)
            elif tok.text == "*":
                lhs = mul(lhs, rhs)
            else:
                lhs = power(lhs, rhs)


def parse_preamble(tokens: list[Token], i: int, registry: AtomRegistry) -> int:
    """Consume leading ``card ...;`` declarations, returning the new position."""
    while tokens[i].kind == "name" and tokens[i].text == "card":
        i += 1
        if tokens[i].kind != "name":
            raise ParseError("expected atom name after 'card'", tokens[i].pos)
        name = tokens[i].text
        i += 1
        if not (tokens[i].kind == "name" and tokens[i].text == "rank"):
            raise ParseError("expected 'rank'", tokens[i].pos)
        i += 1
        if tokens[i].kind != "num":
            raise ParseError("expected rank number", tokens[i].pos)
        rank = int(tokens[i].text)
        i += 1
        singular = False
        cof: str | None = None
        if tokens[i].kind == "name" and tokens[i].text == "singular":
            singular = True
            i += 1
            if not (tokens[i].kind == "name" and tokens[i].text == "cf"):
                raise ParseError("expected 'cf' after 'singular'", tokens[i].pos)
            i += 1
            if tokens[i].kind != "name":
                raise ParseError("expected cofinality atom", tokens[i].pos)
            cof = None if tokens[i].text == "w" else tokens[i].text
            i += 1
        if not (tokens[i].kind == "op" and tokens[i].text == ";"):
            raise ParseError("expected ';' after declaration", tokens[i].pos)
        i += 1
        try:
            registry.declare(name, rank, singular=singular, cofinality=cof)
        except AtomError as exc:
            raise ParseError(str(exc), tokens[i - 1].pos) from exc
    return i


def parse_term(text: str, registry: AtomRegistry,
               env: dict[str, OrdinalTerm] | None = None) -> OrdinalTerm:
    """Parse and fully evaluate an expression, optionally with a declaration preamble."""
    tokens = tokenize(text)
    start = parse_preamble(tokens, 0, registry)
    parser = _Parser(tokens[start:], registry, env)
    result = parser.expression(0)
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(f"unexpected trailing input {trailing.text!r}", trailing.pos)
    return result
