"""Tokenizer, recursive-descent parser and evaluator for operator expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | factor
    factor := atom ('^' uint)?
    atom   := number | symbol | '(' expr ')'

Numbers are integers, finite decimals (``2.5``) or integer fractions
(``3/4``, lexed as one token).  Products keep source order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .algebra import WeylElement, power, scalar
from .session import SessionConfig

__all__ = [
    "EvalError",
    "ParseError",
    "Token",
    "WeylSyntaxError",
    "eval_ast",
    "evaluate",
    "parse",
    "parse_expr",
    "symbols_in",
    "tokenize",
]


class WeylSyntaxError(ValueError):
    """Lexical or grammatical error at a character offset of the source."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class ParseError(WeylSyntaxError):
    pass


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # number symbol plus minus star caret lparen rparen end
    text: str
    position: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+/\d+|\d+\.\d*|\.\d+|\d+)
  | (?P<symbol>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<plus>\+) | (?P<minus>-) | (?P<star>\*) | (?P<caret>\^)
  | (?P<lparen>\() | (?P<rparen>\))
    """,
    re.VERBOSE,
)


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            ch = src[pos]
            if ch == "/":
                raise WeylSyntaxError("division is only allowed inside integer fractions like 3/4", pos)
            raise WeylSyntaxError(f"unexpected character {ch!r}", pos)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Symbol:
    name: str
    position: int = -1


@dataclass(frozen=True)
class BinOp:
    op: str  # "add" | "sub" | "mul"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Neg:
    child: "Expr"


Expr = Union[Const, Symbol, BinOp, Pow, Neg]


def number_value(text: str) -> Fraction:
    # Fraction parses "3/4" and decimals exactly
    return Fraction(text)


class _Parser:
    def __init__(self, tokens: list[Token], known: frozenset[str] | None, src_len: int):
        self.tokens = tokens
        self.i = 0
        self.known = known
        end = tokens[-1].position + len(tokens[-1].text) if tokens else src_len
        self.end = Token("end", "", max(end, src_len))

    def peek(self) -> Token:
        return self.tokens[self.i] if self.i < len(self.tokens) else self.end

    def take(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token):
        raise ParseError(msg, tok.position)

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind in ("plus", "minus"):
            op = "add" if self.take().kind == "plus" else "sub"
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek().kind == "star":
            self.take()
            node = BinOp("mul", node, self.unary())
        return node

    def unary(self) -> Expr:
        kind = self.peek().kind
        if kind == "minus":
            self.take()
            return Neg(self.unary())
        if kind == "plus":
            # printed symbolic forms start with a sign
            self.take()
            return self.unary()
        return self.factor()

    def factor(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "caret":
            self.take()
            tok = self.take()
            if tok.kind != "number" or not tok.text.isdigit():
                self.error("exponent must be a nonnegative integer literal", tok)
            return Pow(base, int(tok.text))
        return base

    def atom(self) -> Expr:
        tok = self.take()
        if tok.kind == "number":
            return Const(number_value(tok.text))
        if tok.kind == "symbol":
            if self.known is not None and tok.text not in self.known:
                self.error(f"unknown symbol {tok.text!r}", tok)
            return Symbol(tok.text, tok.position)
        if tok.kind == "lparen":
            node = self.expr()
            close = self.take()
            if close.kind != "rparen":
                self.error("expected ')'", close)
            return node
        if tok.kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {tok.text!r}", tok)


def parse(
    tokens: list[Token],
    cfg: SessionConfig | None = None,
    bound=(),
    src_len: int = 0,
) -> Expr:
    """Build an AST from ``tokens``.

    Symbols must name a generator or derivative of ``cfg`` or appear in
    ``bound`` (names of environment bindings).  With ``cfg=None`` any
    symbol is accepted.
    """
    known = None if cfg is None else cfg.names | frozenset(bound)
    p = _Parser(tokens, known, src_len)
    if not tokens:
        p.error("empty expression", p.end)
    node = p.expr()
    tok = p.peek()
    if tok.kind != "end":
        p.error(f"unexpected {tok.text!r}", tok)
    return node


def parse_expr(src: str, cfg: SessionConfig | None = None, bound=()) -> Expr:
    return parse(tokenize(src), cfg, bound, len(src))


def symbols_in(node: Expr) -> list[Symbol]:
    if isinstance(node, Symbol):
        return [node]
    if isinstance(node, BinOp):
        return symbols_in(node.left) + symbols_in(node.right)
    if isinstance(node, Pow):
        return symbols_in(node.base)
    if isinstance(node, Neg):
        return symbols_in(node.child)
    return []


def eval_ast(node: Expr, env: Mapping[str, WeylElement], cfg: SessionConfig) -> WeylElement:
    """Evaluate ``node`` to a normal-form element under ``cfg``'s rule.

    Environment bindings shadow nothing: a binding may not reuse a
    generator or derivative name (the CLI enforces this).
    """
    if isinstance(node, Const):
        return scalar(node.value, cfg.arity, cfg.rule, cfg.var_names)
    if isinstance(node, Symbol):
        if node.name in env:
            return env[node.name]
        try:
            return cfg.symbol(node.name)
        except KeyError:
            raise EvalError(f"unbound identifier {node.name!r}" + (
                f" at position {node.position}" if node.position >= 0 else "")) from None
    if isinstance(node, Neg):
        return -eval_ast(node.child, env, cfg)
    if isinstance(node, Pow):
        return power(eval_ast(node.base, env, cfg), node.exponent)
    if isinstance(node, BinOp):
        left = eval_ast(node.left, env, cfg)
        right = eval_ast(node.right, env, cfg)
        if node.op == "add":
            return left + right
        if node.op == "sub":
            return left - right
        return left * right
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(src: str, cfg: SessionConfig | None = None, env: Mapping[str, WeylElement] | None = None) -> WeylElement:
    """Tokenize, parse and evaluate ``src`` in one go."""
    cfg = cfg or SessionConfig()
    env = env or {}
    return eval_ast(parse_expr(src, cfg, env.keys()), env, cfg)
