"""Expression grammar for functions, operators and symbols.

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ['^' nat]
    atom     := rational | var | deriv | '(' expr ')'
    var      := 'x'nat | 'xi'nat | 'p'nat | 'th'nat
    deriv    := 'd/dx'nat | 'd/dxi'nat
    rational := nat ['/' nat]

Multiplication is always explicit; juxtaposition is not a product.  The
optional leading minus lets every canonical rendering round-trip.  Indices
are 1-based in the surface syntax and 0-based in the API.

Products in operator expressions denote composition read left to right;
normalization happens during evaluation, so inputs need not be
normal-ordered.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError
from .operators import DiffOp
from .poly import BundleModel, FiberPoly
from .symbols import SymbolPoly

KIND_FUNCTION = "function"
KIND_OPERATOR = "operator"
KIND_SYMBOL = "symbol"


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Lit:
    value: Fraction
    offset: int


@dataclass(frozen=True)
class Var:
    family: str  # "x", "xi", "p", "th"
    index: int  # 1-based, as written
    offset: int


@dataclass(frozen=True)
class Deriv:
    family: str  # "x", "xi"
    index: int  # 1-based, as written
    offset: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: "Expr"
    right: "Expr"
    offset: int


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    offset: int


Expr = Union[Lit, Var, Deriv, Neg, BinOp, Pow]


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER VAR DERIV + - * ^ ( ) EOF
    offset: int
    value: Fraction | None = None
    family: str | None = None
    index: int | None = None


def _lex(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)

    def digits_at(k: int) -> tuple[int, int]:
        start = k
        while k < n and text[k].isdigit():
            k += 1
        if k == start:
            raise ParseError("digit expected", start)
        return int(text[start:k]), k

    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*^()":
            tokens.append(_Token(c, i))
            i += 1
            continue
        if c.isdigit():
            start = i
            num, i = digits_at(i)
            if i < n and text[i] == "/" and i + 1 < n and text[i + 1].isdigit():
                den, i = digits_at(i + 1)
                if den == 0:
                    raise ParseError("zero denominator", start)
                tokens.append(_Token("NUMBER", start, value=Fraction(num, den)))
            else:
                tokens.append(_Token("NUMBER", start, value=Fraction(num)))
            continue
        if c == "d" and text.startswith("d/dx", i):
            start = i
            i += 4
            family = "x"
            if i < n and text[i] == "i":
                family = "xi"
                i += 1
            index, i = digits_at(i)
            tokens.append(_Token("DERIV", start, family=family, index=index))
            continue
        if c == "x":
            start = i
            i += 1
            family = "x"
            if i < n and text[i] == "i":
                family = "xi"
                i += 1
            index, i = digits_at(i)
            tokens.append(_Token("VAR", start, family=family, index=index))
            continue
        if c == "p":
            start = i
            index, i = digits_at(i + 1)
            tokens.append(_Token("VAR", start, family="p", index=index))
            continue
        if c == "t" and text.startswith("th", i):
            start = i
            index, i = digits_at(i + 2)
            tokens.append(_Token("VAR", start, family="th", index=index))
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(_Token("EOF", n))
    return tokens


# ---------------------------------------------------------------------------
# parser


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
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", tok.offset)
        return self.advance()

    def expr(self) -> Expr:
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            node: Expr = Neg(self.term(), tok.offset)
        else:
            node = self.term()
        while self.peek().kind in "+-":
            op = self.advance()
            node = BinOp(op.kind, node, self.term(), op.offset)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind == "*":
            op = self.advance()
            node = BinOp("*", node, self.factor(), op.offset)
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.peek().kind == "^":
            caret = self.advance()
            exp = self.expect("NUMBER")
            if exp.value.denominator != 1 or exp.value < 0:
                raise ParseError("exponent must be a natural number", exp.offset)
            node = Pow(node, int(exp.value), caret.offset)
        return node

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.advance()
            return Lit(tok.value, tok.offset)
        if tok.kind == "VAR":
            self.advance()
            return Var(tok.family, tok.index, tok.offset)
        if tok.kind == "DERIV":
            self.advance()
            return Deriv(tok.family, tok.index, tok.offset)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {tok.kind!r}", tok.offset)


def parse_expr(text: str) -> Expr:
    """Parse to an AST; syntax errors carry the byte offset."""
    parser = _Parser(_lex(text))
    node = parser.expr()
    parser.expect("EOF")
    return node


# ---------------------------------------------------------------------------
# validation and evaluation


def _walk(node: Expr):
    yield node
    if isinstance(node, Neg):
        yield from _walk(node.operand)
    elif isinstance(node, BinOp):
        yield from _walk(node.left)
        yield from _walk(node.right)
    elif isinstance(node, Pow):
        yield from _walk(node.base)


def parse(text: str, kind: str, model: BundleModel) -> Expr:
    """Parse and validate an expression of the given kind against a model.

    kind is one of "function", "operator", "symbol".  Derivative symbols
    are only legal in operator expressions, momenta only in symbol
    expressions; variable indices must fit the model.
    """
    if kind not in (KIND_FUNCTION, KIND_OPERATOR, KIND_SYMBOL):
        raise ValueError(f"unknown expression kind {kind!r}")
    node = parse_expr(text)
    for sub in _walk(node):
        if isinstance(sub, Deriv):
            if kind != KIND_OPERATOR:
                raise ParseError(f"derivative symbol not allowed in a {kind}", sub.offset)
            bound = model.m if sub.family == "x" else model.n
            if not 1 <= sub.index <= bound:
                raise ParseError(f"derivative index {sub.index} out of range", sub.offset)
        elif isinstance(sub, Var):
            if sub.family in ("p", "th") and kind != KIND_SYMBOL:
                raise ParseError(f"momentum variable not allowed in a {kind}", sub.offset)
            bound = model.m if sub.family in ("x", "p") else model.n
            if not 1 <= sub.index <= bound:
                raise ParseError(f"variable index {sub.index} out of range", sub.offset)
    return node


def _evaluate(node: Expr, atoms):
    """Fold an AST through an atom-interpretation with +, -, *, ^."""
    if isinstance(node, Lit):
        return atoms["lit"](node.value)
    if isinstance(node, Var):
        return atoms["var"](node.family, node.index - 1)
    if isinstance(node, Deriv):
        return atoms["deriv"](node.family, node.index - 1)
    if isinstance(node, Neg):
        return _evaluate(node.operand, atoms) * -1
    if isinstance(node, BinOp):
        left = _evaluate(node.left, atoms)
        right = _evaluate(node.right, atoms)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Pow):
        return _evaluate(node.base, atoms) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_function(node: Expr, model: BundleModel) -> FiberPoly:
    return _evaluate(
        node,
        {
            "lit": model.const,
            "var": lambda family, i: model.x(i) if family == "x" else model.xi(i),
            "deriv": None,
        },
    )


def evaluate_operator(node: Expr, model: BundleModel) -> DiffOp:
    def var(family, i):
        u = model.x(i) if family == "x" else model.xi(i)
        return DiffOp.multiplication(u)

    def deriv(family, i):
        return DiffOp.d_x(model, i) if family == "x" else DiffOp.d_xi(model, i)

    return _evaluate(
        node,
        {
            "lit": lambda c: DiffOp.identity(model).scale(c),
            "var": var,
            "deriv": deriv,
        },
    )


def evaluate_symbol(node: Expr, model: BundleModel) -> SymbolPoly:
    def var(family, i):
        if family == "x":
            return SymbolPoly.from_fiber(model.x(i))
        if family == "xi":
            return SymbolPoly.from_fiber(model.xi(i))
        if family == "p":
            return SymbolPoly.p(model, i)
        return SymbolPoly.th(model, i)

    return _evaluate(
        node,
        {
            "lit": lambda c: SymbolPoly.const(model, c),
            "var": var,
            "deriv": None,
        },
    )


def parse_function(text: str, model: BundleModel) -> FiberPoly:
    return evaluate_function(parse(text, KIND_FUNCTION, model), model)


def parse_operator(text: str, model: BundleModel) -> DiffOp:
    return evaluate_operator(parse(text, KIND_OPERATOR, model), model)


def parse_symbol(text: str, model: BundleModel) -> SymbolPoly:
    return evaluate_symbol(parse(text, KIND_SYMBOL, model), model)
