"""Recursive-descent parser for MiniScript.

Precedence, loosest to tightest: comparison, additive, multiplicative,
unary minus, power; `**` is right-associative and binds tighter than
unary minus, so -x**2 parses as -(x**2).
"""

from __future__ import annotations

from ..errors import ParseError
from .lexer import Token, tokenize
from .nodes import (
    Assign,
    BinOp,
    Call,
    Compare,
    ExprStmt,
    ForEach,
    ForRange,
    FuncDef,
    If,
    ListLit,
    Name,
    Num,
    Program,
    Return,
    Str,
    Unary,
)

_KEYWORDS = {"if", "else", "for", "in", "def", "return"}
_CMP_OPS = ("===", "==", "<=", ">=", "<", ">")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # --- token plumbing ---

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "EOF":
            self.pos += 1
        return tok

    def at(self, type_: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.type == type_ and (value is None or tok.value == value)

    def expect(self, type_: str, value: str | None = None) -> Token:
        tok = self.peek()
        if not self.at(type_, value):
            want = value if value is not None else type_
            raise ParseError(f"expected {want!r}, got {tok.value or tok.type!r}", tok.line, tok.col)
        return self.next()

    def _span(self, start: Token, end: Token | None = None):
        end = end or self.tokens[max(self.pos - 1, 0)]
        return (start.line, start.col, end.line, end.col + max(len(end.value), 1) - 1)

    # --- statements ---

    def parse_program(self) -> Program:
        body = []
        first = self.peek()
        while not self.at("EOF"):
            body.append(self.statement())
        return Program(body, span=self._span(first))

    def block(self) -> list:
        self.expect("OP", ":")
        self.expect("NEWLINE")
        self.expect("INDENT")
        body = []
        while not self.at("DEDENT") and not self.at("EOF"):
            body.append(self.statement())
        self.expect("DEDENT")
        return body

    def statement(self):
        tok = self.peek()
        if tok.type == "NAME" and tok.value in _KEYWORDS:
            if tok.value == "if":
                return self.if_stmt()
            if tok.value == "for":
                return self.for_stmt()
            if tok.value == "def":
                return self.def_stmt()
            if tok.value == "return":
                return self.return_stmt()
            raise ParseError(f"unexpected keyword {tok.value!r}", tok.line, tok.col)
        if tok.type == "NAME" and self.peek(1).type == "OP" and self.peek(1).value == "=":
            start = self.next()
            self.next()  # '='
            value = self.expression()
            node = Assign(start.value, value)
            node.span = self._span(start)
            self.expect("NEWLINE")
            return node
        value = self.expression()
        node = ExprStmt(value, span=self._span(tok))
        self.expect("NEWLINE")
        return node

    def if_stmt(self) -> If:
        start = self.expect("NAME", "if")
        test = self.expression()
        body = self.block()
        orelse = []
        if self.at("NAME", "else"):
            self.next()
            orelse = self.block()
        return If(test, body, orelse, span=self._span(start))

    def for_stmt(self):
        start = self.expect("NAME", "for")
        var = self.expect("NAME").value
        self.expect("NAME", "in")
        if self.at("NAME", "range") and self.peek(1).type == "OP" and self.peek(1).value == "(":
            self.next()
            self.expect("OP", "(")
            first = self.expression()
            second = None
            if self.at("OP", ","):
                self.next()
                second = self.expression()
            self.expect("OP", ")")
            body = self.block()
            if second is None:
                return ForRange(var, None, first, body, span=self._span(start))
            return ForRange(var, first, second, body, span=self._span(start))
        iterable = self.expression()
        body = self.block()
        return ForEach(var, iterable, body, span=self._span(start))

    def def_stmt(self) -> FuncDef:
        start = self.expect("NAME", "def")
        name = self.expect("NAME").value
        self.expect("OP", "(")
        params = []
        if not self.at("OP", ")"):
            params.append(self.expect("NAME").value)
            while self.at("OP", ","):
                self.next()
                params.append(self.expect("NAME").value)
        self.expect("OP", ")")
        body = self.block()
        return FuncDef(name, params, body, span=self._span(start))

    def return_stmt(self) -> Return:
        start = self.expect("NAME", "return")
        value = self.expression()
        node = Return(value, span=self._span(start))
        self.expect("NEWLINE")
        return node

    # --- expressions ---

    def expression(self):
        return self.comparison()

    def comparison(self):
        start = self.peek()
        left = self.additive()
        if self.peek().type == "OP" and self.peek().value in _CMP_OPS:
            op = self.next().value
            right = self.additive()
            return Compare(op, left, right, span=self._span(start))
        return left

    def additive(self):
        start = self.peek()
        node = self.multiplicative()
        while self.peek().type == "OP" and self.peek().value in ("+", "-"):
            op = self.next().value
            right = self.multiplicative()
            node = BinOp(op, node, right, span=self._span(start))
        return node

    def multiplicative(self):
        start = self.peek()
        node = self.unary()
        while self.peek().type == "OP" and self.peek().value in ("*", "/"):
            op = self.next().value
            right = self.unary()
            node = BinOp(op, node, right, span=self._span(start))
        return node

    def unary(self):
        tok = self.peek()
        if tok.type == "OP" and tok.value == "-":
            self.next()
            operand = self.unary()
            return Unary("-", operand, span=self._span(tok))
        return self.power()

    def power(self):
        start = self.peek()
        base = self.atom()
        if self.at("OP", "**"):
            self.next()
            exponent = self.unary()
            return BinOp("**", base, exponent, span=self._span(start))
        return base

    def atom(self):
        tok = self.peek()
        if tok.type == "NUM":
            self.next()
            value = int(tok.value) if tok.value.isdigit() else float(tok.value)
            return Num(tok.value, value, span=self._span(tok, tok))
        if tok.type == "STRING":
            self.next()
            return Str(tok.value, span=self._span(tok, tok))
        if tok.type == "NAME":
            if tok.value in _KEYWORDS:
                raise ParseError(f"unexpected keyword {tok.value!r}", tok.line, tok.col)
            self.next()
            if self.at("OP", "("):
                self.next()
                args = []
                if not self.at("OP", ")"):
                    args.append(self.expression())
                    while self.at("OP", ","):
                        self.next()
                        args.append(self.expression())
                self.expect("OP", ")")
                return Call(tok.value, args, span=self._span(tok))
            return Name(tok.value, span=self._span(tok, tok))
        if tok.type == "OP" and tok.value == "(":
            self.next()
            node = self.expression()
            self.expect("OP", ")")
            return node
        if tok.type == "OP" and tok.value == "[":
            self.next()
            elts = []
            if not self.at("OP", "]"):
                elts.append(self.expression())
                while self.at("OP", ","):
                    self.next()
                    elts.append(self.expression())
            self.expect("OP", "]")
            return ListLit(elts, span=self._span(tok))
        raise ParseError(f"unexpected token {tok.value or tok.type!r}", tok.line, tok.col)


def parse_program(tokens: list[Token]) -> Program:
    return _Parser(tokens).parse_program()


def parse_source(text: str) -> Program:
    return parse_program(tokenize(text))


def parse_expression(text: str):
    """Parse a single expression (used for Monte Carlo event strings)."""
    parser = _Parser(tokenize(text))
    node = parser.expression()
    parser.expect("NEWLINE")
    if not parser.at("EOF"):
        tok = parser.peek()
        raise ParseError("trailing input after expression", tok.line, tok.col)
    return node
