"""MiniScript: the small indentation-blocked imperative source language.

The lexer, parser, AST and emitter round-trip exactly: parse(emit(ast))
reproduces the AST node-for-node, and numeric literals keep their
verbatim text so significant-figure information survives compilation.
"""

from .lexer import Token, tokenize
from .nodes import (
    Assign,
    BinOp,
    Call,
    Compare,
    ForEach,
    ForRange,
    FuncDef,
    If,
    ListLit,
    Name,
    Num,
    Program,
    Return,
    ExprStmt,
    Str,
    Unary,
)
from .parser import parse_program, parse_source, parse_expression
from .emitter import emit_source, emit_expr
from .analysis import AssignmentSite, find_assignments

__all__ = [
    "Token",
    "tokenize",
    "Program",
    "Assign",
    "If",
    "ForRange",
    "ForEach",
    "FuncDef",
    "Return",
    "ExprStmt",
    "Num",
    "Name",
    "Str",
    "BinOp",
    "Compare",
    "Call",
    "ListLit",
    "Unary",
    "parse_program",
    "parse_source",
    "parse_expression",
    "emit_source",
    "emit_expr",
    "AssignmentSite",
    "find_assignments",
]
