"""Deterministic pretty-printer; the inverse of the parser.

Parenthesization is minimal: a child is wrapped exactly when its
precedence level is below what its position requires, so emitted text
reparses to the identical tree.
"""

from __future__ import annotations

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

_LEVEL_CMP = 1
_LEVEL_ADD = 2
_LEVEL_MUL = 3
_LEVEL_UNARY = 4
_LEVEL_POW = 5
_LEVEL_ATOM = 6

INDENT = "    "


def emit_expr(node, level: int = _LEVEL_CMP) -> str:
    text, own = _expr(node)
    if own < level:
        return f"({text})"
    return text


def _expr(node) -> tuple[str, int]:
    if isinstance(node, Num):
        return node.text, _LEVEL_ATOM
    if isinstance(node, Name):
        return node.id, _LEVEL_ATOM
    if isinstance(node, Str):
        return f"'{node.value}'", _LEVEL_ATOM
    if isinstance(node, Call):
        args = ", ".join(emit_expr(a, _LEVEL_CMP) for a in node.args)
        return f"{node.func}({args})", _LEVEL_ATOM
    if isinstance(node, ListLit):
        elts = ", ".join(emit_expr(e, _LEVEL_CMP) for e in node.elts)
        return f"[{elts}]", _LEVEL_ATOM
    if isinstance(node, Unary):
        return f"-{emit_expr(node.operand, _LEVEL_UNARY)}", _LEVEL_UNARY
    if isinstance(node, BinOp):
        if node.op == "**":
            left = emit_expr(node.left, _LEVEL_ATOM)
            right = emit_expr(node.right, _LEVEL_UNARY)
            return f"{left} ** {right}", _LEVEL_POW
        if node.op in ("*", "/"):
            left = emit_expr(node.left, _LEVEL_MUL)
            right = emit_expr(node.right, _LEVEL_UNARY)
            return f"{left} {node.op} {right}", _LEVEL_MUL
        left = emit_expr(node.left, _LEVEL_ADD)
        right = emit_expr(node.right, _LEVEL_MUL)
        return f"{left} {node.op} {right}", _LEVEL_ADD
    if isinstance(node, Compare):
        left = emit_expr(node.left, _LEVEL_ADD)
        right = emit_expr(node.right, _LEVEL_ADD)
        return f"{left} {node.op} {right}", _LEVEL_CMP
    raise TypeError(f"not an expression node: {node!r}")


def _stmt_lines(node, depth: int) -> list[str]:
    pad = INDENT * depth
    if isinstance(node, Assign):
        return [f"{pad}{node.name} = {emit_expr(node.value)}"]
    if isinstance(node, ExprStmt):
        return [f"{pad}{emit_expr(node.value)}"]
    if isinstance(node, Return):
        return [f"{pad}return {emit_expr(node.value)}"]
    if isinstance(node, If):
        lines = [f"{pad}if {emit_expr(node.test)}:"]
        lines += _block_lines(node.body, depth + 1)
        if node.orelse:
            lines.append(f"{pad}else:")
            lines += _block_lines(node.orelse, depth + 1)
        return lines
    if isinstance(node, ForRange):
        if node.start is None:
            head = f"{pad}for {node.var} in range({emit_expr(node.stop)}):"
        else:
            head = f"{pad}for {node.var} in range({emit_expr(node.start)}, {emit_expr(node.stop)}):"
        return [head] + _block_lines(node.body, depth + 1)
    if isinstance(node, ForEach):
        head = f"{pad}for {node.var} in {emit_expr(node.iterable)}:"
        return [head] + _block_lines(node.body, depth + 1)
    if isinstance(node, FuncDef):
        head = f"{pad}def {node.name}({', '.join(node.params)}):"
        return [head] + _block_lines(node.body, depth + 1)
    raise TypeError(f"not a statement node: {node!r}")


def _block_lines(body: list, depth: int) -> list[str]:
    lines: list[str] = []
    for stmt in body:
        lines += _stmt_lines(stmt, depth)
    return lines


def emit_source(program: Program) -> str:
    lines = _block_lines(program.body, 0)
    return "\n".join(lines) + ("\n" if lines else "")
