"""Tokenizer with indentation-based block structure.

Produces NEWLINE / INDENT / DEDENT tokens Python-style.  A line's leading
whitespace may use tabs or spaces but not both, and nested blocks must
extend their enclosing indentation string, otherwise the indentation is
ambiguous and rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import LexError

_NUM_RE = re.compile(r"(?:[0-9]+\.[0-9]+|[0-9]+|\.[0-9]+)(?:[eE][-+]?[0-9]+)?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPS = (
    "===",
    "**",
    "==",
    "<=",
    ">=",
    "<",
    ">",
    "=",
    "+",
    "-",
    "*",
    "/",
    "(",
    ")",
    "[",
    "]",
    ",",
    ":",
)


@dataclass(frozen=True)
class Token:
    type: str  # NAME NUM STRING OP NEWLINE INDENT DEDENT EOF
    value: str
    line: int
    col: int

    def __repr__(self):
        return f"{self.type}({self.value!r})@{self.line}:{self.col}"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    indent_stack = [""]
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0] if _hash_outside_string(raw) else _strip_comment_q(raw)
        if not body.strip():
            continue
        indent = body[: len(body) - len(body.lstrip(" \t"))]
        if " " in indent and "\t" in indent:
            raise LexError("indentation mixes tabs and spaces", lineno, 1)
        _handle_indent(tokens, indent_stack, indent, lineno)
        _lex_line(tokens, body.strip(), lineno, len(indent) + 1)
        tokens.append(Token("NEWLINE", "", lineno, len(body) + 1))
    while len(indent_stack) > 1:
        indent_stack.pop()
        tokens.append(Token("DEDENT", "", len(lines) + 1, 1))
    tokens.append(Token("EOF", "", len(lines) + 1, 1))
    return tokens


def _hash_outside_string(line: str) -> bool:
    return "'" not in line and '"' not in line


def _strip_comment_q(line: str) -> str:
    out = []
    quote = None
    for ch in line:
        if quote:
            if ch == quote:
                quote = None
        elif ch in ("'", '"'):
            quote = ch
        elif ch == "#":
            break
        out.append(ch)
    return "".join(out)


def _handle_indent(tokens: list[Token], stack: list[str], indent: str, lineno: int) -> None:
    current = stack[-1]
    if indent == current:
        return
    if indent.startswith(current) and len(indent) > len(current):
        stack.append(indent)
        tokens.append(Token("INDENT", indent, lineno, 1))
        return
    while len(stack) > 1 and len(indent) < len(stack[-1]):
        stack.pop()
        tokens.append(Token("DEDENT", "", lineno, 1))
    if indent != stack[-1]:
        raise LexError("inconsistent indentation", lineno, 1)


def _lex_line(tokens: list[Token], body: str, lineno: int, start_col: int) -> None:
    i = 0
    n = len(body)
    while i < n:
        ch = body[i]
        col = start_col + i
        if ch in " \t":
            i += 1
            continue
        if ch in ("'", '"'):
            end = body.find(ch, i + 1)
            if end < 0:
                raise LexError("unterminated string literal", lineno, col)
            tokens.append(Token("STRING", body[i + 1 : end], lineno, col))
            i = end + 1
            continue
        m = _NUM_RE.match(body, i)
        if m and (ch.isdigit() or (ch == "." and i + 1 < n and body[i + 1].isdigit())):
            tokens.append(Token("NUM", m.group(), lineno, col))
            i = m.end()
            continue
        m = _NAME_RE.match(body, i)
        if m:
            tokens.append(Token("NAME", m.group(), lineno, col))
            i = m.end()
            continue
        for op in _OPS:
            if body.startswith(op, i):
                tokens.append(Token("OP", op, lineno, col))
                i += len(op)
                break
        else:
            raise LexError(f"unexpected character {ch!r}", lineno, col)
