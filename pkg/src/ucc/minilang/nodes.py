"""AST node definitions.

Nodes compare structurally; source spans are carried for diagnostics but
ignored in comparisons so that emitted-and-reparsed trees stay equal.
A span is (start_line, start_col, end_line, end_col), 1-based lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Span = tuple[int, int, int, int]


def _span_field():
    return field(default=None, compare=False, repr=False)


@dataclass
class Node:
    pass


@dataclass
class Program(Node):
    body: list
    span: Span | None = _span_field()


# --- statements ---


@dataclass
class Assign(Node):
    name: str
    value: Node
    span: Span | None = _span_field()


@dataclass
class If(Node):
    test: Node
    body: list
    orelse: list
    span: Span | None = _span_field()


@dataclass
class ForRange(Node):
    var: str
    start: Node | None
    stop: Node
    body: list
    span: Span | None = _span_field()


@dataclass
class ForEach(Node):
    var: str
    iterable: Node
    body: list
    span: Span | None = _span_field()


@dataclass
class FuncDef(Node):
    name: str
    params: list
    body: list
    span: Span | None = _span_field()


@dataclass
class Return(Node):
    value: Node
    span: Span | None = _span_field()


@dataclass
class ExprStmt(Node):
    value: Node
    span: Span | None = _span_field()


# --- expressions ---


@dataclass
class Num(Node):
    text: str
    value: float
    span: Span | None = _span_field()

    @classmethod
    def from_value(cls, v) -> "Num":
        if isinstance(v, int) or (isinstance(v, float) and v.is_integer() and abs(v) < 1e16):
            iv = int(v)
            return cls(str(iv), iv)
        return cls(repr(float(v)), float(v))

    @property
    def is_float_literal(self) -> bool:
        return "." in self.text or "e" in self.text or "E" in self.text


@dataclass
class Name(Node):
    id: str
    span: Span | None = _span_field()


@dataclass
class Str(Node):
    value: str
    span: Span | None = _span_field()


@dataclass
class BinOp(Node):
    op: str  # + - * / **
    left: Node
    right: Node
    span: Span | None = _span_field()


@dataclass
class Compare(Node):
    op: str  # < > <= >= == ===
    left: Node
    right: Node
    span: Span | None = _span_field()


@dataclass
class Unary(Node):
    op: str  # -
    operand: Node
    span: Span | None = _span_field()


@dataclass
class Call(Node):
    func: str
    args: list
    span: Span | None = _span_field()


@dataclass
class ListLit(Node):
    elts: list
    span: Span | None = _span_field()


def make_num_expr(text: str) -> Node:
    """Expression node for a (possibly signed) numeric literal text."""
    if text.startswith("-"):
        body = text[1:]
        value = int(body) if body.isdigit() else float(body)
        return Unary("-", Num(body, value))
    value = int(text) if text.isdigit() else float(text)
    return Num(text, value)


STMT_TYPES = (Assign, If, ForRange, ForEach, FuncDef, Return, ExprStmt)
EXPR_TYPES = (Num, Name, Str, BinOp, Compare, Unary, Call, ListLit)


def iter_child_exprs(node: Node):
    """Direct expression children of any node."""
    if isinstance(node, (BinOp, Compare)):
        yield node.left
        yield node.right
    elif isinstance(node, Unary):
        yield node.operand
    elif isinstance(node, Call):
        yield from node.args
    elif isinstance(node, ListLit):
        yield from node.elts
    elif isinstance(node, Assign):
        yield node.value
    elif isinstance(node, (Return, ExprStmt)):
        yield node.value
    elif isinstance(node, If):
        yield node.test
    elif isinstance(node, ForRange):
        if node.start is not None:
            yield node.start
        yield node.stop
    elif isinstance(node, ForEach):
        yield node.iterable


def iter_child_stmts(node: Node):
    """Direct statement-list children of any node."""
    if isinstance(node, Program):
        yield from node.body
    elif isinstance(node, If):
        yield from node.body
        yield from node.orelse
    elif isinstance(node, (ForRange, ForEach, FuncDef)):
        yield from node.body


def walk_exprs(node: Node):
    """All expression nodes at or below node (not descending into stmts)."""
    stack = [node] if isinstance(node, EXPR_TYPES) else list(iter_child_exprs(node))
    while stack:
        n = stack.pop()
        yield n
        stack.extend(iter_child_exprs(n))


def walk_stmts(node: Node):
    """All statements at or below node, in source order."""
    for s in iter_child_stmts(node):
        yield s
        yield from walk_stmts(s)


def map_child_exprs(node: Node, fn) -> None:
    """Replace each direct expression child c of node with fn(c), in place."""
    if isinstance(node, (BinOp, Compare)):
        node.left = fn(node.left)
        node.right = fn(node.right)
    elif isinstance(node, Unary):
        node.operand = fn(node.operand)
    elif isinstance(node, Call):
        node.args = [fn(a) for a in node.args]
    elif isinstance(node, ListLit):
        node.elts = [fn(e) for e in node.elts]
    elif isinstance(node, (Assign, Return, ExprStmt)):
        node.value = fn(node.value)
    elif isinstance(node, If):
        node.test = fn(node.test)
    elif isinstance(node, ForRange):
        if node.start is not None:
            node.start = fn(node.start)
        node.stop = fn(node.stop)
    elif isinstance(node, ForEach):
        node.iterable = fn(node.iterable)


def names_in(expr: Node) -> set[str]:
    return {n.id for n in walk_exprs(expr) if isinstance(n, Name)}
