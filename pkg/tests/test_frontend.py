import pytest

from ucc.errors import LexError, ParseError
from ucc.minilang import (
    Assign,
    BinOp,
    Compare,
    ForEach,
    ForRange,
    FuncDef,
    Name,
    Num,
    Unary,
    emit_source,
    find_assignments,
    parse_source,
    tokenize,
)
from ucc.minilang.nodes import walk_exprs, walk_stmts


def test_tokenize_assignment():
    toks = tokenize("a = 3.56")
    kinds = [(t.type, t.value) for t in toks[:3]]
    assert kinds == [("NAME", "a"), ("OP", "="), ("NUM", "3.56")]


def test_tokenize_if_header():
    toks = tokenize("if a < b:\n    x = 1")
    values = [(t.type, t.value) for t in toks]
    assert ("NAME", "if") == values[0]
    assert ("OP", "<") in values
    assert any(t.type == "INDENT" for t in toks)
    assert any(t.type == "DEDENT" for t in toks)


def test_tab_space_mix_rejected():
    with pytest.raises(LexError):
        tokenize("if a < b:\n \tx = 1")


def test_inconsistent_dedent_rejected():
    with pytest.raises(LexError):
        tokenize("if a < b:\n    x = 1\n  y = 2")


def test_comments_and_strings():
    toks = tokenize("x = 'f'  # comment with 'quotes'\n")
    assert [(t.type, t.value) for t in toks[:3]] == [("NAME", "x"), ("OP", "="), ("STRING", "f")]


def test_parse_shapes():
    ast = parse_source("d = a * b + c\n")
    d = ast.body[0]
    assert isinstance(d, Assign) and d.name == "d"
    assert d.value == BinOp("+", BinOp("*", Name("a"), Name("b")), Name("c"))


def test_parse_kinematics_shape():
    ast = parse_source("s = u * t + 0.5 * a * t ** 2\n")
    v = ast.body[0].value
    assert isinstance(v, BinOp) and v.op == "+"
    assert v.left == BinOp("*", Name("u"), Name("t"))
    assert v.right == BinOp("*", BinOp("*", Num("0.5", 0.5), Name("a")), BinOp("**", Name("t"), Num("2", 2)))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_source("x = (\n")
    with pytest.raises(ParseError):
        parse_source("x = 1 +\n")
    with pytest.raises(ParseError):
        parse_source("def f(:\n    return 1\n")


def test_precedence():
    assert parse_source("x = -2 ** 2\n").body[0].value == Unary("-", BinOp("**", Num("2", 2), Num("2", 2)))
    assert parse_source("x = 2 ** -1\n").body[0].value == BinOp("**", Num("2", 2), Unary("-", Num("1", 1)))
    assert parse_source("x = a - b - c\n").body[0].value == BinOp(
        "-", BinOp("-", Name("a"), Name("b")), Name("c")
    )
    assert parse_source("x = a ** b ** c\n").body[0].value == BinOp(
        "**", Name("a"), BinOp("**", Name("b"), Name("c"))
    )
    assert parse_source("x = a < b + c\n").body[0].value == Compare(
        "<", Name("a"), BinOp("+", Name("b"), Name("c"))
    )


def test_comparison_eqq():
    v = parse_source("x = a === b\n").body[0].value
    assert isinstance(v, Compare) and v.op == "==="


def test_for_both_styles_and_def():
    src = (
        "def f(x, y):\n"
        "    return x + y\n"
        "for i in range(0, 3):\n"
        "    t = i\n"
        "for v in items:\n"
        "    print(v)\n"
    )
    ast = parse_source(src)
    assert isinstance(ast.body[0], FuncDef) and ast.body[0].params == ["x", "y"]
    assert isinstance(ast.body[1], ForRange)
    assert isinstance(ast.body[2], ForEach)


def test_round_trip_identity(corpus):
    for name in (
        "product_copy.ms",
        "area_auto.ms",
        "control_flow.ms",
        "oscillator_single.ms",
        "oscillator_split.ms",
        "sum5.ms",
        "tan_rewrite.ms",
    ):
        src = corpus(name)
        ast = parse_source(src)
        out = emit_source(ast)
        assert parse_source(out) == ast, name
        assert emit_source(parse_source(out)) == out, name


def test_num_text_reparses_exactly():
    ast = parse_source("a = 3.56\nb = 0.1\nc = 12\nd = 1.5e2\n")
    for stmt in ast.body:
        n = stmt.value
        assert isinstance(n, Num)
        reparsed = parse_source(f"x = {n.text}\n").body[0].value
        assert reparsed.value == n.value and reparsed.text == n.text


def test_spans_nest(corpus):
    ast = parse_source(corpus("control_flow.ms"))
    for stmt in walk_stmts(ast):
        assert stmt.span is not None
        s_lo, _, s_hi, _ = stmt.span
        for e in walk_exprs(stmt):
            assert e.span is not None
            assert s_lo <= e.span[0] and e.span[2] <= s_hi


def test_find_assignments_order_and_kinds():
    src = "a = 3.56\nc = a\nd = a * b + c\ne = f(1)\n"
    sites = find_assignments(parse_source(src))
    assert [s.name for s in sites] == ["a", "c", "d", "e"]
    assert [s.rhs_kind for s in sites] == ["literal", "copy", "expression", "call"]
    assert [s.site_id for s in sites] == [0, 1, 2, 3]


def test_find_assignments_scopes_and_lists():
    src = (
        "def calc(t):\n"
        "    g = 9.81\n"
        "    return g * t\n"
        "xs = [1.0, 2.5]\n"
    )
    sites = find_assignments(parse_source(src))
    names = {s.name: s for s in sites}
    assert names["calc.g"].rhs_kind == "literal"
    assert names["calc.g"].scope == "calc"
    assert names["xs[0]"].rhs_kind == "literal"
    assert names["xs[1]"].rhs_kind == "literal"
    assert names["xs"].rhs_kind == "expression"


def test_negated_literal_is_literal_site():
    sites = find_assignments(parse_source("a = -3.5\n"))
    assert sites[0].rhs_kind == "literal"


def test_empty_program():
    ast = parse_source("")
    assert ast.body == []
    assert find_assignments(ast) == []
    assert emit_source(ast) == ""
