from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finmagnus.cli.dsl import Atom, Crown, Perm, Product, Quot, build, format_expr, parse_expr
from finmagnus.core import dump_cayley
from finmagnus.errors import ArityError, ExprSyntaxError, ParameterError


def test_product_parse():
    assert parse_expr("C7:C3 x M9") == Product((Atom("C7:C3"), Atom("M9")))


def test_crown_shorthand():
    assert parse_expr("Crown(S3, 2)") == Crown(Atom("S", (3,)), 2)


def test_unclosed_paren_offset():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("C(")
    assert err.value.position == 2


def test_whitespace_insensitive():
    assert parse_expr("  Quot( S(4) ,4 , 0 ) ") == Quot(Atom("S", (4,)), 4, 0)


def test_arity_error():
    with pytest.raises(ArityError):
        parse_expr("AGL(1)")


def test_quot_selector_out_of_range():
    with pytest.raises(ParameterError):
        build("Quot(S(4), 4, 1)")


def test_quot_builds_s3():
    assert build("Quot(S(4), 4, 0)").order == 6


def test_perm_expression():
    G = build("Perm[(0,1), (0,1,2,3)]")
    assert G.order == 24
    assert parse_expr("Perm[(0,1)(2,3)]") == Perm((((0, 1), (2, 3)),))


def test_cayley_file(tmp_path):
    (tmp_path / "c3.txt").write_text(dump_cayley(build("C(3)")))
    G = build(f'Cayley("{tmp_path / "c3.txt"}")')
    assert G.order == 3


_atoms = st.sampled_from(["C(4)", "S(3)", "M9", "Q8", "C7:C3", "AGL(1,5)", "E(2,3)", "D(10)", "QD16"])


@st.composite
def exprs(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        return draw(_atoms)
    kind = draw(st.sampled_from(["x", "crown", "quot"]))
    a = draw(exprs(depth=depth - 1))
    if kind == "x":
        return f"{a} x {draw(exprs(depth=depth - 1))}"
    if kind == "crown":
        return f"Crown({a}, {draw(st.integers(1, 3))})"
    return f"Quot({a}, {draw(st.integers(1, 9))}, {draw(st.integers(0, 2))})"


@given(exprs())
def test_parse_print_round_trip(text):
    node = parse_expr(text)
    canon = format_expr(node)
    assert parse_expr(canon) == node
    assert format_expr(parse_expr(canon)) == canon
