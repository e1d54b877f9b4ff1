from fractions import Fraction

import pytest

from liekernel import parse, parse_algebra, parse_form, serialize, serialize_form
from liekernel.errors import BindingError, JacobiError, ParseError
from liekernel.parser import expr_of, instantiate, parse_lie_line

CANONICAL = [
    "(0,21,l.31)",
    "(0,0,12)",
    "(0,21+31,31,2.41+32)",
    "(0,0,0)",
    "(0,12,2.13,-4.14,15)",
    "(0,1/2.21+31,-21+1/2.31)",
    "(0,21,1/4.31,1/2.41)",
]


@pytest.mark.parametrize("text", CANONICAL)
def test_serialize_parse_identity_on_canonical(text):
    expr = parse(text)
    assert serialize(expr) == text
    assert parse(serialize(expr)) == expr


def test_parse_seven_dim_family_and_canonicalization():
    expr = parse("(0,0,12,13,23,14+25+a.23,16+25+35+a.24)")
    assert expr.n == 7 and expr.parameters == {"a"}
    # canonical form sorts by index pair and is idempotent
    text = serialize(expr)
    assert text == "(0,0,12,13,23,14+a.23+25,16+a.24+25+35)"
    assert serialize(parse(text)) == text


def test_parse_merges_duplicate_pairs():
    assert serialize(parse("(0,21+2.21,0)")) == "(0,3.21,0)"
    assert serialize(parse("(0,12+2.21,0)")) == "(0,-12,0)"
    assert serialize(parse("(0,21-21,0)")) == "(0,0,0)"


def test_parse_bracketed_indices_for_large_n():
    text = "(" + ",".join(["0"] * 9 + ["[1,10]"]) + ")"
    expr = parse(text)
    assert expr.n == 10
    assert serialize(expr) == text


@pytest.mark.parametrize("bad,fragment", [
    ("(0,21,0.5.31)", "decimal"),
    ("(0,21,81)", "out of range"),
    ("(0,11)", "repeated index"),
    ("(0,21", "expected"),
    ("(0,,21)", "empty slot"),
    ("(0,21)x", "trailing"),
    ("(0,2)", "two-digit"),
])
def test_parse_errors_carry_position(bad, fragment):
    with pytest.raises(ParseError) as err:
        parse(bad)
    assert fragment in str(err.value)
    assert "position" in str(err.value)


def test_instantiate_sign_convention():
    g = instantiate(parse("(0,21,l.31)"), {"l": Fraction(1, 2)})
    g.validate()
    assert g.bracket((1, 0, 0), (0, 1, 0)) == (0, 1, 0)
    assert g.bracket((1, 0, 0), (0, 0, 1)) == (0, 0, Fraction(1, 2))
    h3 = parse_algebra("(0,0,12)")
    assert h3.bracket((1, 0, 0), (0, 1, 0)) == (0, 0, -1)


def test_instantiate_unbound_parameter():
    with pytest.raises(BindingError):
        instantiate(parse("(0,21,l.31)"))


def test_instantiate_abelian():
    g = parse_algebra("(0,0,0)")
    assert all(all(x == 0 for x in g.bracket_basis(i, j))
               for i in range(1, 4) for j in range(1, 4))


def test_instantiate_is_linear_in_bindings():
    expr = parse("(0,21,l.31)")
    g1 = instantiate(expr, {"l": Fraction(1, 3)})
    g2 = instantiate(expr, {"l": Fraction(2, 3)})
    assert g2.bracket_basis(1, 3) == tuple(2 * x for x in g1.bracket_basis(1, 3))


def test_instantiate_does_not_assume_jacobi():
    # a tuple that fails Jacobi parses and instantiates; validation rejects
    bad = instantiate(parse("(0,23,12)"))
    with pytest.raises(JacobiError):
        bad.validate()


def test_expr_of_round_trip():
    for text in CANONICAL:
        if "l" in text:
            continue
        g = parse_algebra(text)
        assert instantiate(expr_of(g)).c == g.c


def test_form_literals():
    f = parse_form("3.123-145+1/2.267", 7)
    assert f[(1, 2, 3)] == 3
    assert f[(1, 4, 5)] == -1
    assert f[(2, 6, 7)] == Fraction(1, 2)
    assert parse_form(serialize_form(f), 7) == f
    assert parse_form("0", 5, 2).is_zero()
    with pytest.raises(ParseError):
        parse_form("12+123", 7)


def test_lie_line_parsing():
    entry = parse_lie_line("(0,21,l.31) | l=1/2  # name=r3_half grading=1,1")
    assert entry.bindings == {"l": Fraction(1, 2)}
    assert entry.annotations["name"] == "r3_half"
    assert parse_lie_line("   # pure comment") is None
    assert parse_lie_line("") is None
