import pytest

from src.core.exceptions import ExpressionParseError
from src.expr import Atom, Expression, Linear, Term, format_expression, parse_expression


def test_single_variable_quadratic():
    expr = parse_expression("a(x)*a(x) + a(x) + x")
    assert expr == Expression((Term(1, (Atom(0), Atom(0))),), (Linear(0, 1, 1),))
    assert format_expression(expr) == "a(x)*a(x) + a(x) + x"


def test_power_and_shifted_atoms():
    assert parse_expression("a(x)^2 + a(x) + x") == parse_expression("a(x)*a(x) + a(x) + x")
    shifted = parse_expression("(a(x)+x)*(b(y)-2*y)")
    assert shifted.terms[0].factors == (Atom(0, -2), Atom(1, 1))


def test_linear_of_shifted_atom():
    # (a(x)+x) alone is λα + μx with λ = μ = 1
    assert parse_expression("(a(x)+x)") == parse_expression("a(x) + x")


def test_parse_is_canonical_under_renaming():
    assert parse_expression("a(x)*b(y) + b(y) + y") == parse_expression("b(y)*a(x) + a(x) + x")


def test_format_parse_inverse_on_canonical_forms():
    for text in ["a(x)*b(y) + a(x) + x + b(y) + y",
                 "(a(x)+x)*(b(y)+y) + a(x)*b(y)",
                 "2*a(x)*a(x) - 3*x"]:
        expr = parse_expression(text)
        assert parse_expression(format_expression(expr)) == expr


@pytest.mark.parametrize("text,offset", [
    ("a(x) + * y", 7),
    ("a(x", 3),
    ("a(x) + a(y)", 7),
    ("a(x)*x", 5),
    ("a(x) + 3", 7),
    ("a(x) $ b(y)", 5),
])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(ExpressionParseError) as err:
        parse_expression(text)
    assert err.value.offset == offset
    assert err.value.text == text


def test_empty_expression():
    with pytest.raises(ExpressionParseError):
        parse_expression("   ")
