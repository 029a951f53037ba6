import pytest
from sympy.polys.domains import QQ

from exactalg import (MIXED, NotBinaryError, PolynomialSyntaxError, QPoly, UnknownVariableError,
                      VariableTableMismatch, ZeroDenominatorError, ZeroPolynomialError, binary_gcd,
                      default_variables, is_squarefree_binary, monomials_of_degree, parse_poly,
                      parse_rational, partial_derivative, substitute, weighted_degree)

VARS = default_variables((1, 1, 2, 3, 5))


def test_parse_and_print_canonical_order():
    p = parse_poly("x^2*y^3 - 3/2*x^5 + w", VARS)
    assert str(p) == "-3/2*x^5 + x^2*y^3 + w"


def test_parse_leading_sign_and_parentheses():
    p = parse_poly("-(x^2 + 2*x*y + y^2)", VARS)
    assert str(p) == "-x^2 - 2*x*y - y^2"


def test_parse_constants_parameters():
    p = parse_poly("t*w + a*x^4*z + b*x^6", default_variables((1, 1, 2, 3, 3)),
                   constants={"a": 2, "b": "1/3"})
    assert p.coefficient((4, 0, 1, 0, 0)) == QQ(2)
    assert p.coefficient((6, 0, 0, 0, 0)) == QQ(1, 3)


def test_zero_prints_as_zero():
    assert str(parse_poly("x - x", VARS)) == "0"


def test_round_trip_on_printed_form():
    p = parse_poly("z*w + t^2 + y*(y + x^2)*(y + 2*x^2)", default_variables((1, 2, 9, 10, 19)))
    assert parse_poly(str(p), p.variables) == p


@pytest.mark.parametrize("text,position", [("x y", 2), ("x +", 3), ("x + 3/0", 6), ("(x", 2)])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly(text, VARS)
    assert info.value.position == position


def test_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        parse_poly("1/0*x", VARS)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse_poly("x + q", VARS)
    assert info.value.name == "q"


def test_parse_rational():
    assert parse_rational("-3/4") == QQ(-3, 4)
    assert parse_rational("7") == QQ(7)
    with pytest.raises(PolynomialSyntaxError):
        parse_rational("1.5")


def test_monomials_of_degree():
    assert monomials_of_degree((1, 2), 4) == [(4, 0), (2, 1), (0, 2)]
    assert monomials_of_degree((2, 3), 1) == []
    assert monomials_of_degree((1, 1, 1), 0) == [(0, 0, 0)]
    assert len(monomials_of_degree((1, 1, 1), 3)) == 10


def test_weighted_degree():
    assert weighted_degree(parse_poly("t*w + x^8", VARS)) == 8
    assert weighted_degree(parse_poly("x + z", VARS)) == MIXED
    with pytest.raises(ZeroPolynomialError):
        weighted_degree(QPoly(VARS))


def test_partial_derivative_and_substitute():
    p = parse_poly("x^3*y + z^2", VARS)
    assert str(partial_derivative(p, "x")) == "3*x^2*y"
    q = substitute(p, {"x": parse_poly("y", VARS), "z": 2})
    assert str(q) == "y^4 + 4"


def test_restrict_and_set_variable():
    p = parse_poly("x*w + z^2 + y^4", VARS)
    assert str(p.restrict(["y", "z"])) == "y^4 + z^2"
    assert str(p.set_variable("w", 1)) == "y^4 + z^2 + x"


def test_mismatched_tables_do_not_combine():
    other = default_variables((1, 1, 1, 1, 1))
    with pytest.raises(VariableTableMismatch):
        parse_poly("x", VARS) + parse_poly("x", other)


def test_binary_gcd():
    p = parse_poly("x^2 - y^2", VARS)
    q = parse_poly("2*x^2 + 2*x*y", VARS)
    assert str(binary_gcd(p, q)) == "x + y"


def test_binary_operations_reject_more_variables():
    with pytest.raises(NotBinaryError):
        binary_gcd(parse_poly("x + y + z", VARS), parse_poly("x", VARS))


def test_squarefree_binary():
    assert is_squarefree_binary(parse_poly("x^4 + 3*x^2*y^2 + y^4", VARS))
    assert not is_squarefree_binary(parse_poly("x*(x + y)*(x + y)", VARS))
    assert not is_squarefree_binary(parse_poly("x^2", VARS))
    assert is_squarefree_binary(parse_poly("x*y", VARS))
