from fractions import Fraction

import pytest

from equigeom.errors import ArityMismatch, NonUnivariate, ZeroPolynomial
from equigeom.exactfield import QQ
from equigeom.multipoly import (
    GRLEX,
    LEX,
    MultiPoly,
    bareiss_determinant,
    compose,
    divide,
    evaluate,
    exact_divide,
    homogenise,
    poly_arith,
    rational_roots,
    resultant_linear,
)

from _util import F3, F5, P

XY = ("x", "y")
XYZ = ("x", "y", "z")


def test_arithmetic_in_characteristic_three():
    assert poly_arith("mul", P("x+1", F3), P("x+2", F3)) == P("x^2+2", F3)
    assert poly_arith("power", P("x-1", F3), 3) == P("x^3+2", F3)


def test_arithmetic_over_rationals():
    assert poly_arith("add", P("x^2-2"), P("2")) == P("x^2")
    assert poly_arith("scale", P("x+1"), Fraction(1, 2)) == P("1/2*x + 1/2")


def test_evaluation():
    assert evaluate(P("x^2+y^2", F3, XY), (1, 1)) == 2
    assert evaluate(P("x^2+1", F5), (2,)) == 0
    assert evaluate(P("x^2-2*y^2", QQ, XY), (Fraction(3, 2), 1)) == Fraction(1, 4)


def test_composition():
    N = P("x^2+y^2", F3, XY)
    X, Y, Z = MultiPoly.gens(F3, 3)
    got = compose(N, [N.embed(3, [0, 1]), Z])
    assert got == P("(x^2+y^2)^2 + z^2", F3, XYZ)
    g = P("x^3+2*x+1", F3)
    assert compose(P("x", F3), [g]) == g
    assert compose(P("x+y", QQ, XY), [P("x", QQ, XY), MultiPoly.zero(QQ, 2)]) == P("x", QQ, XY)
    with pytest.raises(ArityMismatch):
        compose(N, [X])


def test_homogenisation_appends_the_new_variable_last():
    assert homogenise(P("x^2+1")) == P("x^2+y^2", QQ, XY)
    assert homogenise(P("x")) == P("x", QQ, XY)
    assert homogenise(P("x^2+x+1")) == P("x^2+x*y+y^2", QQ, XY)


def test_resultant_against_the_sylvester_oracle():
    # oracle: sympy.resultant(T**2 - 2, X - T*Y, T), computed offline
    assert resultant_linear(P("T^2-2", QQ, ("T",))) == P("x^2-2*y^2", QQ, XY)
    assert resultant_linear(P("T^2+1", QQ, ("T",))) == P("x^2+y^2", QQ, XY)
    assert resultant_linear(P("T-3", QQ, ("T",))) == P("x-3*y", QQ, XY)
    with pytest.raises(NonUnivariate):
        resultant_linear(P("5"))


def test_rational_roots():
    assert [str(r) for r in rational_roots(P("T^2-1", QQ, ("T",)))] == ["-1", "1"]
    assert rational_roots(P("T^2-2", QQ, ("T",))) == []
    assert [str(r) for r in rational_roots(P("T^2+1", F5, ("T",)))] == ["2", "3"]
    assert [str(r) for r in rational_roots(P("6*T^3-T^2-T", QQ, ("T",)))] == ["-1/3", "0", "1/2"]
    with pytest.raises(ZeroPolynomial):
        rational_roots(MultiPoly.zero(QQ, 1))


def test_division_and_exact_division():
    f = P("x^2*y+x*y^2+y^2", QQ, XY)
    (q1, q2), r = divide(f, [P("x*y-1", QQ, XY), P("y^2-1", QQ, XY)])
    assert q1 * P("x*y-1", QQ, XY) + q2 * P("y^2-1", QQ, XY) + r == f
    assert exact_divide(P("x^2-1"), P("x-1")) == P("x+1")
    with pytest.raises(ArithmeticError):
        exact_divide(P("x^2+1"), P("x-1"))


def test_bareiss_determinant_of_a_polynomial_matrix():
    x, y = MultiPoly.gens(QQ, 2)
    one = MultiPoly.one(QQ, 2)
    M = [[x, y, one], [one, x, y], [y, one, x]]
    # cofactor expansion by hand: x^3 + y^3 + 1 - 3xy
    assert bareiss_determinant(M) == P("x^3+y^3+1-3*x*y", QQ, XY)


def test_printing_is_graded_lex_and_deterministic():
    f = P("y^2 + 3*x - x^2*y + 7", QQ, XY)
    assert f.to_str(XY) == "-x^2*y + y^2 + 3*x + 7"
    assert P("x^2+2*y^2", F3, XY).to_str(XY) == "x^2 + 2*y^2"


def test_orders():
    f = P("x*y^2 + x^2", QQ, XY)
    assert f.leading(GRLEX)[0] == (1, 2)
    assert f.leading(LEX)[0] == (2, 0)
