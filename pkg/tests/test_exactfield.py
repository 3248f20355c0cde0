from fractions import Fraction

import pytest

from equigeom.errors import DescriptorMismatch, DivisionByZero, InfiniteField, InvalidField
from equigeom.exactfield import GF, QQ, FieldValue, enumerate_field, field_arith, frobenius


def fv(F, c):
    return FieldValue(F, F.coerce(c))


def test_inverse_in_gf3():
    F = GF(3)
    assert field_arith("inv", fv(F, 2)) == 2


def test_rational_addition():
    assert field_arith("add", fv(QQ, Fraction(1, 2)), fv(QQ, Fraction(1, 3))) == Fraction(5, 6)


def test_gf9_generator_squares_to_minus_one():
    F = GF(3, 2, (1, 0, 1))
    t = F.gen
    assert field_arith("mul", t, t) == 2
    assert str(F) == "GF(3^2; t^2+1)"


def test_enumeration_order():
    assert [str(c) for c in enumerate_field(GF(3))] == ["0", "1", "2"]
    assert [str(c) for c in enumerate_field(GF(2, 2))] == ["0", "1", "t", "t+1"]
    with pytest.raises(InfiniteField):
        list(enumerate_field(QQ))


def test_frobenius():
    F9 = GF(3, 2, (1, 0, 1))
    t = F9.gen
    assert frobenius(t) == 2 * t
    F4 = GF(2, 2)
    b = F4.gen
    assert frobenius(b) == b + 1
    for c in enumerate_field(GF(5)):
        assert frobenius(c) == c


def test_division_by_zero_and_mismatch():
    F = GF(5)
    with pytest.raises(DivisionByZero):
        fv(F, 0).inv()
    with pytest.raises(DescriptorMismatch):
        fv(F, 1) + fv(GF(3), 1)


def test_invalid_fields():
    with pytest.raises(InvalidField):
        GF(4)
    with pytest.raises(InvalidField):
        GF(3, 2, (2, 0, 1))  # t^2 + 2 = (t - 1)(t + 1) over GF(3)


def test_field_orders():
    assert GF(2, 3).order == 8
    assert len(GF(2, 3).raw_elements) == 8
    assert GF(7).characteristic == 7
