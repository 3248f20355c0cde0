import pytest

from equigeom.errors import ResourceLimit
from equigeom.exactfield import QQ
from equigeom.ideals import IdealHandle, buchberger, intersect, macaulay_member, vanishing_ideal
from equigeom.multipoly import MultiPoly
from equigeom.varieties import Variety, coord_elem

from _util import F3, P, ideal

XY = ("x", "y")


def test_groebner_examples():
    # oracle: sympy.groebner, computed offline
    assert ideal(QQ, ("x",), "x^2-1", "x^3-x").groebner() == [P("x^2-1")]
    assert IdealHandle(QQ, 1, [], ("x",)).groebner() == [MultiPoly.zero(QQ, 1)]
    assert ideal(F3, XY, "x", "y").groebner() == [P("y", F3, XY), P("x", F3, XY)]


def test_normal_forms():
    I = ideal(QQ, ("x",), "x^2-1")
    assert I.normal_form(P("x^2")) == P("1")
    assert I.normal_form(P("x^3-x")).is_zero()
    J = ideal(QQ, XY, "x^2-1", "y^2-y")
    assert J.normal_form(P("x^2*y", QQ, XY)) == P("y", QQ, XY)


def test_membership():
    assert ideal(QQ, ("x",), "x^2-1").member(P("x^3-x"))
    assert not ideal(QQ, ("x",), "x^2+1").member(P("1"))
    assert ideal(F3, ("x",), "(x-1)^2").member(P("(x-1)^3", F3))


def test_lift_returns_cofactors():
    I = ideal(QQ, XY, "x*y-1", "y^2-1")
    f = P("x^2*y^2 - x*y + y^2 - 1", QQ, XY)
    cof = I.lift(f)
    assert sum((c * g for c, g in zip(cof, I.generators)), MultiPoly.zero(QQ, 2)) == f
    assert I.lift(P("x", QQ, XY)) is None


def test_macaulay_oracle():
    I = ideal(QQ, ("x",), "x^2-1")
    assert macaulay_member(P("x^3-x"), I, 3) is True
    assert macaulay_member(P("1"), ideal(QQ, ("x",), "x^2+1"), 6) is None
    assert macaulay_member(P("y", QQ, XY), ideal(QQ, XY, "x"), 4) is None
    with pytest.raises(ValueError):
        macaulay_member(P("x^3"), I, 2)


def test_vanishing_ideals_of_point_sets():
    assert vanishing_ideal(F3, 1, [(1,), (2,)]).groebner() == [P("x^2+2", F3)]
    assert vanishing_ideal(F3, 1, []).groebner() == [P("1", F3)]
    assert vanishing_ideal(F3, 1, [(0,), (1,), (2,)]).groebner() == [P("x^3-x", F3)]
    # oracle: sympy.groebner modulo 3 of the interpolated ideal
    pts = [(0, 0), (1, 2), (2, 2)]
    assert vanishing_ideal(F3, 2, pts).groebner() == [P(s, F3, XY) for s in ("y^2+y", "x*y+x", "x^2+y")]


def test_intersection_by_elimination():
    I = ideal(QQ, XY, "x", "y")
    J = ideal(QQ, XY, "x-1")
    K = intersect(I, J)
    assert K.groebner() == [P("x*y-y", QQ, XY), P("x^2-x", QQ, XY)]


def test_step_budget_raises():
    I = IdealHandle(QQ, 3, [P(s, QQ, ("x", "y", "z")) for s in ("x^5+y^4+z^3-1", "x^3+y^3+z^2-1", "x^2+y^2+z-1")],
                    ("x", "y", "z"), budget=50)
    with pytest.raises(ResourceLimit):
        I.groebner()


def test_unit_ideal_and_containment():
    assert ideal(QQ, XY, "x", "x-1").is_unit()
    I = ideal(F3, ("x",), "(x-1)^2")
    J = ideal(F3, ("x",), "x-1")
    assert J.contains_ideal(I) and not I.contains_ideal(J)


def test_coordinate_ring_elements():
    V = Variety.from_points(F3, 1, [(0,), (1,), (2,)])
    zero = coord_elem(MultiPoly.zero(F3, 1), V)
    assert zero.is_zero()
    assert coord_elem(P("x^3-x", F3), V).is_zero()
    a = coord_elem(P("x+1", F3), V)
    assert (a * a).values() == (1, 1, 0)
    assert V.interpolate([1, 2, 2]) == coord_elem(P("x^2+1", F3), V)


def test_buchberger_tracks_cofactors():
    gens = [P("x^2-y", QQ, XY), P("x*y-1", QQ, XY)]
    basis, reps = buchberger(gens, track=True)
    for g, rep in zip(basis, reps):
        assert sum((c * h for c, h in zip(rep, gens)), MultiPoly.zero(QQ, 2)) == g
