from fractions import Fraction

import pytest

from equigeom.errors import NotSpecialMaximal, ZeroFunction
from equigeom.exactfield import QQ
from equigeom.geometry import (
    MEMBER,
    NO,
    NOT_MEMBER,
    UNKNOWN,
    YES,
    equiradical_certificate,
    equiradical_oracle,
    has_rational_zero,
    is_irreducible,
    point_ideal_dictionary,
    rabinowitsch_embed,
    special_maximal_to_point,
    zero_set,
)
from equigeom.ideals import IdealHandle
from equigeom.varieties import Variety

from _util import F3, F5, P, ideal

XY = ("x", "y")


def _pts(zs):
    return [[str(c) for c in pt] for pt in zs.points]


def test_zero_sets():
    assert _pts(zero_set(ideal(F3, ("x",), "x^2+1"))) == []
    assert _pts(zero_set(ideal(F3, ("x",), "x^2-1"))) == [["1"], ["2"]]
    assert _pts(zero_set(ideal(F5, XY, "x-1", "y-2"))) == [["1", "2"]]


def test_rational_zero_sets_are_flagged_partial():
    zs = zero_set(ideal(QQ, XY, "y-x^2", "x^2-4"))
    assert zs.partial
    assert _pts(zs) == [["-2", "4"], ["2", "4"]]


def test_has_rational_zero_finite():
    I = ideal(F3, ("x",), "x^2+1")
    res = has_rational_zero(I)
    assert res.status == NO
    assert res.cert.D == P("x^2+1", F3) and res.cert.verify() and I.member(res.cert.D)
    res = has_rational_zero(ideal(F3, ("x",), "x^2-1"))
    assert res.status == YES and [str(c) for c in res.point] == ["1"]


def test_has_rational_zero_rationals():
    res = has_rational_zero(ideal(QQ, XY, "x^2+y^2+1"), height=10)
    assert res.status == UNKNOWN
    res = has_rational_zero(ideal(QQ, XY, "x^2+1", "y"))
    assert res.status == NO and res.cert.verify()
    # y^2 = 3/4 has no rational solution; the basis exposes a univariate certificate
    res = has_rational_zero(ideal(QQ, XY, "2*x-1", "y^2-x-1/4"))
    assert res.status == NO and res.cert.D == P("y^2-3/4", QQ, XY)
    res = has_rational_zero(ideal(QQ, XY, "2*x-1", "y^2-x-1/2"))
    assert res.status == YES and res.point[0] == Fraction(1, 2) and abs(res.point[1].raw) == 1


def test_equiradical_oracle():
    assert equiradical_oracle(ideal(F3, ("x",), "(x-1)^2")).groebner() == [P("x-1", F3)]
    assert equiradical_oracle(ideal(F3, ("x",), "x^2+1")).groebner() == [P("1", F3)]
    assert equiradical_oracle(ideal(F3, ("x",), "x^2-1")).groebner() == [P("x^2-1", F3)]


def test_equiradical_certificates():
    I = ideal(F3, ("x",), "(x-1)^2")
    c = equiradical_certificate(I, P("x-1", F3))
    assert c.status == MEMBER and c.sigma.value == P("(x-1)^3", F3) and c.verify(I)
    I = ideal(F3, ("x",), "x^2-1")
    c = equiradical_certificate(I, P("x-1", F3))
    assert c.status == NOT_MEMBER and [str(v) for v in c.separator.point] == ["2"]
    assert c.verify(I)
    I = ideal(F3, ("x",), "x^2+1")
    c = equiradical_certificate(I, P("1", F3))
    assert c.status == MEMBER and I.member(c.sigma.value) and c.verify(I)


def test_equiradical_certificate_over_rationals():
    I = ideal(QQ, ("x",), "x^2")
    c = equiradical_certificate(I, P("x"))
    assert c.status == MEMBER and c.sigma.value == P("x^3") and c.verify(I)
    c = equiradical_certificate(ideal(QQ, ("x",), "x^2-1"), P("x-1"))
    assert c.status == NOT_MEMBER and c.verify(ideal(QQ, ("x",), "x^2-1"))


def test_zero_degree_bound_is_inconclusive():
    I = ideal(F3, ("x",), "(x-1)^2")
    assert equiradical_certificate(I, P("x-1", F3), degree_bound=0).status == UNKNOWN


def test_point_ideal_dictionary():
    m = point_ideal_dictionary(F3, (1, 2), XY)
    assert list(m.ideal.generators) == [P("x-1", F3, XY), P("y-2", F3, XY)]
    assert [str(c) for c in special_maximal_to_point(m.ideal)] == ["1", "2"]
    with pytest.raises(NotSpecialMaximal):
        special_maximal_to_point(ideal(F3, ("x",), "x^2+1"))
    assert [str(c) for c in special_maximal_to_point(ideal(QQ, XY, "2*x-1", "y+x"))] == ["1/2", "-1/2"]


def test_irreducibility():
    assert is_irreducible(Variety.from_points(F3, 2, [(1, 2)])).status == YES
    r = is_irreducible(Variety.from_points(F3, 1, [(1,), (2,)]))
    assert r.status == NO and len(r.parts) == 2
    assert is_irreducible(Variety(ideal(QQ, XY, "y-x^2"))).status == YES


def test_rabinowitsch_embedding():
    V = Variety(IdealHandle(F3, 1, [], ("x",)))
    emb = rabinowitsch_embed(V, P("x", F3))
    assert emb.verified
    assert sorted(emb.W.points) == [(1, 1), (2, 2)]
    assert [emb.project(Q) for Q in sorted(emb.W.points)] == [(1,), (2,)]
    emb = rabinowitsch_embed(V, P("1", F3))
    assert sorted(emb.W.points) == [(0, 1), (1, 1), (2, 1)]
    emb = rabinowitsch_embed(V, P("x^3-x", F3))
    assert emb.W.points == () and emb.open_points == []


def test_rabinowitsch_rejects_zero_function_over_rationals():
    V = Variety(ideal(QQ, ("x",), "x^2-1"))
    with pytest.raises(ZeroFunction):
        rabinowitsch_embed(V, P("x^2-1"))
