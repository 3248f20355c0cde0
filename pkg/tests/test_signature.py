import itertools

import pytest

from equigeom.errors import (
    ArityMismatch,
    CertificateInvalid,
    CommonZeroExists,
    HasRationalRoot,
    NonSpecialAmbient,
)
from equigeom.exactfield import GF, QQ
from equigeom.ideals import IdealHandle
from equigeom.multipoly import MultiPoly
from equigeom.signature import (
    CERTIFIED,
    COMPOSITION,
    HAS_ZERO,
    UNIVARIATE,
    UNKNOWN,
    CanonicalLoc,
    FunctionField,
    LocFraction,
    OneElementLoc,
    SignatureCert,
    carunloc_backward,
    carunloc_forward,
    constant_signature,
    in_coordinate_image,
    in_signature,
    is_special_ideal_cert,
    is_star_algebra,
    m_element,
    normic_compose,
    normic_from_galois,
    normic_from_minpoly,
    seed_signature,
    sigma_element,
    sigma_product,
    signature_from_no_common_zero,
    signature_from_normic,
)
from equigeom.varieties import Variety

from _util import F2, F3, F5, P, ideal

XY = ("x", "y")


def _values(D):
    F = D.field
    return [F.fmt(D.eval_raw((c,))) for c in F.raw_elements]


def test_in_signature_finite_fields():
    res = in_signature(P("x^2+1", F3))
    assert res.status == CERTIFIED and res.cert.verify()
    assert _values(P("x^2+1", F3)) == ["1", "2", "2"]
    res = in_signature(P("x^2+1", F5))
    assert res.status == HAS_ZERO and [str(c) for c in res.witness] == ["2"]


def test_in_signature_rationals():
    res = in_signature(P("x^2+1"))
    assert res.status == CERTIFIED and res.cert.kind == UNIVARIATE
    assert in_signature(P("x^2-4")).status == HAS_ZERO
    assert in_signature(P("x^2+y^2", QQ, XY)).status == HAS_ZERO  # the origin


def test_in_signature_bounded_search_is_inconclusive():
    res = in_signature(P("x^2+y^2+1", QQ, XY), height=5)
    assert res.status == UNKNOWN


def test_galois_norm_forms():
    assert normic_from_galois(F3, 2).poly == P("x^2+y^2", F3, XY)
    assert normic_from_galois(F2, 2).poly == P("x^2+x*y+y^2", F2, XY)
    N5 = normic_from_galois(F5, 2)
    assert N5.poly.is_homogeneous() and N5.poly.total_degree() == 2 and N5.verify()
    N8 = normic_from_galois(F2, 3)
    assert N8.poly.total_degree() == 3 and N8.verify()


def test_galois_norm_form_over_an_extension_base():
    F4 = GF(2, 2)
    N = normic_from_galois(F4, 2)
    assert N.verify() and N.poly.total_degree() == 2


def test_minpoly_norm_forms():
    assert normic_from_minpoly(P("T^2-2", QQ, ("T",))).poly == P("x^2-2*y^2", QQ, XY)
    assert normic_from_minpoly(P("T^2+1", QQ, ("T",))).poly == P("x^2+y^2", QQ, XY)
    with pytest.raises(HasRationalRoot) as err:
        normic_from_minpoly(P("T^2-1", QQ, ("T",)))
    assert err.value.root == 1


def test_compositions_are_normic():
    N = normic_from_galois(F3, 2)
    assert normic_compose(N, 2) is N
    N3 = normic_compose(N, 3)
    assert N3.poly == P("(x^2+y^2)^2 + z^4", F3, ("x", "y", "z"))
    assert N3.verify()
    N2 = normic_from_galois(F2, 2)
    N4 = normic_compose(N2, 4)
    X = MultiPoly.gens(F2, 4)
    inner = [N2.poly.compose([X[0], X[1]]), N2.poly.compose([X[2], X[3]])]
    assert N4.poly == N2.poly.compose(inner)
    assert N4.verify()
    assert normic_compose(normic_from_minpoly(P("T^2+1", QQ, ("T",))), 3).verify()


def test_signature_from_no_common_zero():
    D = signature_from_no_common_zero(P("x^2+1", F3), [])
    assert D.D == P("x^2+1", F3) and D.verify()
    D = signature_from_no_common_zero(P("x", F3), [P("x-1", F3)])
    assert D.D == P("x^2+(x-1)^2", F3) and D.kind == COMPOSITION and D.verify()
    assert _values(D.D) == ["1", "1", "2"]
    with pytest.raises(CommonZeroExists) as err:
        signature_from_no_common_zero(P("x", F3), [P("x", F3)])
    assert [str(c) for c in err.value.point] == ["0"]


def test_signature_from_normic():
    N = normic_from_galois(F3, 2)
    cert = signature_from_normic(N)
    assert cert.D == P("x^2+1", F3) and cert.verify()


def test_sigma_elements():
    a = P("x-1", F3)
    s = sigma_element(a, 1, seed_signature(F3), 1, (MultiPoly.zero(F3, 1),))
    assert s.value == P("(x-1)^3", F3) and s.verify()
    one = sigma_element(a, 0, constant_signature(F3), 0, ())
    assert one.value == P("1", F3)
    x = P("x", F3)
    assert sigma_element(x, 2, constant_signature(F3), 1, ()).value == P("x^2", F3)
    assert sigma_product(s, s).value == P("(x-1)^6", F3)
    with pytest.raises(ArityMismatch):
        sigma_element(a, 1, seed_signature(F3), 1, ())
    bad = SignatureCert(P("x^2-1", F3), "ExhaustiveNoZero")
    with pytest.raises(CertificateInvalid):
        sigma_element(a, 1, bad, 1, (x,))


def test_canonical_localisation_of_the_rational_line():
    V = Variety.affine_space(QQ, 1, ("x",))
    A = CanonicalLoc(V)
    den = m_element(seed_signature(QQ), (P("x"),))
    inv = LocFraction(A, P("1"), den)
    assert inv.den.value == P("x^2+1")
    other = LocFraction(A, P("x^2+1"), den * den)
    assert inv == other
    assert in_coordinate_image(inv) == (False, None)
    ok, c = in_coordinate_image(LocFraction(A, P("x^3+x"), den))
    assert ok and c.rep == P("x")


def test_one_element_localisation_equality():
    V = Variety.from_points(F3, 1, [(0,), (1,), (2,)])
    x = P("x", F3)
    A = OneElementLoc(V, x)
    c = constant_signature(F3)
    lhs = LocFraction(A, P("x^2", F3), sigma_element(x, 3, c, 0, ()))
    rhs = LocFraction(A, P("1", F3), sigma_element(x, 1, c, 0, ()))
    assert lhs == rhs
    assert not LocFraction(A, P("x", F3), sigma_element(x, 1, c, 0, ())) == rhs


def test_one_element_localisation_round_trip():
    V = Variety.from_points(F3, 1, [(0,), (1,), (2,)])
    a = P("x-1", F3)
    A = OneElementLoc(V, a)
    s = sigma_element(a, 1, seed_signature(F3), 2, (P("x", F3),))
    fr = LocFraction(A, P("x+2", F3), s)
    fwd = carunloc_forward(fr)
    back = carunloc_backward(fwd, A)
    assert back == fr
    for P_ in V.points:
        if a.eval_raw(P_):
            assert fwd.value_at(P_) == fr.evaluate(P_).raw


def test_non_special_ambient_rejected():
    V = Variety(ideal(QQ, ("x",), "x^2+1"))
    with pytest.raises(NonSpecialAmbient):
        CanonicalLoc(V)


def test_special_ideals():
    res = is_special_ideal_cert(ideal(F3, ("x",), "(x-1)^2"))
    assert res.status == "violation"
    assert res.b == P("x-1", F3)
    assert res.sigma.value == P("(x-1)^3", F3)
    w = res.witness()
    assert (w["m"], w["n"]) == (1, 1) and w["D"] == P("x^2+1", F3)
    res = is_special_ideal_cert(ideal(F3, ("x",), "x^2-1"))
    assert res.status == "special"
    assert res.equiradical.groebner() == [P("x^2-1", F3)]


def test_zero_ideal_over_a_finite_field_is_not_special():
    res = is_special_ideal_cert(IdealHandle(F3, 1, [], ("x",)))
    assert res.status == "violation" and res.b == P("x^3-x", F3)
    assert res.sigma.verify() and res.sigma.value.is_zero()


def test_star_algebras():
    V = Variety.affine_space(QQ, 1, ("x",))
    res = is_star_algebra(V)
    assert res.status == "counterexample"
    assert res.counterexample.value == P("x^2+1")
    assert is_star_algebra(CanonicalLoc(V)).status == "yes"
    W = Variety(ideal(QQ, XY, "y-x^2"))
    assert is_star_algebra(FunctionField(W)).status == "yes"


def test_finite_coordinate_rings_are_star():
    for pts in itertools.chain.from_iterable(itertools.combinations([(0,), (1,), (2,)], r) for r in range(4)):
        V = Variety.from_points(F3, 1, list(pts))
        assert is_star_algebra(V).status == "yes"
