import pytest

from equigeom.errors import DenominatorVanishes, ImageNotInTarget, PointNotOnVariety
from equigeom.exactfield import QQ
from equigeom.ideals import IdealHandle
from equigeom.sheafdual import (
    RegularMap,
    default_sigma,
    duality_check_f,
    duality_check_phi,
    functor_law_check,
    jacobson_radical,
    naturality_check,
    section_from_fraction,
    section_is_zero,
    sections_isomorphism_check,
    spm,
    spm_structure_sections,
    stalk_at,
)
from equigeom.signature import CanonicalLoc, LocFraction, constant_signature, m_element, seed_signature, sigma_element
from equigeom.varieties import Variety, line

from _util import F2, F3, P, ideal


def _line():
    return line(F3)


def test_section_tables():
    V = _line()
    x = P("x", F3)
    alpha = sigma_element(x, 2, constant_signature(F3), 0, ())
    s = section_from_fraction(V, x, P("1", F3), alpha)
    assert s.fraction.den.value == P("x^3", F3)
    assert [F3.fmt(v) for v in s.table] == ["1", "2"]
    assert section_is_zero(section_from_fraction(V, x, P("0", F3)))
    g = P("x^2+2*x+1", F3)
    s = section_from_fraction(V, P("1", F3), g)
    assert s.table == tuple(g.eval_raw(p) for p in V.points)


def test_section_zero_criterion():
    V = _line()
    x = P("x", F3)
    assert section_is_zero(section_from_fraction(V, x, P("x^3-x", F3)))
    s = section_from_fraction(V, x, P("x-1", F3))
    assert not section_is_zero(s) and P("x-1", F3).eval_raw((2,)) == 1 and s.table[1] == 2
    W = Variety.from_points(F3, 1, [(0,), (1,)])
    assert section_is_zero(section_from_fraction(W, x, P("x-1", F3)))


def test_sections_isomorphism_on_the_line():
    V = _line()
    for h in V.all_elements():
        assert sections_isomorphism_check(V, h).passed


def test_stalks():
    V = _line()
    S = stalk_at(V, (2,))
    assert S.fraction(P("x+1", F3), P("x", F3)).residue() == 0
    with pytest.raises(DenominatorVanishes):
        stalk_at(V, (0,)).fraction(P("1", F3), P("x", F3))
    W = Variety.from_points(F3, 1, [(1,)])
    with pytest.raises(PointNotOnVariety):
        stalk_at(W, (2,))
    T = stalk_at(V, (1,))
    same, l = T.fraction(P("x", F3), P("1", F3)).equals(T.fraction(P("1", F3), P("1", F3)))
    assert same and l.eval_raw((1,)) != 0


def test_maximal_spectrum():
    X = spm(_line())
    assert [m.point for m in X.points] == [(0,), (1,), (2,)] and not X.partial
    pt = spm(Variety.from_points(F3, 2, [(1, 2)]))
    assert list(pt.points[0].ideal.generators) == [P("x-1", F3, ("x", "y")), P("y-2", F3, ("x", "y"))]
    Q = spm(Variety.affine_space(QQ, 1, ("x",)))
    assert Q.partial and len(Q.points) == 5


def test_structure_sections_invert_signature_values():
    V = _line()
    X = spm(V)
    den = m_element(seed_signature(F3), (P("x", F3),))
    frac = LocFraction(CanonicalLoc(V), P("1", F3), den)
    s = spm_structure_sections(X, X.points, frac)
    assert [str(s[m.point]) for m in X.points] == ["1", "2", "2"]
    assert spm_structure_sections(X, [], frac) == {}


def test_duality_examples():
    for V in (_line(), Variety.from_points(F3, 1, []), Variety(ideal(F3, ("x",), "x^2+2"))):
        phi, f = duality_check_phi(V), duality_check_f(V)
        assert phi.passed and f.passed
    assert duality_check_f(_line()).data["algebra_size"] == 27
    assert duality_check_f(Variety(ideal(F3, ("x",), "x^2+2"))).data["algebra_size"] == 9


def test_jacobson_radical_is_the_vanishing_ideal():
    V = Variety.from_points(F2, 2, [(0, 0), (1, 1)])
    assert jacobson_radical(V).same_ideal(V.vanishing)


def test_morphisms():
    V = _line()
    sq = RegularMap(V, V, [P("x^2", F3)])
    assert sq.pullback(P("x", F3)) == P("x^2", F3)
    assert naturality_check(sq).passed
    m = sq.spm_map(spm(V).points[2])
    assert m.same_ideal(IdealHandle(F3, 1, [P("x-1", F3)]))
    ident = RegularMap(V, V, [P("x", F3)])
    assert ident.pullback(P("x^2+1", F3)) == P("x^2+1", F3)
    assert functor_law_check(sq, ident) and functor_law_check(sq, sq)
    target = Variety.from_points(F3, 2, [(1, 2)])
    const = RegularMap(V, target, [P("1", F3), P("2", F3)])
    assert naturality_check(const).passed
    with pytest.raises(ImageNotInTarget):
        RegularMap(V, Variety.from_points(F3, 1, [(0,)]), [P("x", F3)])


def test_default_sigma_is_nowhere_zero_on_the_open():
    V = _line()
    h = P("x", F3)
    s = default_sigma(V, h)
    assert all(s.value.eval_raw(p) for p in V.points if h.eval_raw(p))
