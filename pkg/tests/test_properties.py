from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from equigeom.exactfield import GF, QQ
from equigeom.geometry import equiradical_oracle
from equigeom.ideals import IdealHandle, vanishing_ideal
from equigeom.multipoly import MultiPoly, resultant_linear
from equigeom.signature import CERTIFIED, HAS_ZERO, in_signature
from equigeom.varieties import affine_points, common_zeros

FIELDS = [GF(2), GF(3), GF(5), GF(7), GF(2, 2), GF(3, 2), GF(2, 3)]
F3 = GF(3)
settings.register_profile("equigeom", max_examples=60, deadline=None)
settings.load_profile("equigeom")


@st.composite
def field_and_elements(draw, k=3):
    F = draw(st.sampled_from(FIELDS))
    idx = st.integers(0, F.order - 1)
    return F, [F.from_index(draw(idx)) for _ in range(k)]


@st.composite
def polys(draw, field=F3, nvars=2, degree=3, max_terms=5):
    exps = st.tuples(*[st.integers(0, degree) for _ in range(nvars)]).filter(lambda e: sum(e) <= degree)
    terms = draw(st.dictionaries(exps, st.integers(1, field.order - 1 if field.is_finite else 5), max_size=max_terms))
    f = MultiPoly.zero(field, nvars)
    for e, c in terms.items():
        f = f + MultiPoly.monomial(field, nvars, e, c)
    return f


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == F.one
    assert F.pow(a, F.order) == a


@given(polys(), polys(), polys(), st.sampled_from(list(affine_points(F3, 2))))
def test_composition_commutes_with_evaluation(f, g, h, P):
    inner = (g.eval_raw(P), h.eval_raw(P))
    assert f.compose([g, h]).eval_raw(P) == f.eval_raw(inner)


@given(polys().filter(lambda f: not f.is_zero()), st.sampled_from(list(affine_points(F3, 2))),
       st.integers(1, 2))
def test_homogenisation(f, P, lam):
    H = f.homogenise()
    d = f.total_degree()
    assert H.is_homogeneous() and H.total_degree() == d
    assert H.eval_raw(P + (1,)) == f.eval_raw(P)
    scaled = tuple(F3.mul(lam, c) for c in P + (1,))
    assert H.eval_raw(scaled) == F3.mul(F3.pow(lam, d), H.eval_raw(P + (1,)))


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.integers(1, 3), st.integers(-6, 6))
def test_resultant_vanishes_exactly_at_roots(roots, lead, probe):
    T = MultiPoly.var(QQ, 1, 0)
    m = MultiPoly.const(QQ, 1, lead)
    for r in roots:
        m = m * (T - r)
    R = resultant_linear(m)
    assert R.is_homogeneous()
    assert (R.eval_raw((Fraction(probe), Fraction(1))) == 0) == (probe in roots)


@given(st.lists(polys(degree=2, max_terms=3), min_size=1, max_size=2), polys(), polys())
def test_normal_form_is_linear_and_idempotent(gens, f, g):
    I = IdealHandle(F3, 2, gens, ("x", "y"))
    nf = I.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(f + g) == nf(f) + nf(g)
    assert I.member(f - nf(f))
    assert I.member(f) == nf(f).is_zero()


@given(st.sets(st.sampled_from(list(affine_points(F3, 2)))))
def test_vanishing_ideal_cuts_out_its_points(S):
    I = vanishing_ideal(F3, 2, sorted(S))
    gens = I.groebner()
    assert set(common_zeros(F3, 2, gens)) == S


@given(st.lists(polys(degree=2, max_terms=3), min_size=1, max_size=2))
def test_galois_connection(gens):
    I = IdealHandle(F3, 2, gens, ("x", "y"))
    J = equiradical_oracle(I)
    assert all(J.member(g) for g in gens)
    Z = set(common_zeros(F3, 2, gens))
    assert set(common_zeros(F3, 2, J.groebner())) == Z
    # applying the closure twice changes nothing
    assert equiradical_oracle(J).same_ideal(J)


@given(st.sampled_from([GF(2), GF(3), GF(5)]).flatmap(lambda F: st.tuples(st.just(F), polys(F, 1, 4).filter(lambda D: not D.is_zero()))))
def test_signature_membership_matches_evaluation(data):
    F, D = data
    res = in_signature(D)
    nowhere_zero = all(not F.is_zero(D.eval_raw((c,))) for c in F.raw_elements)
    assert (res.status == CERTIFIED) == nowhere_zero
    assert (res.status == HAS_ZERO) == (not nowhere_zero)
    if nowhere_zero:
        assert res.cert.verify()
