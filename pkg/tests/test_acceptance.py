"""The eight acceptance criteria, each printing one PASS/FAIL line."""

import itertools
import random
import time

from equigeom.exactfield import QQ
from equigeom.geometry import MEMBER, NOT_MEMBER, equiradical_certificate, equiradical_oracle
from equigeom.sheafdual import (
    RegularMap,
    duality_check_f,
    duality_check_phi,
    naturality_check,
    sections_isomorphism_check,
)
from equigeom.signature import (
    CanonicalLoc,
    LocFraction,
    in_coordinate_image,
    is_special_ideal_cert,
    is_star_algebra,
    m_element,
    normic_compose,
    normic_from_galois,
    seed_signature,
)
from equigeom.suites import PASS, random_poly, random_subset, run_suite
from equigeom.varieties import Variety, affine_points

from _util import F2, F3, F5, P, ideal


def _only_trivial_zero(N) -> bool:
    F, n = N.field, N.arity
    origin = (F.zero,) * n
    return all(F.is_zero(N.poly.eval_raw(pt)) == (pt == origin) for pt in affine_points(F, n))


def test_normic_forms(criterion):
    start = time.perf_counter()
    checked = 0
    ok = True
    for F in (F2, F3, F5):
        N = normic_from_galois(F, 2)
        for arity in (2, 3, 4):
            M = normic_compose(N, arity)
            ok &= M.verify() and _only_trivial_zero(M) and M.poly.is_homogeneous()
            checked += 1
    N3 = normic_from_galois(F3, 2).poly
    c = N3.coeff((2, 0))
    ok &= not F3.is_zero(c.raw) and N3 == P("x^2+y^2", F3, ("x", "y")).scale(c)
    elapsed = time.perf_counter() - start
    criterion(1, "normic forms over GF(2), GF(3), GF(5) with compositions up to 4 variables",
              ok and elapsed < 1.0, f"{checked} forms, {elapsed:.2f}s")


def test_nullstellensatz_suite(criterion):
    start = time.perf_counter()
    rep = run_suite("nullstellensatz", trials=200, seed=42)
    elapsed = time.perf_counter() - start
    criterion(2, "no rational zero iff a signature element lies in the ideal",
              rep.status == PASS and rep.checked == 200 and elapsed < 30,
              f"{rep.checked} ideals, {len(rep.failures)} discrepancies, {elapsed:.1f}s")


def test_equiradical_certificates(criterion):
    rep = run_suite("carerad", seed=42, degree_bound=4)
    sound = rep.status == PASS
    curated = []
    for F, no_zero in ((F3, "x^2+1"), (F5, "x^2+2")):
        curated += [(F, "(x-1)^2", "x-1"), (F, no_zero, "1"), (F, "x^2-1", "x-1")]
    curated.append((F5, "x^2+1", "1"))
    agree = 0
    for F, gen, a_text in curated:
        I = ideal(F, ("x",), gen)
        a = P(a_text, F)
        truth = equiradical_oracle(I).member(a)
        cert = equiradical_certificate(I, a, 4)
        if cert.status in (MEMBER, NOT_MEMBER) and (cert.status == MEMBER) == truth and cert.verify(I):
            agree += 1
    criterion(3, "equiradical certificates are sound and agree with the oracle",
              sound and agree == len(curated),
              f"suite {rep.status} on {rep.checked} cases, curated {agree}/{len(curated)}")


def _subsets_of_line(F):
    return [Variety.from_points(F, 1, [(c,) for c in S])
            for r in range(F.order + 1) for S in itertools.combinations(F.raw_elements, r)]


def test_sections_of_basic_opens(criterion):
    start = time.perf_counter()
    line = Variety.affine_space(F3, 1, ("x",))
    all_h = list(line.all_elements())
    checked = 0
    ok = len(all_h) == 27
    for V in _subsets_of_line(F3):
        for h in all_h:
            ok &= sections_isomorphism_check(V, h.rep).passed
            checked += 1
    elapsed = time.perf_counter() - start
    criterion(4, "localisation at h is isomorphic to sections over the basic open",
              ok and checked == 8 * 27 and elapsed < 10, f"{checked} pairs, {elapsed:.2f}s")


def test_duality(criterion):
    rng = random.Random(2024)
    plane = list(affine_points(F2, 2))
    varieties = _subsets_of_line(F3) + [Variety.from_points(F2, 2, random_subset(rng, plane)) for _ in range(20)]
    ok = True
    for V in varieties:
        phi, f = duality_check_phi(V), duality_check_f(V)
        ok &= phi.passed and f.passed and f.data["jacobson_radical_zero"]
    maps = 0
    for _ in range(20):
        F = rng.choice([F2, F3])
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        V = Variety.from_points(F, n1, random_subset(rng, list(affine_points(F, n1))))
        comps = [random_poly(rng, F, n1, 2) for _ in range(n2)]
        W = Variety.from_points(F, n2, sorted({tuple(c.eval_raw(pt) for c in comps) for pt in V.points}))
        ok &= naturality_check(RegularMap(V, W, comps)).passed
        maps += 1
    criterion(5, "maximal spectrum and global sections are mutually inverse",
              ok, f"{len(varieties)} varieties, {maps} maps")


def test_groebner_cross_validation(criterion):
    start = time.perf_counter()
    rep = run_suite("groebner-oracle", trials=100, seed=42, degree=6)
    elapsed = time.perf_counter() - start
    criterion(6, "Buchberger and Macaulay membership agree",
              rep.status == PASS and rep.checked == 100 and elapsed < 60,
              f"{rep.checked} queries, {len(rep.failures)} contradictions, {elapsed:.1f}s")


def test_star_algebras_over_the_rationals(criterion):
    V = Variety.affine_space(QQ, 1, ("x",))
    A = CanonicalLoc(V)
    den = m_element(seed_signature(QQ), (P("x"),))
    inv = LocFraction(A, P("1"), den)
    in_image, _ = in_coordinate_image(inv)
    star_poly = is_star_algebra(V)
    star_loc = is_star_algebra(A)
    ok = (den.verify() and den.value == P("x^2+1") and not in_image
          and star_poly.status == "counterexample" and star_poly.counterexample.value == P("x^2+1")
          and star_loc.status == "yes")
    criterion(7, "1/(x^2+1) is a global regular function outside QQ[x]", ok,
              f"QQ[x]: {star_poly.status}, localisation: {star_loc.status}")


def test_special_ideals(criterion):
    I = ideal(F3, ("x",), "(x-1)^2")
    res = is_special_ideal_cert(I)
    sigma = res.sigma
    violation = (res.status == "violation" and res.b == P("x-1", F3) and sigma is not None and sigma.verify()
                 and sigma.value == P("(x-1)^3", F3) and I.member(sigma.value) and not I.member(res.b))
    J = ideal(F3, ("x",), "x^2-1")
    res2 = is_special_ideal_cert(J)
    special = res2.status == "special" and res2.equiradical.same_ideal(J) and equiradical_oracle(J).same_ideal(J)
    criterion(8, "special-ideal test gives a violation witness and recognises special ideals",
              violation and special, f"((x-1)^2): {res.status}, (x^2-1): {res2.status}")

