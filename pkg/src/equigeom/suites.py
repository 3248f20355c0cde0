"""Seeded randomized property suites.

Each suite draws its cases from ``random.Random(seed)`` and checks a
property whose two sides are computed by independent routes.  A suite ends
in one of three states: pass, fail (at least one discrepancy, each with a
reproducer file) or inconclusive (no discrepancy, but some case ran out of
search budget).

Default bounds keep each suite well under a minute with the default trial
counts below.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .exactfield import GF, QQ, FieldDescriptor
from .geometry import MEMBER, NO, UNKNOWN, YES, equiradical_certificate, equiradical_oracle, has_rational_zero
from .ideals import IdealHandle, cofactor_degree, macaulay_member
from .multipoly import MultiPoly, default_names
from .sheafdual import (
    RegularMap,
    default_sigma,
    duality_check_f,
    duality_check_phi,
    functor_law_check,
    naturality_check,
    section_from_fraction,
    section_is_zero,
    sections_isomorphism_check,
)
from .signature import (
    CERTIFIED,
    SigmaElement,
    SigmaFactor,
    default_binary_normic,
    in_signature,
    is_special_ideal_cert,
    monomial_normic,
    normic_compose,
    seed_signature,
)
from .textio import format_input
from .varieties import Variety, affine_points, common_zeros

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

DEFAULT_TRIALS = {
    "nullstellensatz": 200,
    "carspe": 100,
    "carerad": 60,
    "sections": 50,
    "duality": 50,
    "groebner-oracle": 100,
}
SUITES = tuple(DEFAULT_TRIALS)
DEFAULT_SEED = 42


@dataclass
class SuiteReport:
    name: str
    trials: int
    seed: int
    checked: int = 0
    failures: list = dc_field(default_factory=list)
    unknowns: list = dc_field(default_factory=list)
    stats: dict = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.failures:
            return FAIL
        if self.unknowns:
            return INCONCLUSIVE
        return PASS

    def fail(self, reason: str, reproducer: str, **extra):
        self.failures.append({"reason": reason, "reproducer": reproducer, **extra})

    def count(self, key: str, by: int = 1):
        self.stats[key] = self.stats.get(key, 0) + by

    def to_json(self) -> dict:
        return {"suite": self.name, "status": self.status, "trials": self.trials, "seed": self.seed,
                "checked": self.checked, "failures": self.failures, "unknowns": self.unknowns,
                "stats": dict(sorted(self.stats.items()))}


# -- random generators ----------------------------------------------------------


def random_poly(rng: random.Random, field: FieldDescriptor, nvars: int, degree: int,
                max_terms: int = 4, coeff_range: int = 3) -> MultiPoly:
    monos = [e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = rng.choice(monos)
        if field.is_finite:
            c = rng.choice(field.raw_elements)
        else:
            c = field.coerce(rng.randint(-coeff_range, coeff_range))
        terms[e] = field.add(terms.get(e, field.zero), c)
    return MultiPoly(field, nvars, terms)


def random_ideal(rng, field, nvars, degree, max_gens, names=None) -> IdealHandle:
    gens = []
    while not gens:
        gens = [g for g in (random_poly(rng, field, nvars, degree) for _ in range(rng.randint(1, max_gens)))
                if not g.is_zero()]
    return IdealHandle(field, nvars, gens, names or default_names(nvars))


def random_subset(rng, items):
    return [x for x in items if rng.random() < 0.5]


def _repro(I: IdealHandle, extra: str = "", points=None) -> str:
    text = format_input(I.field, I.names, I.generators, points)
    return text + (f"# {extra}\n" if extra else "")


# -- suites ---------------------------------------------------------------------


def suite_nullstellensatz(trials: int, seed: int, **_) -> SuiteReport:
    """No rational zero <=> the composed D = N(gens) is nowhere zero and lies in I."""
    rep = SuiteReport("nullstellensatz", trials, seed)
    rng = random.Random(seed)
    for i in range(trials):
        F = GF(2) if i % 2 == 0 else GF(3)
        n = rng.randint(1, 2)
        I = random_ideal(rng, F, n, 3, 3)
        gens = [g for g in I.generators if not g.is_zero()]
        zeros = common_zeros(F, n, gens)
        res = has_rational_zero(I)
        N = monomial_normic(F) if len(gens) == 1 else normic_compose(default_binary_normic(F), len(gens))
        D = N.poly.compose(gens)
        d_nowhere_zero = all(not F.is_zero(D.eval_raw(P)) for P in affine_points(F, n))
        d_in_I = I.member(D)
        rep.checked += 1
        rep.count("no_zero" if not zeros else "has_zero")
        ok = True
        if (res.status == NO) != (not zeros) or (res.status == YES) != bool(zeros):
            ok = False
        if d_nowhere_zero != (not zeros) or not d_in_I:
            ok = False
        if res.status == NO and not (res.cert.verify() and I.member(res.cert.D)):
            ok = False
        if res.status == YES and tuple(c.raw for c in res.point) not in set(zeros):
            ok = False
        if not ok:
            rep.fail("zero test and signature construction disagree", _repro(I),
                     answer=res.status, zeros=len(zeros))
    return rep


def suite_carspe(trials: int, seed: int, **_) -> SuiteReport:
    """Signature membership by certificate versus enumeration; special ideals versus the oracle."""
    rep = SuiteReport("carspe", trials, seed)
    rng = random.Random(seed)
    for i in range(trials):
        F = GF(2) if i % 2 == 0 else GF(3)
        n = rng.randint(1, 2)
        D = random_poly(rng, F, n, 3)
        while D.is_zero():
            D = random_poly(rng, F, n, 3)
        res = in_signature(D)
        nowhere = all(not F.is_zero(D.eval_raw(P)) for P in affine_points(F, n))
        rep.checked += 1
        ok = (res.status == CERTIFIED) == nowhere and (res.cert is None or res.cert.verify())
        # D(a) is a unit in k[V] for coordinate tuples a on a random V in F^1
        V = Variety.from_points(F, 1, [(c,) for c in random_subset(rng, F.raw_elements)])
        elems = list(V.all_elements())
        for _ in range(3):
            args = [rng.choice(elems).rep for _ in range(n)]
            val = V.elem(D.compose(args))
            if nowhere and not val.is_unit():
                ok = False
        if not ok:
            I = IdealHandle(F, n, [D], default_names(n))
            rep.fail("signature certificate disagrees with enumeration", _repro(I, "polynomial D"))
        # special ideals in one variable
        I = random_ideal(rng, F, 1, 3, 2)
        sp = is_special_ideal_cert(I)
        oracle = equiradical_oracle(I)
        special = I.contains_ideal(oracle)
        ok = (sp.status == "special") == special
        if sp.status == "violation":
            if sp.sigma is None:
                rep.unknowns.append({"reason": "no witness within the bound", "reproducer": _repro(I)})
            elif not (sp.sigma.verify() and sp.sigma.a == sp.b and I.member(sp.sigma.value) and not I.member(sp.b)):
                ok = False
        rep.count("special" if special else "not_special")
        if not ok:
            rep.fail("special-ideal answer disagrees with the oracle", _repro(I), answer=sp.status)
    return rep


def suite_carerad(trials: int, seed: int, degree_bound: int = 4, **_) -> SuiteReport:
    """Equiradical membership: certificates versus the vanishing-ideal oracle."""
    rep = SuiteReport("carerad", trials, seed)
    rep.stats["degree_bound"] = degree_bound
    rng = random.Random(seed)
    for i in range(trials):
        F = GF(2) if i % 2 == 0 else GF(3)
        n = 1 if i % 3 else 2
        I = random_ideal(rng, F, n, 2, 2)
        J = equiradical_oracle(I)
        if rng.random() < 0.5:
            a = random_poly(rng, F, n, 2)
        else:
            # bias toward members of the equiradical so both answers are exercised
            a = random_poly(rng, F, n, 1) * J.groebner()[0]
        rep.checked += 1
        truth = J.member(a)
        cert = equiradical_certificate(I, a, degree_bound)
        rep.count(cert.status)
        repro = _repro(I, f"a = {a.to_str(I.names)}")
        if cert.status == UNKNOWN:
            rep.unknowns.append({"reason": cert.note, "reproducer": repro})
            continue
        if (cert.status == MEMBER) != truth:
            rep.fail("certificate contradicts the oracle", repro, answer=cert.status)
        elif not cert.verify(I):
            rep.fail("certificate does not re-verify", repro, answer=cert.status)
    return rep


def _small_varieties(rng, count):
    """All subsets of F3^1 followed by random subsets of F2^2."""
    out = []
    F3 = GF(3)
    for r in range(4):
        for S in itertools.combinations(F3.raw_elements, r):
            out.append(Variety.from_points(F3, 1, [(c,) for c in S]))
    F2 = GF(2)
    plane = list(affine_points(F2, 2))
    while len(out) < count:
        out.append(Variety.from_points(F2, 2, random_subset(rng, plane)))
    return out


def suite_sections(trials: int, seed: int, **_) -> SuiteReport:
    """Sections of basic opens versus one-element localisations."""
    rep = SuiteReport("sections", trials, seed)
    rng = random.Random(seed)
    F3, F2 = GF(3), GF(2)
    cases = [Variety.from_points(F3, 1, [(c,) for c in S])
             for r in range(4) for S in itertools.combinations(F3.raw_elements, r)]
    plane = list(affine_points(F2, 2))
    cases += [Variety.from_points(F2, 2, list(S)) for r in range(5) for S in itertools.combinations(plane, r)]
    for V in cases:
        for h in V.all_elements():
            r = sections_isomorphism_check(V, h)
            rep.checked += 1
            if not r.passed:
                rep.fail("localisation is not isomorphic to sections", _repro(V.vanishing, f"h = {h}", V.points))
    for _ in range(trials):
        V = rng.choice(cases)
        elems = list(V.all_elements())
        g, h = rng.choice(elems), rng.choice(elems)
        alpha = default_sigma(V, h.rep)
        if rng.random() < 0.5:
            extra = SigmaElement(h.rep, [SigmaFactor(rng.randint(0, 2), seed_signature(V.field), rng.randint(0, 2),
                                                     (rng.choice(elems).rep,))])
            alpha = alpha * extra
        s = section_from_fraction(V, h, g, alpha)
        rep.checked += 1
        table_zero = all(V.field.is_zero(v) for v in s.table)
        if table_zero != (g * h).is_zero() or section_is_zero(s) != table_zero:
            rep.fail("zero criterion disagrees with the table", _repro(V.vanishing, f"g = {g}, h = {h}", V.points))
    return rep


def suite_duality(trials: int, seed: int, **_) -> SuiteReport:
    """phi_V and f_A are isomorphisms; naturality and functor laws for random maps."""
    rep = SuiteReport("duality", trials, seed)
    rng = random.Random(seed)
    varieties = _small_varieties(rng, max(trials, 8))
    for V in varieties[:max(trials, 8)]:
        rep.checked += 1
        phi, f = duality_check_phi(V), duality_check_f(V)
        if not (phi.passed and f.passed):
            rep.fail("duality check failed", _repro(V.vanishing, "", V.points), phi=phi.passed, f=f.passed)
    for _ in range(trials):
        F = rng.choice([GF(2), GF(3)])
        n1, n2, n3 = (rng.randint(1, 2) for _ in range(3))
        V = Variety.from_points(F, n1, random_subset(rng, list(affine_points(F, n1))))
        comps = [random_poly(rng, F, n1, 2) for _ in range(n2)]
        W = Variety.from_points(F, n2, sorted({tuple(c.eval_raw(P) for c in comps) for P in V.points}))
        comps2 = [random_poly(rng, F, n2, 2) for _ in range(n3)]
        U = Variety.from_points(F, n3, sorted({tuple(c.eval_raw(Q) for c in comps2) for Q in W.points}))
        phi, psi = RegularMap(V, W, comps), RegularMap(W, U, comps2)
        rep.checked += 1
        if not (naturality_check(phi).passed and naturality_check(psi).passed and functor_law_check(phi, psi)):
            rep.fail("naturality or functor law failed", _repro(V.vanishing, "source variety", V.points),
                     map=[c.to_str(V.names) for c in comps])
    return rep


def suite_groebner_oracle(trials: int, seed: int, degree: int = 6, **_) -> SuiteReport:
    """Buchberger normal forms versus the Macaulay-matrix oracle."""
    rep = SuiteReport("groebner-oracle", trials, seed)
    rng = random.Random(seed)
    for i in range(trials):
        F = GF(3) if i % 2 == 0 else QQ
        n = rng.randint(1, 3)
        I = random_ideal(rng, F, n, 2 if n == 3 else 3, 2)
        if rng.random() < 0.5:
            # a member built from random multipliers
            f = MultiPoly.zero(F, n)
            for g in I.generators:
                f = f + random_poly(rng, F, n, 1) * g
            if f.total_degree() > degree:
                f = I.generators[0]
        else:
            f = random_poly(rng, F, n, 3)
        rep.checked += 1
        member = I.member(f)
        if f.total_degree() > degree:
            continue
        mac = macaulay_member(f, I, degree)
        ok = True
        if mac is True and not member:
            ok = False
        if member:
            cof = I.lift(f)
            if cof is None:
                ok = False
            else:
                total = max(f.total_degree(), cofactor_degree(cof, I.generators))
                if total <= degree and mac is not True:
                    ok = False
                rep.count("member")
        else:
            rep.count("non_member")
        if not ok:
            rep.fail("membership engines disagree", _repro(I, f"f = {f.to_str(I.names)}"),
                     buchberger=member, macaulay=mac)
    return rep


_RUNNERS = {
    "nullstellensatz": suite_nullstellensatz,
    "carspe": suite_carspe,
    "carerad": suite_carerad,
    "sections": suite_sections,
    "duality": suite_duality,
    "groebner-oracle": suite_groebner_oracle,
}


def run_suite(name: str, trials: int | None = None, seed: int = DEFAULT_SEED, **options) -> SuiteReport:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if trials is None:
        trials = DEFAULT_TRIALS[name]
    if trials < 0:
        raise ValueError("trials must be non-negative")
    return _RUNNERS[name](trials, seed, **options)
