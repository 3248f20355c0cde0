"""Regular functions on basic opens, stalks, and the maximal spectrum duality.

Over a finite field every subset of a finite algebraic set is closed, so the
induced topology is discrete and sections on D_V(h) are arbitrary functions
D_V(h) -> k.  The checks below therefore exercise the localisation arithmetic
(fractions with denominators in the multiplicative set of h), not topology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import CertificateInvalid, DenominatorVanishes, ImageNotInTarget, PointNotOnVariety, ResourceLimit
from .exactfield import FieldValue
from .geometry import SpmPoint
from .ideals import IdealHandle, intersect
from .multipoly import ExponentOrder, MultiPoly
from .signature import (
    LocFraction,
    OneElementLoc,
    SigmaElement,
    SigmaFactor,
    constant_signature,
    seed_signature,
)
from .varieties import CoordRingElem, Variety

TABLE_CAP = 10 ** 4


def _pt(V: Variety, P) -> list[str]:
    return [V.field.fmt(c) for c in P]


class BasicOpen:
    """D_V(h) = {P in V : h(P) != 0}."""

    def __init__(self, variety: Variety, h):
        self.variety = variety
        self.h = variety.elem(h)

    @property
    def points(self) -> tuple:
        F = self.variety.field
        return tuple(P for P in self.variety.points if not F.is_zero(self.h.eval_raw(P)))


class RegularSection:
    """g / (h * alpha) on D_V(h), with its function table over a finite field."""

    def __init__(self, open_: BasicOpen, fraction: LocFraction):
        self.open = open_
        self.fraction = fraction
        self._table = None

    @property
    def table(self) -> tuple:
        if self._table is None:
            F = self.open.variety.field
            out = []
            for P in self.open.points:
                d = self.fraction.den.value.eval_raw(P)
                if F.is_zero(d):
                    raise CertificateInvalid("denominator vanishes on the open set")
                out.append(F.div(self.fraction.num.eval_raw(P), d))
            self._table = tuple(out)
        return self._table

    def to_json(self) -> dict:
        V = self.open.variety
        out = {"fraction": self.fraction.to_json(V.names)}
        if V.has_point_list:
            out["table"] = [[_pt(V, P), V.field.fmt(v)] for P, v in zip(self.open.points, self.table)]
        return out


def default_sigma(V: Variety, h: MultiPoly) -> SigmaElement:
    """h^1 * D#(0, h) for the seed signature polynomial D."""
    return SigmaElement(h, [SigmaFactor(1, seed_signature(V.field), 1, (MultiPoly.zero(V.field, V.nvars),))])


def section_from_fraction(V: Variety, h, g, alpha: SigmaElement | None = None) -> RegularSection:
    """The section g / (h alpha) on D_V(h)."""
    h = V.elem(h).rep
    g = V.elem(g).rep
    if alpha is None:
        alpha = SigmaElement(h, [SigmaFactor(0, constant_signature(V.field), 0, ())])
    if alpha.a != h or not alpha.verify():
        raise CertificateInvalid("alpha is not a verified element of the multiplicative set of h")
    hfactor = SigmaElement(h, [SigmaFactor(1, constant_signature(V.field), 0, ())])
    ambient = OneElementLoc(V, h)
    U = BasicOpen(V, h)
    if V.has_point_list:
        F = V.field
        for P in U.points:
            if F.is_zero(alpha.value.eval_raw(P)):
                raise CertificateInvalid("alpha vanishes on D_V(h)")
    return RegularSection(U, LocFraction(ambient, g, alpha * hfactor))


def section_is_zero(s: RegularSection) -> bool:
    """g h = 0 in k[V]; over a finite field cross-checked against the table."""
    V = s.open.variety
    crit = V.elem(s.fraction.num * s.open.h.rep).is_zero()
    if V.has_point_list:
        table_zero = all(V.field.is_zero(v) for v in s.table)
        if table_zero != crit:
            raise AssertionError("zero criterion disagrees with the function table")
    return crit


@dataclass
class Report:
    passed: bool
    data: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"passed": self.passed, **self.data}


def sections_isomorphism_check(V: Variety, h, sample_seed: int = 0) -> Report:
    """k[V] localised at h -> Gamma(D_V(h)) is bijective (finite k)."""
    F = V.field
    h = V.elem(h)
    U = BasicOpen(V, h)
    D = U.points
    ntables = F.order ** len(D)
    sampled = ntables > TABLE_CAP
    # injectivity: classes of g/1 are decided by g h = 0 in k[V]; tables by evaluation on D
    classes = {}
    injective = True
    for g in V.all_elements():
        key = (g * h).values()
        table = tuple(g.eval_raw(P) for P in D)
        if key in classes and classes[key] != table:
            injective = False
        classes.setdefault(key, table)
    images = set(classes.values())
    if len(images) != len(classes):
        injective = False
    # surjectivity: an explicit preimage for every table
    alpha = default_sigma(V, h.rep)
    witnesses = []
    surjective = True
    if sampled:
        import random
        rng = random.Random(sample_seed)
        tables = [tuple(rng.choice(F.raw_elements) for _ in D) for _ in range(200)]
    else:
        tables = itertools.product(F.raw_elements, repeat=len(D))
    for t in tables:
        target = dict(zip(D, t))
        num_table = {}
        for P in V.points:
            if P in target:
                den = F.mul(h.eval_raw(P), alpha.value.eval_raw(P))
                num_table[P] = F.mul(target[P], den)
        g = V.interpolate(num_table)
        s = section_from_fraction(V, h, g, alpha)
        if s.table != tuple(t):
            surjective = False
        witnesses.append({"table": [F.fmt(v) for v in t], "numerator": g.to_str(),
                          "denominator": s.fraction.den.value.to_str(V.names)})
    data = {
        "open_points": [_pt(V, P) for P in D],
        "tables": ntables,
        "classes": len(classes),
        "injective": injective,
        "surjective": surjective,
        "sampled": sampled,
        "topology": "discrete (finite algebraic set)",
        "witnesses": witnesses,
    }
    return Report(injective and surjective and (sampled or len(classes) == ntables), data)


# -- stalks -------------------------------------------------------------------


class StalkElem:
    def __init__(self, stalk: Stalk, g: MultiPoly, h: MultiPoly):
        self.stalk = stalk
        self.g = g
        self.h = h

    def residue(self) -> FieldValue:
        F = self.stalk.variety.field
        P = self.stalk.point
        return FieldValue(F, F.div(self.g.eval_raw(P), self.h.eval_raw(P)))

    def equals(self, other: StalkElem):
        """(equal, l) with l(P) != 0 and l (g h' - g' h) = 0 in k[V]; l is None when unequal."""
        V = self.stalk.variety
        F = V.field
        diff = self.g * other.h - other.g * self.h
        P = self.stalk.point
        if V.has_point_list:
            if not F.is_zero(diff.eval_raw(P)):
                return False, None
            l = V.indicator(P)
        else:
            if not V.elem(diff).is_zero():
                return False, None
            l = V.one()
        # independent confirmation through the Groebner engine
        if not V.vanishing.member(l.rep * diff) or F.is_zero(l.eval_raw(P)):
            raise AssertionError("stalk equality witness failed")
        return True, l


class Stalk:
    """The local ring at P: fractions g/h with h(P) != 0."""

    def __init__(self, variety: Variety, point):
        F = variety.field
        self.variety = variety
        self.point = tuple(F.coerce(c) for c in point)
        if not variety.contains_point(self.point):
            raise PointNotOnVariety(f"{[F.fmt(c) for c in self.point]} is not on V")

    def fraction(self, g, h) -> StalkElem:
        g = self.variety.elem(g).rep
        h = self.variety.elem(h).rep
        if self.variety.field.is_zero(h.eval_raw(self.point)):
            raise DenominatorVanishes("denominator vanishes at the point")
        return StalkElem(self, g, h)


def stalk_at(V: Variety, P) -> Stalk:
    return Stalk(V, P)


# -- the maximal spectrum ---------------------------------------------------------


class MaxSpectrum:
    """Spm(k[V]_M) presented through V: one special maximal ideal per point."""

    def __init__(self, variety: Variety, points: list[SpmPoint], partial: bool = False):
        self.variety = variety
        self.points = points
        self.partial = partial

    def basic_open(self, f) -> list[SpmPoint]:
        """D(f) = {m : f not in m}, decided by membership."""
        f = self.variety.elem(f).rep
        return [m for m in self.points if not m.contains(f)]

    def to_json(self) -> dict:
        return {"points": [m.to_json(self.variety.names) for m in self.points], "partial": self.partial}


def spm(V: Variety, sample: int = 5) -> MaxSpectrum:
    F = V.field
    if V.has_point_list:
        return MaxSpectrum(V, [SpmPoint(F, P, V.names) for P in V.points])
    from .geometry import zero_set
    zs = zero_set(V.vanishing)
    pts = [tuple(c.raw for c in P) for P in zs.points[:sample]]
    return MaxSpectrum(V, [SpmPoint(F, P, V.names) for P in pts], partial=True)


def spm_homeomorphism_check(V: Variety) -> Report:
    """P -> m_P is a bijection onto the special maximal ideals over I(V), matching basic opens."""
    from .varieties import affine_points
    F = V.field
    X = spm(V)
    I = V.vanishing
    # every m_P contains I(V), distinct points give distinct ideals
    contains = all(all(m.contains(g) for g in I.generators) for m in X.points)
    distinct = all(not a.ideal.same_ideal(b.ideal) for a, b in itertools.combinations(X.points, 2))
    # surjective: a point of k^n whose ideal contains I(V) lies on V
    onto = True
    pts = set(V.points)
    for Q in affine_points(F, V.nvars):
        m = SpmPoint(F, Q)
        if all(m.contains(g) for g in I.generators) != (Q in pts):
            onto = False
            break
    # basic opens correspond in both directions
    opens_ok = True
    for f in V.all_elements():
        via_ideals = sorted(m.point for m in X.basic_open(f))
        via_values = sorted(P for P in V.points if not F.is_zero(f.eval_raw(P)))
        if via_ideals != via_values:
            opens_ok = False
            break
    return Report(contains and distinct and onto and opens_ok,
                  {"points": len(X.points), "contains_ideal": contains, "injective": distinct,
                   "surjective": onto, "basic_opens_match": opens_ok,
                   "topology": "discrete (finite algebraic set)"})


def spm_structure_sections(X: MaxSpectrum, U: list[SpmPoint], source) -> dict:
    """Section on U from an element or fraction: m -> [u]/[v] in A/m = k."""
    V = X.variety
    out = {}
    for m in U:
        if isinstance(source, LocFraction):
            num = m.residue(source.num)
            den = m.residue(source.den.value)
            if den.is_zero():
                raise DenominatorVanishes("denominator lies in the maximal ideal")
            out[m.point] = num / den
        else:
            out[m.point] = m.residue(V.elem(source))
    return out


def duality_check_phi(V: Variety) -> Report:
    """phi_V: P -> m_P is a homeomorphism and its comorphism is bijective on every basic open."""
    F = V.field
    homeo = spm_homeomorphism_check(V)
    X = spm(V)
    sharp_ok = True
    opens_checked = 0
    for f in V.all_elements():
        U = X.basic_open(f)
        D = [m.point for m in U]
        ntables = F.order ** len(D)
        if ntables > TABLE_CAP:
            raise ResourceLimit("too many sections to enumerate")
        alpha = default_sigma(V, f.rep)
        images = set()
        for t in itertools.product(F.raw_elements, repeat=len(D)):
            # Spm-side section from a fraction g / (f alpha), valued in the residue fields
            target = dict(zip(D, t))
            num = V.interpolate({P: F.mul(v, F.mul(f.eval_raw(P), alpha.value.eval_raw(P)))
                                 for P, v in target.items()})
            frac = LocFraction(OneElementLoc(V, f.rep), num,
                               alpha * SigmaElement(f.rep, [SigmaFactor(1, constant_signature(F), 0, ())]))
            s = spm_structure_sections(X, U, frac)
            pulled = tuple(s[m.point].raw for m in U)
            if pulled != tuple(t):
                sharp_ok = False
            images.add(pulled)
        if len(images) != ntables:
            sharp_ok = False
        opens_checked += 1
    return Report(homeo.passed and sharp_ok, {"homeomorphism": homeo.to_json(),
                                              "comorphism_bijective": sharp_ok,
                                              "basic_opens": opens_checked})


def jacobson_radical(V: Variety) -> IdealHandle:
    """Intersection of the ideals m_P over the points of V, in k[x]."""
    F, n = V.field, V.nvars
    result = IdealHandle(F, n, [MultiPoly.one(F, n)], V.names)
    for P in V.points:
        result = intersect(result, SpmPoint(F, P, V.names).ideal)
    return result


def duality_check_f(V: Variety) -> Report:
    """f_A: A -> Gamma(Spm A) is injective (radical zero) and surjective (explicit preimages)."""
    F = V.field
    X = spm(V)
    rad = jacobson_radical(V)
    radical_zero = rad.same_ideal(V.vanishing)
    seen = {}
    injective = True
    for a in V.all_elements():
        img = tuple(m.residue(a).raw for m in X.points)
        if img in seen:
            injective = False
        seen[img] = a
    surjective = True
    for t in itertools.product(F.raw_elements, repeat=len(X.points)):
        pre = V.interpolate(list(t))
        if tuple(m.residue(pre).raw for m in X.points) != tuple(t):
            surjective = False
    ok = radical_zero and injective and surjective and len(seen) == F.order ** len(X.points)
    return Report(ok, {"algebra_size": len(seen), "jacobson_radical_zero": radical_zero,
                       "injective": injective, "surjective": surjective})


# -- morphisms ----------------------------------------------------------------


class RegularMap:
    """f = (f1..fm): V -> W with f(V) inside W."""

    def __init__(self, V: Variety, W: Variety, components):
        if len(components) != W.nvars:
            raise ImageNotInTarget("component count differs from the target dimension")
        self.V = V
        self.W = W
        self.components = [V.elem(c).rep for c in components]
        F = V.field
        if V.has_point_list and W.has_point_list:
            for P in V.points:
                if not W.contains_point(self.apply(P)):
                    raise ImageNotInTarget(f"image of {[F.fmt(c) for c in P]} is not on W")
        else:
            for g in W.vanishing.generators:
                if not V.elem(self.pullback(g)).is_zero():
                    raise ImageNotInTarget(f"{g} does not pull back into the ideal of V")

    def apply(self, P):
        return tuple(c.eval_raw(P) for c in self.components)

    def pullback(self, g) -> MultiPoly:
        """k[W] -> k[V]: g -> g o f."""
        if isinstance(g, CoordRingElem):
            g = g.rep
        return g.compose(self.components)

    def spm_map(self, m: SpmPoint) -> IdealHandle:
        """The contraction of m_P along the pullback, computed by elimination."""
        V, W = self.V, self.W
        F, n, k = V.field, V.nvars, W.nvars
        xs = list(range(n))
        ys = list(range(n, n + k))
        gens = [g.embed(n + k, xs) for g in m.ideal.generators]
        for j, c in enumerate(self.components):
            gens.append(MultiPoly.var(F, n + k, n + j) - c.embed(n + k, xs))
        order = ExponentOrder("lex", tuple(xs + ys))
        from .ideals import buchberger
        gb = buchberger(gens, order)
        kept = [MultiPoly(F, k, {e[n:]: c for e, c in g.terms.items()})
                for g in gb if all(g.degree_in(i) <= 0 for i in xs)]
        return IdealHandle(F, k, kept, W.names)

    def compose(self, other: RegularMap) -> RegularMap:
        """other o self."""
        return RegularMap(self.V, other.W, [c.compose(self.components) for c in other.components])


def morphism_pullback(V: Variety, W: Variety, components) -> RegularMap:
    return RegularMap(V, W, components)


def naturality_check(f: RegularMap) -> Report:
    """phi_W(f(P)) = (K k[f])(phi_V(P)) for every point P of V."""
    F = f.V.field
    ok = True
    for P in f.V.points:
        left = SpmPoint(F, f.apply(P), f.W.names).ideal
        right = f.spm_map(SpmPoint(F, P, f.V.names))
        if not left.same_ideal(right):
            ok = False
            break
    return Report(ok, {"points": len(f.V.points)})


def functor_law_check(f: RegularMap, g: RegularMap) -> bool:
    """k[g o f] = k[f] o k[g] on the coordinate functions of the final target."""
    gf = f.compose(g)
    for y in MultiPoly.gens(g.W.field, g.W.nvars):
        lhs = f.V.elem(gf.pullback(y))
        rhs = f.V.elem(f.pullback(g.pullback(y)))
        if not lhs == rhs:
            return False
    return True
