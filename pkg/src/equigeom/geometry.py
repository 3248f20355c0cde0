"""Zero sets, vanishing ideals and the equiradical, points versus special maximal ideals."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import itertools
from fractions import Fraction

from .errors import NotSpecialMaximal, ZeroFunction
from .exactfield import FieldDescriptor, FieldValue
from .ideals import IdealHandle, macaulay_member, cofactor_degree, vanishing_ideal
from .multipoly import MultiPoly, rational_roots
from .signature import (
    DEFAULT_HEIGHT,
    CERTIFIED,
    SigmaElement,
    SignatureCert,
    CONSTANT,
    _rational_zero_search,
    in_signature,
    rationals_by_height,
    search_sigma,
    signature_from_no_common_zero,
)
from .varieties import CoordRingElem, Variety, common_zeros

YES, NO, UNKNOWN = "yes", "no", "unknown"
MEMBER, NOT_MEMBER = "member", "not_member"


def _fmt_point(P) -> list[str]:
    return [str(c) for c in P]


# -- points and special maximal ideals -------------------------------------------


class SpmPoint:
    """The special maximal ideal (x1 - a1, ..., xn - an) of a rational point."""

    def __init__(self, field: FieldDescriptor, point, names=None):
        self.field = field
        self.point = tuple(field.coerce(c) for c in point)
        n = len(self.point)
        xs = MultiPoly.gens(field, n)
        gens = [x - FieldValue(field, c) for x, c in zip(xs, self.point)]
        self.ideal = IdealHandle(field, n, gens, names)

    @property
    def nvars(self) -> int:
        return len(self.point)

    def contains(self, f: MultiPoly) -> bool:
        """Membership through the Groebner engine, not through evaluation."""
        if isinstance(f, CoordRingElem):
            f = f.rep
        return self.ideal.member(f)

    def residue(self, f) -> FieldValue:
        """Image of f under A -> A/m = k: the constant normal form modulo m."""
        if isinstance(f, CoordRingElem):
            f = f.rep
        r = self.ideal.normal_form(f)
        return FieldValue(self.field, r.terms.get((0,) * self.nvars, self.field.zero))

    def values(self) -> tuple[FieldValue, ...]:
        return tuple(FieldValue(self.field, c) for c in self.point)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpmPoint) and other.field == self.field and other.point == self.point

    def __hash__(self) -> int:
        return hash((self.field, self.point))

    def __repr__(self) -> str:
        return f"SpmPoint({self.ideal})"

    def to_json(self, names=None) -> dict:
        return {"point": _fmt_point(self.values()),
                "ideal": [g.to_str(names or self.ideal.names) for g in self.ideal.generators]}


def point_ideal_dictionary(field: FieldDescriptor, point, names=None) -> SpmPoint:
    return SpmPoint(field, point, names)


def special_maximal_to_point(m: IdealHandle) -> tuple[FieldValue, ...]:
    """The point P with m = (x - P); NotSpecialMaximal otherwise."""
    F, n = m.field, m.nvars
    if F.is_finite:
        zeros = common_zeros(F, n, m.generators)
        if len(zeros) != 1:
            raise NotSpecialMaximal(f"{m} has {len(zeros)} zeros")
        P = SpmPoint(F, zeros[0], m.names)
        if not m.same_ideal(P.ideal):
            raise NotSpecialMaximal(f"{m} is not the ideal of its zero")
        return P.values()
    gb = [g for g in m.groebner() if not g.is_zero()]
    coords = [None] * n
    for g in gb:
        if g.total_degree() != 1:
            raise NotSpecialMaximal(f"{m} is not of the form (x_i - a_i)")
        lin = [i for i in range(n) if g.degree_in(i) == 1]
        if len(lin) != 1:
            raise NotSpecialMaximal(f"{m} is not of the form (x_i - a_i)")
        i = lin[0]
        e = tuple(1 if j == i else 0 for j in range(n))
        c = g.terms[e]
        const = g.terms.get((0,) * n, F.zero)
        coords[i] = F.neg(F.div(const, c))
    if any(c is None for c in coords):
        raise NotSpecialMaximal(f"{m} is not maximal")
    return tuple(FieldValue(F, c) for c in coords)


# -- zero sets ------------------------------------------------------------


@dataclass
class ZeroSet:
    points: list
    partial: bool = False
    note: str = ""

    def to_json(self) -> dict:
        out = {"points": [_fmt_point(P) for P in self.points], "count": len(self.points),
               "partial": self.partial}
        if self.note:
            out["note"] = self.note
        return out


def _qq_zeros(gens, n, height):
    """All rational zeros with every coordinate of height <= height, last coordinate solved exactly."""
    F = gens[0].field if gens else None
    gens = [g for g in gens if not g.is_zero()]
    cands = list(rationals_by_height(height))
    out = []
    if n == 0:
        return out
    if not gens:
        return list(itertools.product(cands, repeat=n))
    T = MultiPoly.var(F, 1, 0)
    for head in itertools.product(cands, repeat=n - 1):
        args = [MultiPoly.const(F, 1, c) for c in head] + [T]
        specs = [s for s in (g.compose(args) for g in gens) if not s.is_zero()]
        if not specs:
            out.extend(tuple(head) + (c,) for c in cands)
            continue
        if any(s.is_constant() for s in specs):
            continue
        for r in rational_roots(specs[0]):
            if all(F.is_zero(s.eval_raw((r.raw,))) for s in specs[1:]):
                if max(abs(r.raw.numerator), r.raw.denominator) <= height:
                    out.append(tuple(head) + (r.raw,))
    return out


def zero_set(I: IdealHandle, height: int | None = None) -> ZeroSet:
    F = I.field
    if F.is_finite:
        pts = common_zeros(F, I.nvars, I.generators)
        return ZeroSet([tuple(FieldValue(F, c) for c in P) for P in pts])
    h = height if height is not None else 10
    budget = 10 ** 4
    while I.nvars > 1 and h > 1 and sum(1 for _ in rationals_by_height(h)) ** (I.nvars - 1) > budget:
        h -= 1
    pts = _qq_zeros(list(I.generators), I.nvars, h)
    return ZeroSet([tuple(FieldValue(F, c) for c in P) for P in sorted(set(pts), key=lambda P: (
        max(max(abs(c.numerator), c.denominator) for c in P), P))],
        partial=True, note=f"rational zeros with coordinates of height <= {h}")


# -- the relative Nullstellensatz ------------------------------------------------


@dataclass
class ZeroResult:
    status: str
    point: tuple | None = None
    cert: SignatureCert | None = None
    note: str = ""

    def to_json(self, names=None) -> dict:
        out = {"status": self.status}
        if self.point is not None:
            out["point"] = _fmt_point(self.point)
        if self.cert is not None:
            out["certificate"] = self.cert.to_json(names)
        if self.note:
            out["note"] = self.note
        return out


def has_rational_zero(I: IdealHandle, height: int = DEFAULT_HEIGHT) -> ZeroResult:
    """yes(point) / no(D in I without zeros) / unknown."""
    F, n = I.field, I.nvars
    gens = [g for g in I.generators if not g.is_zero()]
    if F.is_finite:
        zeros = common_zeros(F, n, gens)
        if zeros:
            return ZeroResult(YES, tuple(FieldValue(F, c) for c in zeros[0]))
        cert = signature_from_no_common_zero(gens[0], gens[1:])
        if not I.member(cert.D):
            raise AssertionError("composed signature polynomial escaped the ideal")
        return ZeroResult(NO, cert=cert)
    if not gens:
        return ZeroResult(YES, tuple(FieldValue(F, Fraction(0)) for _ in range(n)))
    if I.is_unit():
        return ZeroResult(NO, cert=SignatureCert(MultiPoly.one(F, n), CONSTANT),
                          note="1 lies in the ideal")
    for g in list(gens) + I.groebner():
        if g.is_univariate() and not g.is_constant():
            res = in_signature(g)
            if res.status == CERTIFIED:
                return ZeroResult(NO, cert=res.cert)
    P, exhausted = _rational_zero_search(gens, height)
    if P is not None:
        return ZeroResult(YES, tuple(FieldValue(F, c) for c in P))
    return ZeroResult(UNKNOWN, note=f"no rational zero of height <= {height} and no certificate found")


# -- equiradical ---------------------------------------------------------


def equiradical_oracle(I: IdealHandle) -> IdealHandle:
    """The ideal of all polynomials vanishing on Z(I) (finite k)."""
    F = I.field
    return vanishing_ideal(F, I.nvars, common_zeros(F, I.nvars, I.generators), I.names)


@dataclass
class RadicalCertificate:
    status: str
    a: MultiPoly
    sigma: SigmaElement | None = None
    separator: SpmPoint | None = None
    note: str = ""

    def verify(self, I: IdealHandle) -> bool:
        """Member: sigma is structurally valid and lies in I by both engines; not_member: the point separates."""
        if self.status == MEMBER:
            s = self.sigma
            if s is None or s.a != self.a or not s.verify():
                return False
            cof = I.lift(s.value)
            if cof is None or not I.member(s.value):
                return False
            d = max(cofactor_degree(cof, I.generators), s.value.total_degree())
            return macaulay_member(s.value, I, d) is True
        if self.status == NOT_MEMBER:
            m = self.separator
            return all(m.contains(g) for g in I.generators) and not m.contains(self.a)
        return True

    def to_json(self, names=None) -> dict:
        out = {"status": self.status, "a": self.a.to_str(names)}
        if self.sigma is not None:
            out["sigma"] = self.sigma.to_json(names)
        if self.separator is not None:
            out["separating_ideal"] = self.separator.to_json(names)
        if self.note:
            out["note"] = self.note
        return out


def equiradical_certificate(I: IdealHandle, a: MultiPoly, degree_bound: int = 4,
                            height: int = 10) -> RadicalCertificate:
    """member(sigma in I with sigma in the multiplicative set of a) / not_member(point) / unknown."""
    F, n = I.field, I.nvars
    if F.is_finite:
        for P in common_zeros(F, n, I.generators):
            if not F.is_zero(a.eval_raw(P)):
                return RadicalCertificate(NOT_MEMBER, a, separator=SpmPoint(F, P, I.names))
    sigma = search_sigma(I, a, degree_bound)
    if sigma is not None:
        return RadicalCertificate(MEMBER, a, sigma=sigma)
    if not F.is_finite:
        shift = list(range(n))
        y = MultiPoly.var(F, n + 1, n)
        system = [g.embed(n + 1, shift) for g in I.generators if not g.is_zero()]
        system.append(a.embed(n + 1, shift) * y - 1)
        P, _ = _rational_zero_search(system, height, budget=2000)
        if P is not None:
            return RadicalCertificate(NOT_MEMBER, a, separator=SpmPoint(F, P[:n], I.names))
    return RadicalCertificate(UNKNOWN, a, note=f"no certificate with degree bound {degree_bound}")


# -- irreducibility ------------------------------------------------------------


@dataclass
class IrreducibleResult:
    status: str
    reason: str
    parts: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason}
        if self.parts:
            out["parts"] = [[_fmt_point(P) for P in part] for part in self.parts]
        return out


def is_irreducible(V: Variety) -> IrreducibleResult:
    if V.has_point_list:
        pts = V.point_values()
        if len(pts) == 1:
            return IrreducibleResult(YES, "k[V] is k^V, a domain exactly when V is a single point")
        if not pts:
            return IrreducibleResult(NO, "the empty set is not irreducible (k[V] = 0)")
        return IrreducibleResult(NO, "k[V] = k^V has zero divisors (indicator functions)",
                                 [[pts[0]], pts[1:]])
    gb = [g for g in V.vanishing.groebner() if not g.is_zero()]
    if not gb:
        return IrreducibleResult(YES, "affine space")
    if any(g.is_constant() for g in gb):
        return IrreducibleResult(NO, "empty variety")
    if all(g.total_degree() == 1 for g in gb):
        return IrreducibleResult(YES, "linear variety")
    if len(gb) == 1:
        g = gb[0]
        n = g.nvars
        for i in range(n):
            if g.degree_in(i) != 1:
                continue
            e = tuple(1 if j == i else 0 for j in range(n))
            coeff_terms = [t for t in g.terms if t[i] == 1]
            if coeff_terms == [e]:
                return IrreducibleResult(YES, f"generator is linear in {V.names[i]} with constant coefficient")
        if g.is_univariate():
            d = g.total_degree()
            roots = rational_roots(g)
            if d >= 2 and roots:
                return IrreducibleResult(NO, f"generator has the rational root {roots[0]}")
            if d <= 3 and not roots:
                return IrreducibleResult(YES, "univariate generator of degree <= 3 without rational roots")
    return IrreducibleResult(UNKNOWN, "no irreducibility criterion applies")


# -- basic opens as closed sets ----------------------------------------------


@dataclass
class RabinowitschEmbedding:
    W: Variety
    h: MultiPoly
    open_points: list | None
    verified: bool | None

    def project(self, Q):
        return tuple(Q[:-1])

    def lift(self, P):
        F = self.W.field
        P = tuple(F.coerce(c) for c in P)
        hv = self.h.eval_raw(P)
        return P + (F.inv(hv),)

    def to_json(self) -> dict:
        out = {"ideal": [g.to_str(self.W.names) for g in self.W.ideal.generators],
               "verified": self.verified}
        if self.open_points is not None:
            F = self.W.field
            out["W_points"] = [_fmt_point(tuple(FieldValue(F, c) for c in Q)) for Q in self.W.points]
            out["open_points"] = [_fmt_point(tuple(FieldValue(F, c) for c in P)) for P in self.open_points]
        return out


def _fresh_name(names) -> str:
    for cand in ("y", "w", "u", "v", "s"):
        if cand not in names:
            return cand
    return f"x{len(names)}"


def rabinowitsch_embed(V: Variety, h) -> RabinowitschEmbedding:
    """W = Z(I(V), y*h - 1) in k^(n+1), with the projection W -> D_V(h)."""
    if not isinstance(h, CoordRingElem):
        h = V.elem(h)
    H = h.rep
    F, n = V.field, V.nvars
    if not V.has_point_list and h.is_zero():
        raise ZeroFunction("h is zero in k[V]")
    shift = list(range(n))
    y = MultiPoly.var(F, n + 1, n)
    gens = [g.embed(n + 1, shift) for g in V.vanishing.generators if not g.is_zero()]
    gens.append(y * H.embed(n + 1, shift) - 1)
    names = tuple(V.names) + (_fresh_name(V.names),)
    ideal = IdealHandle(F, n + 1, gens, names)
    if not V.has_point_list:
        return RabinowitschEmbedding(Variety(ideal), H, None, None)
    opens = [P for P in V.points if not F.is_zero(H.eval_raw(P))]
    lifted = [P + (F.inv(H.eval_raw(P)),) for P in opens]
    if F.is_finite:
        W = Variety(ideal)
        verified = sorted(W.points) == sorted(lifted) and sorted(Q[:-1] for Q in W.points) == sorted(opens)
    else:
        W = Variety(ideal, lifted)
        verified = all(all(F.is_zero(g.eval_raw(Q)) for g in gens) for Q in lifted)
    return RabinowitschEmbedding(W, H, opens, verified)
