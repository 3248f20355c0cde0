"""Polynomials without rational zeros, normic forms, and the localisations built from them.

The signature of k is the set of polynomials with no zero in k^n.  Membership
is decided exhaustively over finite fields and certified over QQ; every
certificate carries evidence that can be replayed by :meth:`SignatureCert.verify`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import (
    AmbientMismatch,
    ArityMismatch,
    CertificateInvalid,
    CommonZeroExists,
    DivisionByZero,
    HasRationalRoot,
    InvalidField,
    NonSpecialAmbient,
    ResourceLimit,
    ZeroPolynomial,
)
from .exactfield import GF, MAX_EXTENSION_DEGREE, MAX_FIELD_ORDER, RATIONAL, FieldDescriptor, FieldValue
from .ideals import IdealHandle
from .multipoly import MultiPoly, default_names, rational_roots, resultant_linear
from .varieties import ENUMERATION_CAP, CoordRingElem, Variety, affine_points, common_zeros

CERTIFIED = "certified"
HAS_ZERO = "has_zero"
UNKNOWN = "unknown"

EXHAUSTIVE = "ExhaustiveNoZero"
UNIVARIATE = "UnivariateNoRationalRoot"
NORMIC = "NormicConstruction"
COMPOSITION = "CompositionWitness"
CONSTANT = "NonzeroConstant"
EVIDENCE_KINDS = (EXHAUSTIVE, UNIVARIATE, NORMIC, COMPOSITION, CONSTANT)

DEFAULT_HEIGHT = 50
SEARCH_BUDGET = 20000


def _first_zero(D: MultiPoly):
    """First zero of D in k^n (finite k), or None."""
    F = D.field
    for P in affine_points(F, D.nvars):
        if F.is_zero(D.eval_raw(P)):
            return P
    return None


def _has_nontrivial_zero(N: MultiPoly):
    F = N.field
    origin = (F.zero,) * N.nvars
    for P in affine_points(F, N.nvars):
        if P != origin and F.is_zero(N.eval_raw(P)):
            return P
    return None


def _bivariate_form_is_normic(N: MultiPoly) -> bool:
    """A binary form is normic iff its X^d coefficient is nonzero and N(T, 1) has no root in k."""
    d = N.total_degree()
    if N.field.is_zero(N.terms.get((d, 0), N.field.zero)):
        return False
    T = MultiPoly.var(N.field, 1, 0)
    return not rational_roots(N.compose([T, MultiPoly.one(N.field, 1)]))


# -- normic forms ---------------------------------------------------------------


@dataclass(eq=False)
class NormicForm:
    """A homogeneous polynomial whose only zero is the origin, with its construction."""

    poly: MultiPoly
    trace: dict = dc_field(default_factory=dict)

    @property
    def arity(self) -> int:
        return self.poly.nvars

    @property
    def field(self) -> FieldDescriptor:
        return self.poly.field

    def verify(self) -> bool:
        N = self.poly
        if N.is_zero() or N.total_degree() < 1 or not N.is_homogeneous():
            return False
        F = N.field
        if F.is_finite and F.order ** N.nvars <= ENUMERATION_CAP:
            return _has_nontrivial_zero(N) is None
        if N.nvars == 1:
            return len(N.terms) == 1
        if N.nvars == 2 and F.kind == RATIONAL:
            return _bivariate_form_is_normic(N)
        if self.trace.get("construction") == "compose":
            base = self.trace["base"]
            return base.verify() and _compose_tree(base.poly, N.nvars) == N
        return False

    def to_json(self, names=None) -> dict:
        trace = {k: (v.to_json() if isinstance(v, NormicForm) else v) for k, v in self.trace.items()}
        names = tuple(names or default_names(self.arity))
        return {"type": "normic", "field": str(self.field), "nvars": self.arity, "vars": list(names),
                "polynomial": self.poly.to_str(names), "trace": trace}

    def __str__(self) -> str:
        return self.poly.to_str()


def monomial_normic(field: FieldDescriptor) -> NormicForm:
    """The one-variable normic form X."""
    return NormicForm(MultiPoly.var(field, 1, 0), {"construction": "monomial"})


def normic_from_galois(k: FieldDescriptor, m: int) -> NormicForm:
    """N(X, Y) = prod over the Frobenius orbit of beta of (X - beta^sigma Y), beta of degree m over k."""
    if not k.is_finite:
        raise InvalidField("normic_from_galois needs a finite base field")
    if not 2 <= m <= MAX_EXTENSION_DEGREE:
        raise ValueError("extension degree must lie in 2..8")
    q, e, p = k.order, k.degree, k.characteristic
    total = e * m
    if total > MAX_EXTENSION_DEGREE or p ** total > MAX_FIELD_ORDER:
        raise ResourceLimit(f"GF({p}^{total}) exceeds the extension field caps")
    K = GF(p, total)

    # embed k into K
    if k.kind == "prime":
        def emb(a):
            return K.from_int(a)
    else:
        modulus = k.modulus
        root = None
        for r in K.raw_elements:
            acc = K.zero
            for c in reversed(modulus):
                acc = K.add(K.mul(acc, r), K.from_int(c))
            if K.is_zero(acc):
                root = r
                break
        if root is None:
            raise InvalidField("no root of the base modulus in the extension")

        def emb(a):
            acc = K.zero
            for c in reversed(a):
                acc = K.add(K.mul(acc, root), K.from_int(c))
            return acc
    back = {emb(a): a for a in k.raw_elements}

    beta, orbit = None, None
    for b in K.raw_elements:
        orb = [b]
        x = K.pow(b, q)
        while x != b and len(orb) <= m:
            orb.append(x)
            x = K.pow(x, q)
        if len(orb) == m:
            beta, orbit = b, orb
            break
    if beta is None:
        raise ResourceLimit("no element of the required degree found")

    coeffs = [K.one]  # coefficients of X^(d-j) Y^j
    for b in orbit:
        nb = K.neg(b)
        nxt = [K.zero] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j] = K.add(nxt[j], c)
            nxt[j + 1] = K.add(nxt[j + 1], K.mul(c, nb))
        coeffs = nxt
    terms = {}
    for j, c in enumerate(coeffs):
        if c not in back:
            raise InvalidField("norm form coefficient outside the base field")
        terms[(m - j, j)] = back[c]
    N = MultiPoly(k, 2, terms)
    nf = NormicForm(N, {"construction": "galois", "base": str(k), "degree": m, "extension": str(K),
                        "beta": K.fmt(beta), "orbit": [K.fmt(b) for b in orbit]})
    if not nf.verify():
        raise CertificateInvalid("Galois norm form failed the exhaustive check")
    return nf


def normic_from_minpoly(m: MultiPoly) -> NormicForm:
    """Binary form Res_T(m(T), X - T Y), normalised to X^d coefficient 1."""
    if m.is_zero():
        raise ZeroPolynomial("minimal polynomial is zero")
    roots = rational_roots(m)
    if roots:
        raise HasRationalRoot(min(roots, key=lambda r: (abs(r.raw), r.raw < 0)))
    d = len(m.univariate_coeffs()) - 1
    if d < 2:
        raise ValueError("minimal polynomial must have degree >= 2")
    N = resultant_linear(m)
    lead = N.terms[(d, 0)]
    N = N.scale(FieldValue(N.field, N.field.inv(lead)))
    return NormicForm(N, {"construction": "minpoly", "minpoly": m.to_str(("T",))})


def default_binary_normic(k: FieldDescriptor) -> NormicForm:
    if k.is_finite:
        return normic_from_galois(k, 2)
    T = MultiPoly.var(k, 1, 0)
    return normic_from_minpoly(T ** 2 + 1)


def _compose_tree(N: MultiPoly, n: int) -> MultiPoly:
    F = N.field
    level = [MultiPoly.var(F, n, i) for i in range(n)]
    size = 1
    while size < n:
        size *= 2
    level = level + [None] * (size - n)
    zero = MultiPoly.zero(F, n)
    while len(level) > 1:
        nxt = []
        for a, b in zip(level[::2], level[1::2]):
            if a is None:
                nxt.append(None)
            else:
                nxt.append(N.compose([a, zero if b is None else b]))
        level = nxt
    return level[0]


def normic_compose(N: NormicForm, arity: int) -> NormicForm:
    """An arity-variable normic form from a binary one, by a balanced composition tree.

    Leaves beyond ``arity`` are the constant 0; the result stays homogeneous.
    """
    if arity < 1:
        raise ValueError("arity must be positive")
    if arity == 1:
        return monomial_normic(N.field)
    if N.arity != 2:
        raise ArityMismatch("normic_compose needs a binary normic form")
    if arity == 2:
        return N
    poly = _compose_tree(N.poly, arity)
    return NormicForm(poly, {"construction": "compose", "base": N, "arity": arity})


# -- signature certificates -------------------------------------------------


class SignatureCert:
    """Evidence that D has no zero in k^nvars."""

    def __init__(self, D: MultiPoly, kind: str, payload: dict | None = None):
        if kind not in EVIDENCE_KINDS:
            raise ValueError(f"unknown evidence kind {kind!r}")
        self.D = D
        self.kind = kind
        self.payload = payload or {}

    def __repr__(self) -> str:
        return f"SignatureCert({self.D.to_str()!r}, {self.kind})"

    @property
    def field(self):
        return self.D.field

    def verify(self) -> bool:
        D, F = self.D, self.D.field
        if D.is_zero():
            return False
        if self.kind == CONSTANT:
            return D.is_constant()
        if self.kind == EXHAUSTIVE:
            return F.is_finite and _first_zero(D) is None
        if self.kind == UNIVARIATE:
            if D.total_degree() < 1 or not D.is_univariate():
                return False
            return not rational_roots(D)
        if self.kind == NORMIC:
            # D(x1..xr) = N(x1..xr, 1)
            N = self.payload["normic"]
            if N.arity != D.nvars + 1 or not N.verify():
                return False
            args = MultiPoly.gens(F, D.nvars) + [MultiPoly.one(F, D.nvars)]
            return N.poly.compose(args) == D
        if self.kind == COMPOSITION:
            N = self.payload["normic"]
            comps = self.payload["components"]
            if N.arity != len(comps) or not N.verify():
                return False
            if N.poly.compose(comps) != D:
                return False
            if F.is_finite:
                return not common_zeros(F, D.nvars, comps)
            return self.payload.get("premise") == "asserted"
        return False

    def to_json(self, names=None) -> dict:
        names = tuple(names or default_names(self.D.nvars))
        out = {"type": "signature", "field": str(self.field), "nvars": self.D.nvars, "vars": list(names),
               "polynomial": self.D.to_str(names), "kind": self.kind}
        ev = {}
        for k, v in self.payload.items():
            if isinstance(v, NormicForm):
                ev[k] = v.to_json()
            elif k == "components":
                ev[k] = [c.to_str(names) for c in v]
            else:
                ev[k] = v
        out["evidence"] = ev
        return out


@dataclass
class SignatureResult:
    status: str
    cert: SignatureCert | None = None
    witness: tuple | None = None
    note: str = ""

    def to_json(self, names=None) -> dict:
        out = {"status": self.status}
        if self.cert is not None:
            out["certificate"] = self.cert.to_json(names)
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        if self.note:
            out["note"] = self.note
        return out


def rationals_by_height(h: int):
    """0, then +-p/q with max(|p|, q) <= h in order of increasing height."""
    yield Fraction(0)
    for height in range(1, h + 1):
        for q in range(1, height + 1):
            for p in ([height] if q < height else range(1, height + 1)):
                if Fraction(p, q).denominator == q and Fraction(p, q).numerator == p:
                    yield Fraction(p, q)
                    yield Fraction(-p, q)


def _rational_zero_search(polys: Sequence[MultiPoly], height: int, budget: int = SEARCH_BUDGET):
    """Search a common rational zero: specialise all but the last variable, solve the last exactly.

    Returns (point or None, exhausted) where exhausted means the whole height box was covered.
    """
    polys = [g for g in polys if not g.is_zero()]
    F = polys[0].field if polys else None
    if not polys:
        return None, True
    n = polys[0].nvars
    if n == 0:
        return (None, True) if any(not g.is_zero() for g in polys) else ((), True)
    cands = []
    exhausted = True
    limit = max(1, int(round(budget ** (1.0 / (n - 1))))) if n > 1 else 1
    for r in rationals_by_height(height):
        if len(cands) >= limit:
            exhausted = False
            break
        cands.append(r)
    T = MultiPoly.var(F, 1, 0)
    for head in itertools.product(cands, repeat=n - 1):
        args = [MultiPoly.const(F, 1, c) for c in head] + [T]
        specs = [g.compose(args) for g in polys]
        nonzero = [s for s in specs if not s.is_zero()]
        if not nonzero:
            return tuple(head) + (Fraction(0),), exhausted
        if any(s.is_constant() for s in nonzero):
            continue
        for r in rational_roots(nonzero[0]):
            if all(F.is_zero(s.eval_raw((r.raw,))) for s in nonzero[1:]):
                return tuple(head) + (r.raw,), exhausted
    return None, exhausted


def in_signature(D: MultiPoly, height: int = DEFAULT_HEIGHT) -> SignatureResult:
    """certified / has_zero / unknown; never unknown over a finite field."""
    if D.is_zero():
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    F = D.field
    if D.is_constant():
        return SignatureResult(CERTIFIED, SignatureCert(D, CONSTANT))
    if F.is_finite:
        P = _first_zero(D)
        if P is not None:
            return SignatureResult(HAS_ZERO, witness=tuple(FieldValue(F, c) for c in P))
        return SignatureResult(CERTIFIED, SignatureCert(D, EXHAUSTIVE, {"points": F.order ** D.nvars}))
    if D.is_univariate():
        roots = rational_roots(D)
        if roots:
            i = D.variables_used()[0]
            P = tuple(roots[0] if j == i else FieldValue(F, Fraction(0)) for j in range(D.nvars))
            return SignatureResult(HAS_ZERO, witness=P)
        return SignatureResult(CERTIFIED, SignatureCert(D, UNIVARIATE, {"variable": D.variables_used()[0]}))
    if D.is_homogeneous():
        return SignatureResult(HAS_ZERO, witness=tuple(FieldValue(F, Fraction(0)) for _ in range(D.nvars)))
    P, exhausted = _rational_zero_search([D], height)
    if P is not None:
        return SignatureResult(HAS_ZERO, witness=tuple(FieldValue(F, c) for c in P))
    note = f"no rational zero of height <= {height} found" + ("" if exhausted else " (search box truncated)")
    return SignatureResult(UNKNOWN, note=note)


def signature_from_normic(N: NormicForm) -> SignatureCert:
    """D(x1..xr) = N(x1..xr, 1), which has no zero since the last argument never vanishes."""
    F, r = N.field, N.arity - 1
    D = N.poly.compose(MultiPoly.gens(F, r) + [MultiPoly.one(F, r)])
    return SignatureCert(D, NORMIC, {"normic": N})


def signature_from_no_common_zero(F_poly: MultiPoly, gens: Sequence[MultiPoly],
                                  normic: NormicForm | None = None) -> SignatureCert:
    """D = N(F, P1..Pm) for a normic N of arity m+1; D has no zero when F, P1..Pm have none in common."""
    comps = [F_poly] + list(gens)
    k = F_poly.field
    for g in comps:
        if g.field != k or g.nvars != F_poly.nvars:
            raise ArityMismatch("components live in different rings")
    r = len(comps)
    if normic is None:
        N = monomial_normic(k) if r == 1 else normic_compose(default_binary_normic(k), r)
    else:
        N = normic
        if N.arity != r:
            raise ArityMismatch(f"normic form of arity {N.arity} for {r} components")
    if k.is_finite:
        zeros = common_zeros(k, F_poly.nvars, comps)
        if zeros:
            raise CommonZeroExists(tuple(FieldValue(k, c) for c in zeros[0]))
        premise = "enumerated"
    else:
        premise = "asserted"
    D = N.poly.compose(comps)
    return SignatureCert(D, COMPOSITION, {"normic": N, "components": comps, "premise": premise})


def seed_signature(k: FieldDescriptor) -> SignatureCert:
    """A univariate member of the signature: N(X, 1) for the default binary normic form."""
    N = default_binary_normic(k)
    X = MultiPoly.var(k, 1, 0)
    D = N.poly.compose([X, MultiPoly.one(k, 1)])
    if k.is_finite:
        return SignatureCert(D, EXHAUSTIVE, {"points": k.order})
    return SignatureCert(D, UNIVARIATE, {"variable": 0})


def constant_signature(k: FieldDescriptor) -> SignatureCert:
    return SignatureCert(MultiPoly.one(k, 0), CONSTANT)


# -- multiplicative sets ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SigmaFactor:
    """a^m * D#(args, a^n)."""

    m: int
    cert: SignatureCert
    n: int
    args: tuple

    def value(self, a: MultiPoly) -> MultiPoly:
        H = self.cert.D.homogenise()
        return a ** self.m * H.compose(list(self.args) + [a ** self.n])


class SigmaElement:
    """A product of generators a^m D#(b, a^n) of the multiplicative set attached to a."""

    def __init__(self, a: MultiPoly, factors: Sequence[SigmaFactor] = ()):
        self.a = a
        self.factors = tuple(factors)
        self._value = None

    @property
    def value(self) -> MultiPoly:
        if self._value is None:
            v = MultiPoly.one(self.a.field, self.a.nvars)
            for f in self.factors:
                v = v * f.value(self.a)
            self._value = v
        return self._value

    def verify(self) -> bool:
        for f in self.factors:
            if f.m < 0 or f.n < 0 or len(f.args) != f.cert.D.nvars or not f.cert.verify():
                return False
        v = MultiPoly.one(self.a.field, self.a.nvars)
        for f in self.factors:
            v = v * f.value(self.a)
        return v == self.value

    def __mul__(self, other: SigmaElement) -> SigmaElement:
        return sigma_product(self, other)

    def to_json(self, names=None) -> dict:
        names = tuple(names or default_names(self.a.nvars))
        return {
            "type": "sigma",
            "field": str(self.a.field),
            "nvars": self.a.nvars,
            "vars": list(names),
            "a": self.a.to_str(names),
            "factors": [{"m": f.m, "n": f.n, "args": [b.to_str(names) for b in f.args],
                         "D": f.cert.to_json()} for f in self.factors],
            "value": self.value.to_str(names),
        }

    def __repr__(self) -> str:
        return f"SigmaElement({self.value.to_str()!r})"


def sigma_element(a, m: int, D: SignatureCert, n: int, args: Sequence) -> SigmaElement:
    if isinstance(a, CoordRingElem):
        a = a.rep
    args = tuple(b.rep if isinstance(b, CoordRingElem) else b for b in args)
    if m < 0 or n < 0:
        raise ValueError("exponents must be non-negative")
    if len(args) != D.D.nvars:
        raise ArityMismatch(f"{len(args)} arguments for a signature polynomial in {D.D.nvars} variables")
    if not D.verify():
        raise CertificateInvalid(f"certificate for {D.D} does not verify")
    return SigmaElement(a, [SigmaFactor(m, D, n, args)])


def sigma_product(s: SigmaElement, t: SigmaElement) -> SigmaElement:
    if s.a != t.a:
        raise AmbientMismatch("sigma elements attached to different elements")
    return SigmaElement(s.a, s.factors + t.factors)


@dataclass(frozen=True, eq=False)
class MFactor:
    """D(args) with D certified: a member of the canonical multiplicative set."""

    cert: SignatureCert
    args: tuple

    def value(self) -> MultiPoly:
        return self.cert.D.compose(list(self.args))


class MElement:
    def __init__(self, field: FieldDescriptor, nvars: int, factors: Sequence[MFactor] = ()):
        self.field = field
        self.nvars = nvars
        self.factors = tuple(factors)

    @property
    def value(self) -> MultiPoly:
        v = MultiPoly.one(self.field, self.nvars)
        for f in self.factors:
            v = v * f.value()
        return v

    def verify(self) -> bool:
        return all(len(f.args) == f.cert.D.nvars and f.cert.verify() for f in self.factors)

    def __mul__(self, other: MElement) -> MElement:
        return MElement(self.field, self.nvars, self.factors + other.factors)

    def to_json(self, names=None) -> dict:
        names = tuple(names or default_names(self.nvars))
        return {"type": "m_element", "field": str(self.field), "nvars": self.nvars, "vars": list(names),
                "factors": [{"D": f.cert.to_json(), "args": [b.to_str(names) for b in f.args]}
                            for f in self.factors],
                "value": self.value.to_str(names)}


def m_element(D: SignatureCert, args: Sequence) -> MElement:
    args = tuple(b.rep if isinstance(b, CoordRingElem) else b for b in args)
    if not args and D.D.nvars:
        raise ArityMismatch("missing arguments")
    if len(args) != D.D.nvars:
        raise ArityMismatch(f"{len(args)} arguments for {D.D.nvars} variables")
    if not D.verify():
        raise CertificateInvalid(f"certificate for {D.D} does not verify")
    ref = args[0] if args else None
    if ref is None:
        raise ArityMismatch("constant signature members need an ambient ring; use MElement directly")
    return MElement(ref.field, ref.nvars, [MFactor(D, args)])


# -- localisations ------------------------------------------------------------


def _check_special(V: Variety) -> None:
    """Reject ambients that are visibly not embedded in a power of k."""
    if V.has_point_list:
        return
    gens = [g for g in V.ideal.generators if not g.is_zero()]
    if V.nvars == 1 and len(gens) == 1:
        g = gens[0]
        d = g.total_degree()
        if d >= 1 and len(rational_roots(g)) < d:
            raise NonSpecialAmbient(f"Q[x]/({g}) does not embed in a power of Q")


class CanonicalLoc:
    """k[V]_M: k[V] localised at the values of signature polynomials."""

    def __init__(self, variety: Variety):
        _check_special(variety)
        self.variety = variety

    def __repr__(self) -> str:
        return f"CanonicalLoc({self.variety!r})"


class OneElementLoc:
    """k[V] localised at the multiplicative set generated by a^m D#(b, a^n)."""

    def __init__(self, variety: Variety, a):
        _check_special(variety)
        self.variety = variety
        self.a = a.rep if isinstance(a, CoordRingElem) else a

    def __repr__(self) -> str:
        return f"OneElementLoc({self.variety!r}, {self.a.to_str()})"


class LocFraction:
    """num / den with a structured, certified denominator."""

    def __init__(self, ambient, num, den=None):
        V = ambient.variety
        if isinstance(num, CoordRingElem):
            num = num.rep
        elif not isinstance(num, MultiPoly):
            num = MultiPoly.const(V.field, V.nvars, num)
        if den is None:
            den = MElement(V.field, V.nvars) if isinstance(ambient, CanonicalLoc) else SigmaElement(ambient.a)
        if isinstance(ambient, CanonicalLoc) and not isinstance(den, MElement):
            raise AmbientMismatch("canonical localisation needs a signature-value denominator")
        if isinstance(ambient, OneElementLoc):
            if not isinstance(den, SigmaElement) or den.a != ambient.a:
                raise AmbientMismatch("denominator is not attached to the localising element")
        if not den.verify():
            raise CertificateInvalid("denominator certificate does not verify")
        self.ambient = ambient
        self.num = num
        self.den = den

    @property
    def variety(self) -> Variety:
        return self.ambient.variety

    def _same(self, other: LocFraction):
        if not isinstance(other, LocFraction) or other.ambient is not self.ambient:
            raise AmbientMismatch("fractions live in different localisations")

    def __add__(self, other: LocFraction) -> LocFraction:
        self._same(other)
        num = self.num * other.den.value + other.num * self.den.value
        return LocFraction(self.ambient, num, self.den * other.den)

    def __neg__(self) -> LocFraction:
        return LocFraction(self.ambient, -self.num, self.den)

    def __sub__(self, other: LocFraction) -> LocFraction:
        return self + (-other)

    def __mul__(self, other: LocFraction) -> LocFraction:
        self._same(other)
        return LocFraction(self.ambient, self.num * other.num, self.den * other.den)

    def equals(self, other: LocFraction) -> bool:
        """Cross-multiplication; in the one-element case the difference is also multiplied by a."""
        self._same(other)
        diff = self.num * other.den.value - other.num * self.den.value
        if isinstance(self.ambient, OneElementLoc):
            diff = self.ambient.a * diff
        return self.variety.elem(diff).is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, LocFraction):
            return self.equals(other)
        return NotImplemented

    __hash__ = None

    def evaluate(self, P):
        """Value at a point where the denominator does not vanish."""
        F = self.variety.field
        P = tuple(F.coerce(c) for c in P)
        d = self.den.value.eval_raw(P)
        if F.is_zero(d):
            raise DivisionByZero("denominator vanishes at the point")
        return FieldValue(F, F.div(self.num.eval_raw(P), d))

    def to_json(self, names=None) -> dict:
        return {"numerator": self.num.to_str(names), "denominator": self.den.to_json(names)}

    def __repr__(self) -> str:
        return f"LocFraction({self.num.to_str()} / {self.den.value.to_str()})"


def loc_fraction_arith(op: str, x: LocFraction, y: LocFraction | None = None):
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "eq":
        return x.equals(y)
    raise ValueError(f"unknown fraction operation {op!r}")


def in_coordinate_image(fr: LocFraction):
    """(True, c) when fr = c/1 for some c in k[V], else (False, None)."""
    V = fr.variety
    m = fr.den.value
    J = V.vanishing.with_generators([m])
    cof = J.lift(fr.num)
    if cof is None:
        return False, None
    return True, V.elem(cof[-1])


class AaMElement:
    """(c / a^k) / prod D_j(b_j / a^(n_j)) in the canonical localisation of k[V]_a."""

    def __init__(self, variety: Variety, a: MultiPoly, c: MultiPoly, k: int, dens: Sequence[tuple] = ()):
        self.variety = variety
        self.a = a
        self.c = c
        self.k = k
        self.dens = tuple(dens)  # (cert, args, n)

    def _cleared(self):
        """Polynomial numerator and denominator after clearing every power of a."""
        a = self.a
        num = self.c
        den = a ** self.k
        for cert, args, n in self.dens:
            d = cert.D.total_degree()
            num = num * a ** (n * d)
            den = den * cert.D.homogenise().compose(list(args) + [a ** n])
        return num, den

    def value_at(self, P):
        """Evaluate through the dehomogenised route D(b / a^n) at a point with a(P) != 0."""
        F = self.variety.field
        av = self.a.eval_raw(P)
        if F.is_zero(av):
            raise DivisionByZero("a vanishes at the point")
        val = F.div(self.c.eval_raw(P), F.pow(av, self.k))
        for cert, args, n in self.dens:
            scale = F.pow(av, n)
            pt = tuple(F.div(b.eval_raw(P), scale) for b in args)
            dv = cert.D.eval_raw(pt)
            if F.is_zero(dv):
                raise CertificateInvalid("signature polynomial vanished")
            val = F.div(val, dv)
        return val

    def equals(self, other: AaMElement) -> bool:
        V = self.variety
        if V.has_point_list:
            F = V.field
            for P in V.points:
                if F.is_zero(self.a.eval_raw(P)):
                    continue
                if self.value_at(P) != other.value_at(P):
                    return False
            return True
        u, v = self._cleared()
        u2, v2 = other._cleared()
        return V.elem(self.a * (u * v2 - u2 * v)).is_zero()


def carunloc_forward(fr: LocFraction) -> AaMElement:
    """c / (a^m D#(b, a^n)) -> (c / a^(m + n d)) / D(b / a^n)."""
    if not isinstance(fr.ambient, OneElementLoc):
        raise AmbientMismatch("expected a one-element localisation")
    k = 0
    dens = []
    for f in fr.den.factors:
        d = f.cert.D.total_degree()
        k += f.m + f.n * d
        dens.append((f.cert, f.args, f.n))
    return AaMElement(fr.variety, fr.ambient.a, fr.num, k, dens)


def carunloc_backward(x: AaMElement, ambient: OneElementLoc) -> LocFraction:
    """(c / a^k) / prod D_j(b_j / a^n_j) -> c a^(sum n_j d_j) / (a^k prod D_j#(b_j, a^n_j))."""
    a = x.a
    num = x.c
    factors = []
    for i, (cert, args, n) in enumerate(x.dens):
        num = num * a ** (n * cert.D.total_degree())
        factors.append(SigmaFactor(x.k if i == 0 else 0, cert, n, tuple(args)))
    if not factors:
        factors.append(SigmaFactor(x.k, constant_signature(a.field), 0, ()))
    return LocFraction(ambient, num, SigmaElement(a, factors))


# -- Sigma certificate search -------------------------------------------------


def _monomials_upto(field, nvars, d):
    out = []
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(MultiPoly.monomial(field, nvars, e))
    return out


def rabinowitsch_signature(I: IdealHandle, a: MultiPoly) -> SignatureCert | None:
    """D(x, y) = N(g1..gr, a y - 1), certified when a vanishes on the zeros of I (finite k)."""
    k, n = I.field, I.nvars
    if not k.is_finite or k.order ** (n + 1) > ENUMERATION_CAP:
        return None
    shift = list(range(n))
    gens = [g.embed(n + 1, shift) for g in I.generators if not g.is_zero()]
    y = MultiPoly.var(k, n + 1, n)
    comps = gens + [a.embed(n + 1, shift) * y - 1]
    r = len(comps)
    N = monomial_normic(k) if r == 1 else normic_compose(default_binary_normic(k), r)
    D = N.poly.compose(comps)
    if _first_zero(D) is not None:
        return None
    return SignatureCert(D, EXHAUSTIVE, {"points": k.order ** (n + 1), "construction": "rabinowitsch"})


def search_sigma(I: IdealHandle, a: MultiPoly, degree_bound: int) -> SigmaElement | None:
    """First a^m D#(b, a^n) in I in the documented enumeration order, or None."""
    if degree_bound <= 0:
        return None
    k, nv = I.field, I.nvars
    top = min(3, degree_bound)
    exps = list(range(1, top + 1)) + [0]
    seed = seed_signature(k)
    const = constant_signature(k)
    zero = MultiPoly.zero(k, nv)
    singles = [zero] + _monomials_upto(k, nv, degree_bound)
    rab = None
    rab_done = False
    for n in exps:
        for m in exps:
            for kind in ("seed", "const", "rabinowitsch"):
                if kind == "seed":
                    cert, tuples = seed, [(b,) for b in singles]
                elif kind == "const":
                    cert, tuples = const, [()]
                else:
                    if n != 1:
                        continue
                    if not rab_done:
                        rab = rabinowitsch_signature(I, a)
                        rab_done = True
                    if rab is None:
                        continue
                    cert = rab
                    tuples = [tuple(a * x for x in MultiPoly.gens(k, nv)) + (MultiPoly.one(k, nv),)]
                for args in tuples:
                    factor = SigmaFactor(m, cert, n, args)
                    if I.member(factor.value(a)):
                        return SigmaElement(a, [factor])
    return None


# -- special ideals and *-algebras ------------------------------------------------


@dataclass
class SpecialResult:
    status: str  # special | violation | no_violation_found
    b: MultiPoly | None = None
    sigma: SigmaElement | None = None
    equiradical: IdealHandle | None = None
    note: str = ""

    def witness(self) -> dict | None:
        if self.sigma is None:
            return None
        f = self.sigma.factors[0]
        return {"D": f.cert.D, "args": f.args, "b": self.b, "m": f.m, "n": f.n, "value": self.sigma.value}

    def to_json(self, names=None) -> dict:
        out = {"status": self.status}
        if self.b is not None:
            out["b"] = self.b.to_str(names)
        if self.sigma is not None:
            f = self.sigma.factors[0]
            out["witness"] = {"D": f.cert.to_json(), "args": [x.to_str(names) for x in f.args],
                              "m": f.m, "n": f.n, "value": self.sigma.value.to_str(names)}
            out["certificates"] = [self.sigma.to_json(names)]
        if self.equiradical is not None:
            out["equiradical"] = [g.to_str(names) for g in self.equiradical.groebner()]
        if self.note:
            out["note"] = self.note
        return out


def is_special_ideal_cert(I: IdealHandle, degree_bound: int = 4) -> SpecialResult:
    """Is I equal to the ideal of its zero set?  Violations come with b and b^m D#(a, b^n) in I."""
    k = I.field
    if k.is_finite:
        from .ideals import vanishing_ideal
        J = vanishing_ideal(k, I.nvars, common_zeros(k, I.nvars, I.generators), I.names)
        if I.contains_ideal(J):
            return SpecialResult("special", equiradical=J)
        b = next(g for g in J.groebner() if not I.member(g))
        sigma = search_sigma(I, b, degree_bound)
        note = "" if sigma is not None else "b lies in the equiradical but no witness was found within the bound"
        return SpecialResult("violation", b=b, sigma=sigma, equiradical=J, note=note)
    # QQ: bounded search over low-degree b
    n = I.nvars
    cands = _monomials_upto(k, n, 2)[1:]
    for i in range(n):
        x = MultiPoly.var(k, n, i)
        cands += [x - c for c in (1, -1, 2, -2)]
    for b in cands:
        if I.member(b):
            continue
        sigma = search_sigma(I, b, min(degree_bound, 2))
        if sigma is not None:
            return SpecialResult("violation", b=b, sigma=sigma)
    return SpecialResult("no_violation_found", note="bounded search over low-degree b found no violation")


class FunctionField:
    """k(V) for an irreducible variety V."""

    def __init__(self, variety: Variety):
        self.variety = variety


@dataclass
class StarResult:
    status: str  # yes | counterexample | unknown
    reason: str = ""
    counterexample: MElement | None = None
    checked: int = 0

    def to_json(self, names=None) -> dict:
        out = {"status": self.status, "reason": self.reason, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json(names)
        return out


def _probe_pool(k: FieldDescriptor) -> list[SignatureCert]:
    pool = [seed_signature(k)]
    if not k.is_finite:
        T = MultiPoly.var(k, 1, 0)
        for D in (T ** 2 - 2, T ** 2 + T + 1, T ** 2 + 2):
            pool.append(SignatureCert(D, UNIVARIATE, {"variable": 0}))
    return pool


def _probe_args(V: Variety) -> list[MultiPoly]:
    k, n = V.field, V.nvars
    xs = MultiPoly.gens(k, n)
    out = list(xs)
    out += [x + 1 for x in xs]
    out += [x * y for x, y in itertools.combinations_with_replacement(xs, 2)]
    return out


def is_star_algebra(A, probe_budget: int = 200) -> StarResult:
    """Are all values of signature polynomials invertible in A?"""
    if isinstance(A, (CanonicalLoc, OneElementLoc)):
        return StarResult("yes", "a canonical localisation inverts every signature value by construction")
    if isinstance(A, FunctionField):
        V = A.variety
        k = V.field
        checked = 0
        for cert in _probe_pool(k):
            for f in _probe_args(V):
                for g in [MultiPoly.one(k, V.nvars)] + _probe_args(V):
                    if V.elem(g).is_zero():
                        continue
                    val = cert.D.homogenise().compose([f, g])
                    checked += 1
                    if V.elem(val).is_zero():
                        return StarResult("counterexample", "D#(f, g) vanished in k[V]",
                                          MElement(k, V.nvars, [MFactor(cert, (f,))]), checked)
                    if checked >= probe_budget:
                        break
        return StarResult("yes", "k[V] is a domain and D(f/g) = D#(f, g)/g^d with D#(f, g) nonzero on samples",
                          checked=checked)
    if not isinstance(A, Variety):
        raise TypeError("unsupported ambient")
    V = A
    k = V.field
    if V.has_point_list:
        npts = len(V.points)
        units = (k.order - 1) ** npts if k.is_finite else None
        checked = 0
        if k.is_finite and units <= 10 ** 4:
            nonzero = [c for c in k.raw_elements if not k.is_zero(c)]
            for values in itertools.product(nonzero, repeat=npts):
                f = V.interpolate(list(values))
                if not (f * f.inverse()) == V.one():
                    return StarResult("counterexample", "nowhere-zero function without inverse", checked=checked)
                checked += 1
        return StarResult("yes", "k[V] is the algebra of all functions on the finite set V, so every "
                          "nowhere-zero function is invertible", checked=checked)
    checked = 0
    for cert in _probe_pool(k):
        for f in _probe_args(V):
            val = cert.D.compose([f])
            checked += 1
            if not V.vanishing.with_generators([val]).is_unit():
                return StarResult("counterexample", f"{val.to_str(V.names)} is a signature value without inverse",
                                  MElement(k, V.nvars, [MFactor(cert, (f,))]), checked)
            if checked >= probe_budget:
                return StarResult("unknown", "every probed signature value was invertible", checked=checked)
    return StarResult("unknown", "every probed signature value was invertible", checked=checked)
