"""Algebraic sets, their vanishing ideals and coordinate rings k[V]."""

from __future__ import annotations

import itertools
import threading
from typing import Iterable, Sequence

from .errors import AmbientMismatch, ArityMismatch, DivisionByZero, InfiniteField, ResourceLimit
from .exactfield import FieldDescriptor, FieldValue
from .ideals import IdealHandle, vanishing_ideal
from .linalg import solve
from .multipoly import GRLEX, MultiPoly, default_names

ENUMERATION_CAP = 10 ** 6


def affine_points(field: FieldDescriptor, nvars: int, cap: int = ENUMERATION_CAP):
    """All of k^n in canonical order (raw tuples)."""
    if not field.is_finite:
        raise InfiniteField("cannot enumerate points over QQ")
    if field.order ** nvars > cap:
        raise ResourceLimit(f"|k|^n = {field.order}^{nvars} exceeds the enumeration cap {cap}")
    return itertools.product(field.raw_elements, repeat=nvars)


def common_zeros(field: FieldDescriptor, nvars: int, polys: Sequence[MultiPoly], cap: int = ENUMERATION_CAP):
    polys = [g for g in polys if not g.is_zero()]
    is_zero = field.is_zero
    return [P for P in affine_points(field, nvars, cap) if all(is_zero(g.eval_raw(P)) for g in polys)]


def standard_monomials(basis: Sequence[MultiPoly], nvars: int) -> list[tuple]:
    """Monomials outside the leading-term ideal of a zero-dimensional Groebner basis."""
    leads = [g.leading()[0] for g in basis if not g.is_zero()]
    if not leads:
        raise ValueError("ideal is not zero-dimensional")
    out = []
    stack = [(0,) * nvars]
    seen = set(stack)
    while stack:
        t = stack.pop()
        if any(all(a <= b for a, b in zip(l, t)) for l in leads):
            continue
        out.append(t)
        for i in range(nvars):
            nxt = tuple(e + (1 if j == i else 0) for j, e in enumerate(t))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    key = GRLEX.key(nvars)
    out.sort(key=key)
    return out


class Variety:
    """V = Z(I) together with its full vanishing ideal.

    Over a finite field the point list is exact.  Over QQ a variety is either
    given by an explicit finite point list, or by a defining ideal which is
    then taken to be its own vanishing ideal.
    """

    def __init__(self, ideal: IdealHandle, points: Iterable | None = None):
        self.ideal = ideal
        self.field = ideal.field
        self.nvars = ideal.nvars
        self.names = ideal.names
        self._lock = threading.Lock()
        self._points = None
        self._vanishing = None
        self._interp = None
        if points is not None:
            self._points = tuple(dict.fromkeys(tuple(self.field.coerce(c) for c in P) for P in points))
            for P in self._points:
                if len(P) != self.nvars:
                    raise ArityMismatch(f"point {P} has {len(P)} coordinates")

    @classmethod
    def from_points(cls, field: FieldDescriptor, nvars: int, points, names=None) -> Variety:
        I = vanishing_ideal(field, nvars, points, names)
        V = cls(I, I.point_set)
        V._vanishing = I
        return V

    @classmethod
    def affine_space(cls, field: FieldDescriptor, nvars: int, names=None) -> Variety:
        return cls(IdealHandle(field, nvars, [], names))

    def __repr__(self) -> str:
        return f"Variety(Z{self.ideal} in {self.field}^{self.nvars})"

    @property
    def has_point_list(self) -> bool:
        return self.field.is_finite or self._points is not None

    @property
    def points(self) -> tuple:
        """Raw point tuples in canonical order."""
        with self._lock:
            if self._points is None:
                if not self.field.is_finite:
                    raise InfiniteField("no point list for a variety over QQ without explicit points")
                self._points = tuple(common_zeros(self.field, self.nvars, self.ideal.generators))
            return self._points

    def point_values(self) -> list[tuple[FieldValue, ...]]:
        return [tuple(FieldValue(self.field, c) for c in P) for P in self.points]

    @property
    def vanishing(self) -> IdealHandle:
        """The ideal of all polynomials vanishing on V."""
        if self._vanishing is None:
            if self.has_point_list:
                pts = self.points
                with self._lock:
                    if self._vanishing is None:
                        self._vanishing = vanishing_ideal(self.field, self.nvars, pts, self.names)
            else:
                self._vanishing = self.ideal
        return self._vanishing

    def contains_point(self, P) -> bool:
        P = tuple(self.field.coerce(c) for c in P)
        if self.has_point_list:
            return P in set(self.points)
        return all(self.field.is_zero(g.eval_raw(P)) for g in self.ideal.generators)

    # -- coordinate ring --

    def elem(self, f) -> CoordRingElem:
        if isinstance(f, CoordRingElem):
            if f.variety is not self:
                raise AmbientMismatch("element of another coordinate ring")
            return f
        if not isinstance(f, MultiPoly):
            f = MultiPoly.const(self.field, self.nvars, f)
        return CoordRingElem(self, f)

    def zero(self) -> CoordRingElem:
        return self.elem(MultiPoly.zero(self.field, self.nvars))

    def one(self) -> CoordRingElem:
        return self.elem(MultiPoly.one(self.field, self.nvars))

    def coordinates(self) -> list[CoordRingElem]:
        return [self.elem(x) for x in MultiPoly.gens(self.field, self.nvars)]

    def _interpolation_data(self):
        with self._lock:
            if self._interp is None:
                pts = self._points
                basis = [g for g in self._vanishing.groebner() if not g.is_zero()]
                if pts:
                    monos = standard_monomials(basis, self.nvars)
                    matrix = [[MultiPoly.monomial(self.field, self.nvars, e).eval_raw(P) for e in monos] for P in pts]
                else:
                    monos, matrix = [], []
                self._interp = (monos, matrix)
            return self._interp

    def interpolate(self, table) -> CoordRingElem:
        """The element of k[V] with the given values (dict point -> value, or list in point order)."""
        if not self.has_point_list:
            raise InfiniteField("interpolation needs a finite point list")
        pts = self.points
        self.vanishing
        if isinstance(table, dict):
            table = {tuple(self.field.coerce(c) for c in P): v for P, v in table.items()}
            values = [self.field.coerce(table.get(P, 0)) for P in pts]
        else:
            values = [self.field.coerce(v) for v in table]
        if len(values) != len(pts):
            raise ArityMismatch("table size differs from the number of points")
        monos, matrix = self._interpolation_data()
        if not pts:
            return self.zero()
        coeffs = solve(self.field, matrix, values)
        f = MultiPoly(self.field, self.nvars, dict(zip(monos, coeffs)))
        return CoordRingElem(self, f, reduced=True)

    def all_elements(self, cap: int = 10 ** 5):
        """Every element of k[V] (finite k), in the canonical order of value tables."""
        pts = self.points
        if self.field.order ** len(pts) > cap:
            raise ResourceLimit(f"k[V] has {self.field.order}^{len(pts)} elements")
        for values in itertools.product(self.field.raw_elements, repeat=len(pts)):
            yield self.interpolate(list(values))

    def indicator(self, P) -> CoordRingElem:
        P = tuple(self.field.coerce(c) for c in P)
        return self.interpolate({P: 1})


class CoordRingElem:
    """Element of k[V], stored as a normal form modulo the vanishing ideal."""

    __slots__ = ("variety", "rep", "_values")

    def __init__(self, variety: Variety, f: MultiPoly, reduced: bool = False):
        if f.field != variety.field or f.nvars != variety.nvars:
            raise AmbientMismatch("polynomial does not live in the ambient ring of the variety")
        self.variety = variety
        self.rep = f if reduced else variety.vanishing.normal_form(f)
        self._values = None

    @property
    def field(self) -> FieldDescriptor:
        return self.variety.field

    def values(self) -> tuple:
        """Raw function table on the point list of V."""
        if self._values is None:
            self._values = tuple(self.rep.eval_raw(P) for P in self.variety.points)
        return self._values

    def _other(self, g) -> CoordRingElem:
        return self.variety.elem(g)

    def __add__(self, g):
        return CoordRingElem(self.variety, self.rep + self._other(g).rep, reduced=True)

    __radd__ = __add__

    def __sub__(self, g):
        return CoordRingElem(self.variety, self.rep - self._other(g).rep, reduced=True)

    def __rsub__(self, g):
        return self._other(g) - self

    def __neg__(self):
        return CoordRingElem(self.variety, -self.rep, reduced=True)

    def __mul__(self, g):
        return CoordRingElem(self.variety, self.rep * self._other(g).rep)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return CoordRingElem(self.variety, self.rep ** k)

    def __call__(self, *point) -> FieldValue:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return self.rep(*point)

    def eval_raw(self, P):
        return self.rep.eval_raw(P)

    def is_zero(self) -> bool:
        if self.variety.has_point_list:
            return all(self.field.is_zero(v) for v in self.values())
        return self.rep.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (CoordRingElem, MultiPoly, int)):
            try:
                return (self - other).is_zero()
            except AmbientMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        if self.variety.has_point_list:
            return hash(self.values())
        return hash(self.rep)

    def is_unit(self) -> bool:
        if self.variety.has_point_list:
            return all(not self.field.is_zero(v) for v in self.values())
        return self.variety.vanishing.with_generators([self.rep]).is_unit()

    def inverse(self) -> CoordRingElem:
        V = self.variety
        F = self.field
        if V.has_point_list:
            if not self.is_unit():
                raise DivisionByZero("element vanishes somewhere on V")
            return V.interpolate([F.inv(v) for v in self.values()])
        J = V.vanishing.with_generators([self.rep])
        cof = J.lift(MultiPoly.one(F, V.nvars))
        if cof is None:
            raise DivisionByZero("element is not invertible in k[V]")
        return CoordRingElem(V, cof[-1])

    def to_str(self, names=None) -> str:
        return self.rep.to_str(names or self.variety.names)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"CoordRingElem({self.to_str()!r})"


def coord_elem(f: MultiPoly, V: Variety) -> CoordRingElem:
    return V.elem(f)


def line(field: FieldDescriptor) -> Variety:
    """The whole affine line k^1 (finite k)."""
    return Variety.from_points(field, 1, [(c,) for c in field.raw_elements], default_names(1))
